#include <stdio.h>
#include <stdlib.h>
#include "monrep.h"

int main(int argc, char **argv) {
    if (argc < 2) return 2;
    FILE *f = fopen(argv[1], "rb");
    if (!f) return 2;
    fseek(f, 0, SEEK_END);
    long n = ftell(f);
    fseek(f, 0, SEEK_SET);
    char *text = malloc(n + 1);
    if (fread(text, 1, n, f) != (size_t)n) return 2;
    text[n] = 0;
    fclose(f);

    MonrepInstance *inst = NULL;
    if (monrep_instance_parse(text, &inst) != MONREP_STATUS_OK) {
        fprintf(stderr, "%s\n", monrep_last_error());
        return 1;
    }
    bool monic = false;
    MonrepVerdict v = MONREP_VERDICT_UNKNOWN;
    if (monrep_check_monic(inst, "X", &monic) != MONREP_STATUS_OK) return 1;
    if (monrep_check_gp(inst, "X", MONREP_MODE_SELF_INJECTIVE, 12, 0, &v) != MONREP_STATUS_OK) return 1;
    printf("monic %d gp %d\n", monic, v == MONREP_VERDICT_GP);
    monrep_instance_free(inst);
    free(text);
    return 0;
}
