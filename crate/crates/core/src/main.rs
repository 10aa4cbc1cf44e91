fn main() {
    std::process::exit(monrep::cli::main_with(std::env::args_os()));
}
