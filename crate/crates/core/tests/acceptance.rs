//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero on any failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::time::{Duration, Instant};

use clap::Parser;

use monrep::algebra::BaseAlgebra;
use monrep::cli::{run, Cli};
use monrep::dsl::{parse_spec, Instance};
use monrep::field::PrimeField;
use monrep::lab::{
    closure_check, corollary_suite, run_suite, ClosureKind, ClosureSuiteConfig, SuiteConfig, SuiteKind, SuiteReport,
};
use monrep::lambda::Lambda;
use monrep::oracle::{GpStatus, OracleConfig, OracleMode};
use monrep::quiver::{parse_word, MonomialIdeal, Quiver};

const RUNNING: &str = include_str!("../examples/ex224.mono");

const DIAMOND: &str = "\
field 101
quiver D {
  vertices 4;
  arrow a: 4 -> 3;
  arrow b: 4 -> 2;
  arrow c: 3 -> 1;
  arrow d: 2 -> 1;
  rel c.a;
}
";

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn instance(text: &str) -> Instance<PrimeField> {
    parse_spec(text).unwrap().instantiate(PrimeField::default()).unwrap()
}

/// The running quiver with the ground field as base.
fn running_over_k() -> Lambda<PrimeField> {
    let text: String = RUNNING
        .lines()
        .skip_while(|l| !l.starts_with("quiver"))
        .take_while(|l| !l.starts_with("rep"))
        .collect::<Vec<_>>()
        .join("\n");
    instance(&format!("field 101\n{text}\n")).lambda
}

fn jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn config(samples: usize, seed: u64) -> SuiteConfig {
    SuiteConfig {
        samples,
        seed,
        max_branch_dim: 4,
        depth: 12,
        jobs: jobs(),
        ..SuiteConfig::default()
    }
}

fn clean(r: &SuiteReport) -> Result<(), String> {
    match &r.counterexample {
        None if r.failures() == 0 => Ok(()),
        None => Err(format!("{} failed checks", r.failures())),
        Some(c) => Err(format!(
            "check `{}` failed on sample {}:\n{}",
            c.check, c.sample, c.witness
        )),
    }
}

fn cli(args: &[&str]) -> (i32, serde_json::Value) {
    let mut full = vec!["monrep", "--report", "json"];
    full.extend_from_slice(args);
    let out = run(&Cli::try_parse_from(full).unwrap()).unwrap();
    (out.exit, out.json)
}

fn golden() -> Outcome {
    let start = Instant::now();
    let file = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/ex224.mono");
    let file = file.to_str().unwrap();
    let (exit, v) = cli(&["validate", file]);
    ensure(exit == 0 && v["verdict"] == "valid", format!("validate: exit {exit}"))?;
    let (exit, v) = cli(&["check-monic", file, "--rep", "X"]);
    let all_ok = |key: &str| v[key].as_array().unwrap().iter().all(|c| c["ok"] == true);
    ensure(
        exit == 0 && all_ok("per_vertex") && all_ok("per_arrow"),
        format!("check-monic: exit {exit}"),
    )?;
    let (exit, v) = cli(&["check-gp", file, "--rep", "X", "--mode", "selfinjective"]);
    ensure(
        exit == 0 && v["verdict"] == "gp",
        format!("check-gp: exit {exit}, verdict {}", v["verdict"]),
    )?;

    let inst = instance(RUNNING);
    let lam = &inst.lambda;
    let q = lam.quiver();
    let split = lam
        .triangular_split(inst.rep("X").unwrap())
        .map_err(|e| e.to_string())?;
    let coker = lam.coker_phi(&split).map_err(|e| e.to_string())?;
    let mut coker_dims: Vec<(String, usize)> = split
        .sub
        .kept_vertices
        .iter()
        .enumerate()
        .map(|(new, &old)| (q.vertex_name(old).to_string(), coker.branch(new).total_dim()))
        .collect();
    coker_dims.sort();
    let coker_dims: Vec<usize> = coker_dims.into_iter().map(|(_, d)| d).collect();
    ensure(coker_dims == [2, 2, 1], format!("Coker φ dims {coker_dims:?}"))?;
    let v3 = q.vertex_index("3").unwrap();
    let t = lam.tensor_pv(&lam.base().regular(), v3);
    let tensor: Vec<usize> = ["1", "2", "3", "4"]
        .iter()
        .map(|n| t.branch(q.vertex_index(n).unwrap()).total_dim())
        .collect();
    ensure(tensor == [4, 4, 2, 0], format!("A⊗P(3) dims {tensor:?}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), format!("took {elapsed:?}"))?;
    Ok(format!("Coker φ {coker_dims:?}, A⊗P(3) {tensor:?}, {elapsed:.2?}"))
}

struct Runs {
    corollary: Result<(SuiteReport, Duration), String>,
    over_k: Vec<Result<SuiteReport, String>>,
    closure: Result<SuiteReport, String>,
}

fn runs() -> Runs {
    let lam = instance(RUNNING).lambda;
    let start = Instant::now();
    let corollary = corollary_suite(&lam, &config(240, 2024))
        .map(|r| (r, start.elapsed()))
        .map_err(|e| e.to_string());
    let over_k = [running_over_k(), instance(DIAMOND).lambda]
        .iter()
        .map(|l| corollary_suite(l, &config(240, 77)).map_err(|e| e.to_string()))
        .collect();
    let closure = closure_check(
        &lam,
        &ClosureSuiteConfig {
            suite: config(220, 31),
            kinds: ClosureKind::ALL.to_vec(),
        },
    )
    .map_err(|e| e.to_string());
    Runs {
        corollary,
        over_k,
        closure,
    }
}

fn triple_agreement(runs: &Runs) -> Outcome {
    let (r, elapsed) = runs.corollary.as_ref().map_err(Clone::clone)?;
    let agree = r.tally("triple-agreement");
    ensure(
        agree.failed == 0 && r.counterexample.is_none(),
        format!("{} disagreements", agree.failed),
    )?;
    ensure(
        r.samples >= 200 && agree.total() == r.samples,
        format!("only {} samples", r.samples),
    )?;
    let direct = r.tally("direct-oracle");
    let rate = direct.unknown as f64 / direct.total() as f64;
    ensure(rate < 0.05, format!("unknown rate {:.1}%", 100.0 * rate))?;
    ensure(*elapsed < Duration::from_secs(60), format!("took {elapsed:?}"))?;
    Ok(format!(
        "{} samples, {} unknown ({:.1}%), {elapsed:.2?}",
        r.samples,
        direct.unknown,
        100.0 * rate
    ))
}

fn monic_iff_gp(runs: &Runs) -> Outcome {
    let (r, _) = runs.corollary.as_ref().map_err(Clone::clone)?;
    let direct = r.tally("monic-iff-gp");
    let theorem = r.tally("monic-iff-gp-theorem");
    ensure(direct.failed == 0 && theorem.failed == 0, "counterexample found")?;
    ensure(
        theorem.passed == r.samples && direct.decided() > 0,
        "samples not decided",
    )?;
    Ok(format!(
        "{} samples, {} decided by the direct oracle, 0 counterexamples",
        r.samples,
        direct.decided()
    ))
}

fn semisimple_projective(runs: &Runs) -> Outcome {
    let mut counts = Vec::new();
    for r in &runs.over_k {
        let r = r.as_ref().map_err(Clone::clone)?;
        clean(r)?;
        let t = r.tally("monic-projective");
        ensure(t.passed >= 100, format!("only {} monic samples", t.passed))?;
        counts.push(t.passed);
    }
    Ok(format!("monic samples per quiver {counts:?}, all projective"))
}

fn closure(runs: &Runs) -> Outcome {
    let r = runs.closure.as_ref().map_err(Clone::clone)?;
    clean(r)?;
    let (ext, ker, sum) = (r.tally("extension"), r.tally("kernel-of-epi"), r.tally("summand"));
    ensure(ext.passed >= 200, format!("{} extensions", ext.passed))?;
    ensure(ker.passed >= 100, format!("{} kernels of epimorphisms", ker.passed))?;
    ensure(sum.passed >= 50, format!("{} summands", sum.passed))?;
    Ok(format!(
        "{} extensions, {} kernels of epimorphisms ({} skipped), {} summands",
        ext.passed, ker.passed, ker.skipped, sum.passed
    ))
}

fn kernel_formulas(runs: &Runs) -> Outcome {
    let mut reports: Vec<&SuiteReport> = Vec::new();
    reports.push(&runs.corollary.as_ref().map_err(Clone::clone)?.0);
    for r in &runs.over_k {
        reports.push(r.as_ref().map_err(Clone::clone)?);
    }
    reports.push(runs.closure.as_ref().map_err(Clone::clone)?);
    let (mut passed, mut failed) = (0, 0);
    for r in reports {
        let t = r.tally("thm23");
        passed += t.passed;
        failed += t.failed;
    }
    ensure(failed == 0, format!("{failed} monic reps violate a clause"))?;
    ensure(passed > 0, "no monic reps checked")?;
    Ok(format!("{passed} monic reps, all clauses hold"))
}

fn adjunction() -> Outcome {
    let lam = instance(RUNNING).lambda;
    let r = run_suite(&lam, SuiteKind::Adjunction, &config(100, 5)).map_err(|e| e.to_string())?;
    clean(&r)?;
    let t = r.tally("adjunction");
    ensure(t.passed == 100, format!("{} triples", t.passed))?;
    Ok(format!("{} triples", t.passed))
}

fn lifting() -> Outcome {
    let lam = instance(RUNNING).lambda;
    let r = run_suite(&lam, SuiteKind::Lifting, &config(60, 9)).map_err(|e| e.to_string())?;
    clean(&r)?;
    let seqs = r.tally("sequence-exact").passed;
    ensure(seqs >= 50, format!("{seqs} sequences"))?;
    Ok(format!("{seqs} sequences, {} lifts", r.tally("lift").passed))
}

fn algebra(n: usize, arrows: &[(&str, usize, usize)], rels: &[&str]) -> BaseAlgebra<PrimeField> {
    let q = Quiver::numbered(n, arrows).unwrap();
    let gens = rels.iter().map(|r| parse_word(&q, r).unwrap()).collect();
    let ideal = MonomialIdeal::new(&q, gens).unwrap();
    BaseAlgebra::new(PrimeField::default(), q, ideal).unwrap()
}

fn oracle_sanity() -> Outcome {
    let bounded = OracleConfig::with_mode(OracleMode::Bounded);
    let dual = algebra(1, &[("x", 1, 1)], &["x.x"]);
    let a2 = algebra(2, &[("a", 2, 1)], &[]);
    let nakayama = algebra(3, &[("a", 3, 2), ("b", 2, 1)], &["b.a"]);
    let mut projectives = 0;
    for a in [&dual, &a2, &nakayama] {
        for p in a.indecomposable_projectives() {
            let s = a.gp_check(&p, bounded).map_err(|e| e.to_string())?.status;
            ensure(s == GpStatus::Gp, format!("projective judged {s:?}"))?;
            projectives += 1;
        }
    }
    let s2 = a2.gp_check(&a2.simple(1), bounded).map_err(|e| e.to_string())?.status;
    ensure(s2 == GpStatus::NotGp, format!("S₂ over A₂ judged {s2:?}"))?;
    let k = dual.simple(0);
    let sk = dual.gp_check(&k, bounded).map_err(|e| e.to_string())?.status;
    ensure(sk == GpStatus::Gp, format!("k over k[x]/x² judged {sk:?}"))?;
    let a = dual.regular();
    let dims = [dual.hom_dim(&a, &k), dual.hom_dim(&k, &a), dual.hom_dim(&a, &a)];
    ensure(dims == [1, 1, 2], format!("Hom dims {dims:?}"))?;
    Ok(format!(
        "{projectives} projectives GP, S₂ NotGP, k GP, Hom dims {dims:?}"
    ))
}

fn report(n: usize, name: &str, f: impl FnOnce() -> Outcome) -> bool {
    let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| p.downcast_ref::<String>().cloned())
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    match &result {
        Ok(detail) => println!("PASS {n}. {name}: {detail}"),
        Err(why) => println!("FAIL {n}. {name}: {why}"),
    }
    result.is_ok()
}

fn main() {
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let mut ok = report(1, "golden example", golden);
    let runs = runs();
    ok &= report(2, "triple-oracle agreement", || triple_agreement(&runs));
    ok &= report(3, "monic iff GP over k[x]/x²", || monic_iff_gp(&runs));
    ok &= report(4, "monic is projective over k", || semisimple_projective(&runs));
    ok &= report(5, "closure of monic representations", || closure(&runs));
    ok &= report(6, "kernel formulas on monic reps", || kernel_formulas(&runs));
    ok &= report(7, "tensor-evaluation adjunction", adjunction);
    ok &= report(8, "lifting into D(A)⊗P(1)", lifting);
    ok &= report(9, "oracle sanity", oracle_sanity);
    if !ok {
        std::process::exit(1);
    }
}
