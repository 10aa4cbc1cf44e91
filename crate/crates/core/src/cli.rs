//! Command-line front end. Reports go to standard output, diagnostics to
//! standard error.
//!
//! Exit codes: 0 success or positive verdict, 1 negative verdict or suite
//! failure, 2 input error, 3 undecided within the oracle depth, 4 the
//! deciders disagree (an internal inconsistency).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::algebra::{AModule, BaseAlgebra};
use crate::dsl::{parse_spec, FieldSpec, Instance, SpecFile};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::lab::{run_suite, SuiteConfig, SuiteKind};
use crate::lambda::{Lambda, LambdaRep};
use crate::monic::MonicReport;
use crate::oracle::{GpOracle, GpStatus, OracleConfig, OracleMode, DEFAULT_DEPTH, DEFAULT_ISO_TRIALS};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;
pub const EXIT_INCONSISTENT: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "monrep",
    version,
    about = "Monic representations and Gorenstein-projectivity over A ⊗ kQ/I"
)]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = ReportFormat::Text)]
    pub report: ReportFormat,
    /// Override the field of the input file: a prime or `rational`.
    #[arg(long, global = true)]
    pub field: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse the file and validate every module and representation.
    Validate { file: PathBuf },
    /// Check conditions (m1) and (m2).
    CheckMonic {
        file: PathBuf,
        #[arg(long)]
        rep: String,
    },
    /// Decide Gorenstein-projectivity and cross-check three deciders.
    CheckGp(CheckGpArgs),
    /// Build new representations.
    #[command(subcommand)]
    Construct(Construct),
    /// Run a randomized suite over the file's algebra and quiver.
    Suite(SuiteArgs),
}

#[derive(Args, Debug)]
pub struct CheckGpArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub rep: String,
    #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = DEFAULT_DEPTH)]
    pub depth: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Auto,
    Semisimple,
    Selfinjective,
    Bounded,
}

impl From<ModeArg> for OracleMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Auto => OracleMode::Auto,
            ModeArg::Semisimple => OracleMode::Semisimple,
            ModeArg::Selfinjective => OracleMode::SelfInjective,
            ModeArg::Bounded => OracleMode::Bounded,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Construct {
    /// `M ⊗ P(v)`. `--module` names a module of the file or one of
    /// `regular`, `dual`, `simple:U`, `projective:U`, `injective:U`.
    Tensor {
        file: PathBuf,
        #[arg(long)]
        module: String,
        #[arg(long)]
        vertex: String,
        /// Output file; standard output when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Name of the written representation.
        #[arg(long, default_value = "T")]
        name: String,
    },
}

#[derive(Args, Debug)]
pub struct SuiteArgs {
    pub file: PathBuf,
    #[arg(long, value_enum)]
    pub kind: KindArg,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Cap on branch dimensions at each A-vertex.
    #[arg(long, default_value_t = 4)]
    pub max_dim: usize,
    #[arg(long, default_value_t = DEFAULT_DEPTH)]
    pub depth: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Closure,
    Corollary,
    Thm23,
    Adjunction,
    Lifting,
}

impl From<KindArg> for SuiteKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Closure => SuiteKind::Closure,
            KindArg::Corollary => SuiteKind::Corollary,
            KindArg::Thm23 => SuiteKind::Thm23,
            KindArg::Adjunction => SuiteKind::Adjunction,
            KindArg::Lifting => SuiteKind::Lifting,
        }
    }
}

/// What a command produced.
#[derive(Debug)]
pub struct Outcome {
    pub exit: i32,
    pub json: Value,
    pub text: String,
    /// Diagnostic for standard error.
    pub diagnostic: Option<String>,
}

impl Outcome {
    fn new(exit: i32, json: Value, text: String) -> Self {
        Self {
            exit,
            json,
            text,
            diagnostic: None,
        }
    }
}

struct Input {
    spec: SpecFile,
    digest: String,
}

fn read_input(path: &PathBuf) -> Result<Input> {
    let bytes = std::fs::read(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    let text =
        String::from_utf8(bytes.clone()).map_err(|_| Error::Invalid(format!("{}: not UTF-8", path.display())))?;
    let spec = parse_spec(&text).map_err(|e| match e {
        Error::Parse { line, column, message } => {
            Error::Invalid(format!("{}:{line}:{column}: {message}", path.display()))
        }
        other => other,
    })?;
    let digest = Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect();
    Ok(Input { spec, digest })
}

fn field_spec(spec: &SpecFile, over: Option<&str>) -> Result<FieldSpec> {
    match over {
        None => Ok(spec.field),
        Some("rational") => Ok(FieldSpec::Rational),
        Some(p) => {
            let p: u64 = p
                .parse()
                .map_err(|_| Error::InvalidField(format!("`{p}` is neither a prime nor `rational`")))?;
            PrimeField::new(p)?;
            Ok(FieldSpec::Prime(p))
        }
    }
}

fn status_name(s: GpStatus) -> &'static str {
    match s {
        GpStatus::Gp => "gp",
        GpStatus::NotGp => "not_gp",
        GpStatus::Unknown { .. } => "unknown",
    }
}

fn status_exit(s: GpStatus) -> i32 {
    match s {
        GpStatus::Gp => EXIT_OK,
        GpStatus::NotGp => EXIT_NEGATIVE,
        GpStatus::Unknown { .. } => EXIT_UNKNOWN,
    }
}

fn literals<K: Field>(f: &K, v: &[K::Elem]) -> Vec<String> {
    v.iter().map(|e| f.literal(e)).collect()
}

fn monic_json<K: Field>(lam: &Lambda<K>, r: &MonicReport<K>) -> (Value, Value, Vec<Value>) {
    let q = lam.quiver();
    let aq = lam.base().quiver();
    let f = lam.field();
    let mut witnesses = Vec::new();
    let per_vertex = r
        .per_vertex
        .iter()
        .map(|v| {
            if let Some(w) = &v.witness {
                witnesses.push(json!({
                    "condition": "m1",
                    "vertex": q.vertex_name(v.vertex),
                    "a_vertex": aq.vertex_name(w.a_vertex),
                    "arrows": w.arrows.iter().map(|&a| q.arrow(a).name.clone()).collect::<Vec<_>>(),
                    "coefficients": literals(f, &w.dependency.coefficients),
                    "components": w.dependency.components.iter().map(|c| literals(f, c)).collect::<Vec<_>>(),
                }));
            }
            json!({"vertex": q.vertex_name(v.vertex), "ok": v.ok})
        })
        .collect();
    let per_arrow = r
        .per_arrow
        .iter()
        .map(|a| {
            if let Some(w) = &a.witness {
                witnesses.push(json!({
                    "condition": "m2",
                    "arrow": q.arrow(a.arrow).name,
                    "a_vertex": aq.vertex_name(w.a_vertex),
                    "kernel_vector": literals(f, &w.vector),
                }));
            }
            json!({"arrow": q.arrow(a.arrow).name, "ok": a.ok})
        })
        .collect();
    (per_vertex, per_arrow, witnesses)
}

fn monic_text<K: Field>(lam: &Lambda<K>, r: &MonicReport<K>, witnesses: &[Value], out: &mut String) {
    let q = lam.quiver();
    for v in &r.per_vertex {
        writeln!(
            out,
            "m1 at {}: {}",
            q.vertex_name(v.vertex),
            if v.ok { "ok" } else { "FAILS" }
        )
        .unwrap();
    }
    for a in &r.per_arrow {
        writeln!(
            out,
            "m2 at {}: {}",
            q.arrow(a.arrow).name,
            if a.ok { "ok" } else { "FAILS" }
        )
        .unwrap();
    }
    for w in witnesses {
        writeln!(out, "witness: {w}").unwrap();
    }
}

fn builtin_module<K: Field>(base: &BaseAlgebra<K>, name: &str) -> Result<AModule<K>> {
    let vertex = |u: &str| {
        base.quiver()
            .vertex_index(u)
            .ok_or_else(|| Error::Invalid(format!("no vertex `{u}` in the base algebra")))
    };
    match name.split_once(':') {
        None if name == "regular" => Ok(base.regular()),
        None if name == "dual" => Ok(base.dual_regular()),
        Some(("simple", u)) => Ok(base.simple(vertex(u)?)),
        Some(("projective", u)) => Ok(base.projective(vertex(u)?)),
        Some(("injective", u)) => Ok(base.injective(vertex(u)?)),
        _ => Err(Error::Invalid(format!("no module named `{name}`"))),
    }
}

fn dims_json<K: Field>(lam: &Lambda<K>, x: &LambdaRep<K>) -> Value {
    let q = lam.quiver();
    Value::Object(
        x.branches()
            .iter()
            .enumerate()
            .map(|(v, b)| (q.vertex_name(v).to_string(), json!(b.dims())))
            .collect(),
    )
}

fn execute<K: Field>(field: K, input: &Input, command: &Command) -> Result<Outcome> {
    let inst: Instance<K> = input.spec.instantiate(field)?;
    let lam = &inst.lambda;
    match command {
        Command::Validate { .. } => {
            let names: Vec<&str> = inst.reps.iter().map(|(n, _)| n.as_str()).collect();
            let text = format!(
                "valid: {} vertices, {} arrows, {} relations, {} modules, representations [{}]\n",
                lam.vertex_count(),
                lam.quiver().arrow_count(),
                lam.bound().ideal().generators().len(),
                inst.modules.len(),
                names.join(", ")
            );
            Ok(Outcome::new(
                EXIT_OK,
                json!({
                    "verdict": "valid",
                    "vertices": lam.vertex_count(),
                    "arrows": lam.quiver().arrow_count(),
                    "relations": lam.bound().ideal().generators().len(),
                    "modules": inst.modules.iter().map(|(n, _)| n).collect::<Vec<_>>(),
                    "reps": names,
                }),
                text,
            ))
        }
        Command::CheckMonic { rep, .. } => {
            let x = inst.rep(rep)?;
            let r = lam.check_monic(x);
            let (per_vertex, per_arrow, witnesses) = monic_json(lam, &r);
            let mut text = String::new();
            monic_text(lam, &r, &witnesses, &mut text);
            let mut json = json!({
                "verdict": if r.monic { "monic" } else { "not_monic" },
                "per_vertex": per_vertex,
                "per_arrow": per_arrow,
                "witnesses": witnesses,
            });
            if r.monic {
                let t = lam.verify_thm23(x);
                json["kernel_formulas"] = json!({
                    "holds": t.holds(),
                    "paths_checked": t.paths_checked,
                    "pairs_checked": t.pairs_checked,
                });
                writeln!(
                    text,
                    "kernel formulas: {} over {} paths",
                    if t.holds() { "hold" } else { "FAIL" },
                    t.paths_checked
                )
                .unwrap();
            }
            writeln!(text, "{}", if r.monic { "monic" } else { "not monic" }).unwrap();
            Ok(Outcome::new(if r.monic { EXIT_OK } else { EXIT_NEGATIVE }, json, text))
        }
        Command::CheckGp(args) => {
            let x = inst.rep(&args.rep)?;
            let cfg = OracleConfig {
                mode: args.mode.into(),
                depth: args.depth,
                iso_trials: DEFAULT_ISO_TRIALS,
                seed: args.seed,
            };
            let oracle = GpOracle::new(lam.base(), cfg)?;
            let d = lam.is_gp(x, &oracle);
            let ind = lam.inductive_verify(x, &oracle, Some(args.depth));
            let q = lam.quiver();
            let (_, per_arrow, mut witnesses) = monic_json(lam, &d.monic);
            let per_vertex: Vec<Value> =
                d.g.per_vertex
                    .iter()
                    .map(|v| {
                        for w in v.branch.witnesses.iter().chain(&v.quotient.witnesses) {
                            witnesses.push(json!({"vertex": q.vertex_name(v.vertex), "oracle": w}));
                        }
                        json!({
                            "vertex": q.vertex_name(v.vertex),
                            "m1": d.monic.per_vertex[v.vertex].ok,
                            "branch": status_name(v.branch.status),
                            "quotient": status_name(v.quotient.status),
                            "quotient_dims": v.quotient_module.dims(),
                        })
                    })
                    .collect();
            let direct = ind.direct.as_ref().map(|v| v.status);
            let json = json!({
                "verdict": status_name(d.status),
                "mode": oracle.mode(),
                "monic": d.monic.monic,
                "condition_g": status_name(d.g.status),
                "reasons": d.reasons,
                "per_vertex": per_vertex,
                "per_arrow": per_arrow,
                "witnesses": witnesses,
                "cross_check": {
                    "recursive": status_name(ind.recursive),
                    "direct": direct.map(status_name),
                    "direct_witnesses": ind.direct.as_ref().map(|v| &v.witnesses),
                    "consistent": ind.consistent,
                    "levels": ind.levels.iter().map(|l| json!({
                        "vertex": l.vertex,
                        "branch": status_name(l.branch),
                        "phi_injective": l.phi_injective,
                    })).collect::<Vec<_>>(),
                },
            });
            let mut text = String::new();
            for v in &d.g.per_vertex {
                writeln!(
                    text,
                    "vertex {}: branch {}, quotient {} (dims {:?})",
                    q.vertex_name(v.vertex),
                    status_name(v.branch.status),
                    status_name(v.quotient.status),
                    v.quotient_module.dims()
                )
                .unwrap();
            }
            writeln!(text, "monic: {}", d.monic.monic).unwrap();
            writeln!(
                text,
                "recursive: {}, direct: {}, consistent: {}",
                status_name(ind.recursive),
                direct.map_or("skipped", status_name),
                ind.consistent
            )
            .unwrap();
            writeln!(text, "verdict: {}", status_name(d.status)).unwrap();
            let mut out = Outcome::new(status_exit(d.status), json, text);
            if !ind.consistent {
                out.exit = EXIT_INCONSISTENT;
                out.diagnostic = Some(format!(
                    "error: deciders disagree (theorem {}, recursive {}, direct {}); this is a bug",
                    status_name(ind.theorem),
                    status_name(ind.recursive),
                    direct.map_or("skipped", status_name)
                ));
            }
            Ok(out)
        }
        Command::Construct(Construct::Tensor {
            module,
            vertex,
            output,
            name,
            ..
        }) => {
            let m = match inst.module(module) {
                Ok(m) => m.clone(),
                Err(_) => builtin_module(lam.base(), module)?,
            };
            let v = lam
                .quiver()
                .vertex_index(vertex)
                .ok_or_else(|| Error::Invalid(format!("no vertex `{vertex}` in the quiver")))?;
            let t = lam.tensor_pv(&m, v);
            let printed = SpecFile::from_objects(lam, &[], &[(name.clone(), t.clone())]).to_string();
            let json = json!({"verdict": "constructed", "rep": name, "dims": dims_json(lam, &t)});
            match output {
                Some(path) => {
                    std::fs::write(path, &printed).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
                    let text = format!(
                        "wrote {} to {}, branch dims {}\n",
                        name,
                        path.display(),
                        dims_json(lam, &t)
                    );
                    Ok(Outcome::new(EXIT_OK, json, text))
                }
                None => Ok(Outcome::new(EXIT_OK, json, printed)),
            }
        }
        Command::Suite(args) => {
            let cfg = SuiteConfig {
                samples: args.samples,
                seed: args.seed,
                max_branch_dim: args.max_dim,
                depth: args.depth,
                iso_trials: DEFAULT_ISO_TRIALS,
                jobs: args.jobs,
            };
            let r = run_suite(lam, args.kind.into(), &cfg)?;
            let mut text = String::new();
            for (name, t) in &r.tallies {
                writeln!(
                    text,
                    "{name}: {} passed, {} failed, {} unknown, {} skipped",
                    t.passed, t.failed, t.unknown, t.skipped
                )
                .unwrap();
            }
            if let Some(c) = &r.counterexample {
                writeln!(
                    text,
                    "counterexample to `{}` at sample {}:\n{}",
                    c.check, c.sample, c.witness
                )
                .unwrap();
            }
            writeln!(
                text,
                "{} after {} samples",
                if r.passed() { "passed" } else { "FAILED" },
                r.samples
            )
            .unwrap();
            let exit = if r.passed() { EXIT_OK } else { EXIT_NEGATIVE };
            let mut json = serde_json::to_value(&r).expect("serializable");
            json["verdict"] = json!(if r.passed() { "passed" } else { "failed" });
            Ok(Outcome::new(exit, json, text))
        }
    }
}

fn file_of(command: &Command) -> &PathBuf {
    match command {
        Command::Validate { file } | Command::CheckMonic { file, .. } => file,
        Command::CheckGp(a) => &a.file,
        Command::Construct(Construct::Tensor { file, .. }) => file,
        Command::Suite(a) => &a.file,
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Validate { .. } => "validate",
        Command::CheckMonic { .. } => "check-monic",
        Command::CheckGp(_) => "check-gp",
        Command::Construct(_) => "construct-tensor",
        Command::Suite(_) => "suite",
    }
}

/// Runs a parsed command line: the report, or an input error.
pub fn run(cli: &Cli) -> Result<Outcome> {
    let start = Instant::now();
    let input = read_input(file_of(&cli.command))?;
    let mut out = match field_spec(&input.spec, cli.field.as_deref())? {
        FieldSpec::Prime(p) => execute(PrimeField::new(p)?, &input, &cli.command)?,
        FieldSpec::Rational => execute(Rationals, &input, &cli.command)?,
    };
    let (seed, depth) = match &cli.command {
        Command::CheckGp(a) => (Some(a.seed), Some(a.depth)),
        Command::Suite(a) => (Some(a.seed), Some(a.depth)),
        _ => (None, None),
    };
    let body = std::mem::take(&mut out.json);
    let mut json = json!({
        "schema_version": SCHEMA_VERSION,
        "command": command_name(&cli.command),
        "input_digest": input.digest,
        "seed": seed,
        "depth": depth,
        "elapsed_ms": start.elapsed().as_millis() as u64,
    });
    if let Value::Object(m) = body {
        for (k, v) in m {
            json[k] = v;
        }
    }
    out.json = json;
    Ok(out)
}

/// Entry point for the binary; returns the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match run(&cli) {
        Ok(out) => {
            match cli.report {
                ReportFormat::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
                ReportFormat::Text => print!("{}", out.text),
            }
            if let Some(d) = out.diagnostic {
                eprintln!("{d}");
            }
            out.exit
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
    }
}
