use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use atl::algebra::{relation_suite, Suite};
use atl::functors::{concrete_module, functor_identity_check, resphi_concrete, FunctorError};
use atl::fusion::{affine_fuse, affine_fuse_explicit, fuse_crosscheck, FusionError, FusionKind, MAX_FREE};
use atl::homsolver::{end_dim, hom_space, HomError};
use atl::labels::{dim_l, dims, functor_table, order_ladder, Functor, LabelError, ModuleLabel, QParam, ZSpec};
use atl::modcore::{gram_matrix, peirce_count_check, ModuleError};
use atl::scalar::{Ring, ScalarError};

mod grid;

/// Exit code for inputs outside what the library covers.
const REFUSED: u8 = 3;
const FAILED: u8 = 1;
const ERROR: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "atl", version, about = "Exact computations with regular and affine Temperley-Lieb algebras")]
struct Cli {
    /// Write the JSON document here instead of stdout.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "snake_case", tag = "command")]
enum Command {
    /// Check a relation suite on diagrams.
    Relations(RelationsArgs),
    /// Gram matrix of a cell module and its rank.
    Gram(GramArgs),
    /// Ladder of the weakest order through (k, z) and dim L.
    Order(OrderArgs),
    /// Dimension of a labelled module.
    Dims(DimsArgs),
    /// Intertwiners between two labelled modules.
    Hom(HomArgs),
    /// Symbolic and/or explicit fusion.
    Fuse(FuseArgs),
    /// Functor table lookup, or identity checks on concrete TL modules.
    Functor(FunctorArgs),
    /// Graded Peirce count for End(n).
    Peirce(PeirceArgs),
    /// Dual-route fusion checks over all small pairs, fanned out over ATL_THREADS workers.
    Grid(GridArgs),
}

#[derive(Args, Debug, Serialize)]
struct RelationsArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, default_value = "generic")]
    ring: String,
    #[arg(long, default_value = "affine")]
    suite: String,
}

#[derive(Args, Debug, Serialize)]
struct GramArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: u32,
    /// `generic` for a formal twist, or `v4`, `-v2`, ...
    #[arg(long, default_value = "generic")]
    z: String,
    #[arg(long, default_value = "generic")]
    ring: String,
    /// Include the matrix entries.
    #[arg(long)]
    matrix: bool,
}

#[derive(Args, Debug, Serialize)]
struct OrderArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    z: String,
    /// ℓ, shorthand for --ring l=ℓ.
    #[arg(long)]
    l: Option<u32>,
    #[arg(long, default_value = "generic")]
    ring: String,
}

#[derive(Args, Debug, Serialize)]
struct DimsArgs {
    /// e.g. `S:6,2`, `L:6,2;v4`.
    #[arg(long)]
    label: String,
    #[arg(long, default_value = "generic")]
    ring: String,
}

#[derive(Args, Debug, Serialize)]
struct HomArgs {
    #[arg(long)]
    source: String,
    #[arg(long)]
    target: String,
    #[arg(long, default_value = "inst=2")]
    ring: String,
    /// Include the intertwiner basis.
    #[arg(long)]
    basis: bool,
}

#[derive(Args, Debug, Serialize)]
struct FuseArgs {
    /// tl, 1, 2 or 3.
    #[arg(long, default_value = "tl")]
    kind: String,
    #[arg(long)]
    left: String,
    #[arg(long)]
    right: String,
    #[arg(long, default_value = "generic")]
    ring: String,
    /// symbolic, explicit or both.
    #[arg(long, default_value = "symbolic")]
    mode: String,
    /// Largest free module the explicit quotient may build.
    #[arg(long, default_value_t = MAX_FREE)]
    bound: usize,
}

#[derive(Args, Debug, Serialize)]
struct FunctorArgs {
    /// indphi, resphi, indar or resar; without it, run the identity checks.
    #[arg(long)]
    dir: Option<String>,
    /// Repeatable; TL module labels for the identity checks.
    #[arg(long, required = true)]
    label: Vec<String>,
    #[arg(long, default_value = "generic")]
    ring: String,
}

#[derive(Args, Debug, Serialize)]
struct PeirceArgs {
    #[arg(long)]
    n: u32,
    /// Bound on rank and non-contractible loops.
    #[arg(long, default_value_t = 2)]
    bound: u32,
}

#[derive(Args, Debug, Serialize)]
pub struct GridArgs {
    /// Largest n1 + n2.
    #[arg(long, default_value_t = 6)]
    n_max: u32,
    /// 1, 2 or 3.
    #[arg(long, default_value = "1")]
    kind: String,
    #[arg(long, default_value = "inst=2")]
    ring: String,
    #[arg(long, default_value_t = MAX_FREE)]
    bound: usize,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("refused: {0}")]
    Refused(String),
    #[error("{0}")]
    Invalid(String),
}

macro_rules! classify {
    ($($t:ty => |$e:ident| $body:expr),* $(,)?) => {
        $(impl From<$t> for CliError {
            fn from($e: $t) -> Self { $body }
        })*
    };
}

classify! {
    FusionError => |e| match e {
        FusionError::Refused(_) | FusionError::Bound(..) => CliError::Refused(e.to_string()),
        FusionError::Module(m) => m.into(),
        other => CliError::Invalid(other.to_string()),
    },
    ModuleError => |e| match e {
        ModuleError::Unsupported(_) => CliError::Refused(e.to_string()),
        other => CliError::Invalid(other.to_string()),
    },
    LabelError => |e| match e {
        LabelError::Uncovered(_) => CliError::Refused(e.to_string()),
        other => CliError::Invalid(other.to_string()),
    },
    FunctorError => |e| match e {
        FunctorError::Fusion(f) => f.into(),
        FunctorError::Module(m) => m.into(),
        FunctorError::Label(l) => l.into(),
        other => CliError::Invalid(other.to_string()),
    },
    HomError => |e| CliError::Invalid(e.to_string()),
    ScalarError => |e| CliError::Invalid(e.to_string()),
    atl::algebra::AlgebraError => |e| CliError::Invalid(e.to_string()),
}

/// A result and whether every check inside it passed.
pub struct Outcome {
    pub result: Value,
    pub ok: bool,
}

fn done(result: impl Serialize, ok: bool) -> Result<Outcome, CliError> {
    Ok(Outcome { result: serde_json::to_value(result).map_err(|e| CliError::Invalid(e.to_string()))?, ok })
}

pub fn ring(s: &str) -> Result<Ring, CliError> {
    Ok(Ring::parse(s)?)
}

pub fn label(s: &str) -> Result<ModuleLabel, CliError> {
    Ok(s.parse()?)
}

fn zspec(s: &str) -> Result<ZSpec, CliError> {
    Ok(s.parse()?)
}

pub fn kind(s: &str) -> Result<FusionKind, CliError> {
    s.parse().map_err(|e: FusionError| CliError::Invalid(e.to_string()))
}

fn run(cmd: &Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Relations(a) => {
            let suite: Suite = a.suite.parse()?;
            let rep = relation_suite(&ring(&a.ring)?, a.n, suite)?;
            let ok = rep.all_pass();
            done(rep, ok)
        }
        Command::Gram(a) => {
            let z = zspec(&a.z)?;
            let r = if z == ZSpec::Formal && a.ring == "generic" { ring("generic-z")? } else { ring(&a.ring)? };
            let g = gram_matrix(&r, a.n, a.k, z)?;
            let mut v = serde_json::to_value(&g).map_err(|e| CliError::Invalid(e.to_string()))?;
            if a.matrix {
                v["matrix"] = json!(g.matrix.triplets(&r));
            } else if let Some(o) = v.as_object_mut() {
                o.remove("matrix");
            }
            done(v, true)
        }
        Command::Order(a) => {
            let r = match a.l {
                Some(l) => Ring::root_of_unity(l)?,
                None => ring(&a.ring)?,
            };
            let p = QParam::from_ring(&r)?;
            let z = zspec(&a.z)?;
            let ladder = order_ladder(&p, a.n, a.k, z)?;
            let ok = ladder.verify_edges(&r)?;
            let dl = dim_l(&p, a.n, a.k, z)?;
            done(json!({ "ladder": ladder, "edges_verified": ok, "dim_l": dl }), ok)
        }
        Command::Dims(a) => {
            let p = QParam::from_ring(&ring(&a.ring)?)?;
            let x = label(&a.label)?;
            let d = dims(&x, &p)?;
            let detail = match (x.family, x.z) {
                (atl::labels::Family::L, Some(z)) => Some(dim_l(&p, x.n, x.k, z)?),
                _ => None,
            };
            done(json!({ "label": x.to_string(), "dim": d, "dim_l": detail }), true)
        }
        Command::Hom(a) => {
            let r = ring(&a.ring)?;
            let (s, t) = (concrete_module(&r, &label(&a.source)?)?, concrete_module(&r, &label(&a.target)?)?);
            let h = hom_space(&s, &t)?;
            let ok = h.verify(&s, &t)?;
            done(h.to_json(a.basis), ok)
        }
        Command::Fuse(a) => fuse(a),
        Command::Functor(a) => {
            let r = ring(&a.ring)?;
            let labels: Vec<ModuleLabel> = a.label.iter().map(|s| label(s)).collect::<Result<_, _>>()?;
            match &a.dir {
                Some(d) => {
                    let dir: Functor = d.parse()?;
                    let p = QParam::from_ring(&r)?;
                    let reps: Vec<Value> = labels
                        .iter()
                        .map(|x| Ok(json!({ "label": x.to_string(), "report": functor_table(dir, x, &p)?, "render": functor_table(dir, x, &p)?.render() })))
                        .collect::<Result<_, CliError>>()?;
                    done(reps, true)
                }
                None => {
                    let n = labels.first().map(|x| x.n).unwrap_or(0);
                    let mods: Vec<_> = labels.iter().map(|x| concrete_module(&r, x)).collect::<Result<_, _>>()?;
                    let rep = functor_identity_check(n, &mods)?;
                    let ends: Vec<Value> = mods
                        .iter()
                        .map(|m| Ok(json!({ "module": m.name(), "end_pulled_back": end_dim(&resphi_concrete(m)?)? })))
                        .collect::<Result<_, CliError>>()?;
                    let ok = rep.pass();
                    done(json!({ "report": rep, "ends": ends }), ok)
                }
            }
        }
        Command::Peirce(a) => {
            let rep = peirce_count_check(a.n, a.bound)?;
            let ok = rep.pass;
            done(rep, ok)
        }
        Command::Grid(a) => grid::run(a),
    }
}

fn fuse(a: &FuseArgs) -> Result<Outcome, CliError> {
    let r = ring(&a.ring)?;
    let p = QParam::from_ring(&r)?;
    let k = kind(&a.kind)?;
    let (x, y) = (label(&a.left)?, label(&a.right)?);
    match a.mode.as_str() {
        "symbolic" => {
            let rep = affine_fuse(k, &x, &y, &p)?;
            done(json!({ "render": rep.render(), "total_dim": rep.total_dim(), "report": rep }), true)
        }
        "explicit" => {
            let (m, route) = affine_fuse_explicit(k, &x, &y, &r, a.bound)?;
            let ok = m.relations_hold()?;
            done(json!({ "module": m.name(), "dim": m.dim(), "route": route, "relations_hold": ok }), ok)
        }
        "both" => {
            let c = fuse_crosscheck(k, &x, &y, &r, a.bound)?;
            let ok = c.pass;
            done(c, ok)
        }
        other => Err(CliError::Invalid(format!("unknown mode {other}; expected symbolic, explicit or both"))),
    }
}

fn digest(v: &Value) -> String {
    // serde_json maps are ordered by key, so this text is canonical
    let text = serde_json::to_string(v).expect("JSON value");
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

fn ring_of(cmd: &Value) -> Value {
    match (cmd.get("ring"), cmd.get("l")) {
        (_, Some(Value::Number(l))) => json!(format!("l={l}")),
        (Some(r), _) => r.clone(),
        _ => Value::Null,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let params = serde_json::to_value(&cli.command).expect("arguments serialize");
    let outcome = run(&cli.command);
    let wall = start.elapsed().as_secs_f64();
    let (doc, code) = match outcome {
        Ok(o) => {
            let manifest = json!({
                "command": params["command"],
                "parameters": params,
                "ring": ring_of(&params),
                "version": env!("CARGO_PKG_VERSION"),
                "threads": grid::threads(),
                "wall_time_s": wall,
                "result_digest": digest(&o.result),
            });
            (json!({ "manifest": manifest, "pass": o.ok, "result": o.result }), if o.ok { 0 } else { FAILED })
        }
        Err(e) => {
            let code = if matches!(e, CliError::Refused(_)) { REFUSED } else { ERROR };
            eprintln!("atl: {e}");
            (json!({ "error": e.to_string(), "refused": code == REFUSED, "parameters": params }), code)
        }
    };
    let text = serde_json::to_string_pretty(&doc).expect("JSON value") + "\n";
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("atl: cannot write {}: {e}", path.display());
                return ExitCode::from(ERROR);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(code)
}
