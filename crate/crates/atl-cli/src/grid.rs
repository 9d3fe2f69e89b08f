//! Dual-route fusion checks over every small label pair.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde_json::{json, Value};

use atl::fusion::{fuse_crosscheck, FusionKind};
use atl::labels::{ModuleLabel, QParam, ZSpec};

use crate::{done, kind, ring, CliError, GridArgs, Outcome};

/// Worker count from ATL_THREADS, defaulting to the available parallelism.
pub fn threads() -> usize {
    std::env::var("ATL_THREADS")
        .ok()
        .and_then(|s| s.parse().ok())
        .filter(|&t| t > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// W, Wcell(z_{k+2}) and L(z_{k+2}) for ×¹ and ×², L(z_{k+2}) alone for ×³.
fn labels(kind: FusionKind, p: &QParam, n: u32, k: u32) -> Vec<ModuleLabel> {
    let z = ZSpec::z(k as i64 + 2);
    let mut out = Vec::new();
    if kind != FusionKind::Affine3 {
        out.push(ModuleLabel::w(n, k));
        out.push(ModuleLabel::wcell(n, k, z));
    }
    if p.in_lambda(n, k, z) {
        out.push(ModuleLabel::l(n, k, z));
    }
    out
}

pub fn run(a: &GridArgs) -> Result<Outcome, CliError> {
    let r = ring(&a.ring)?;
    let p = QParam::from_ring(&r)?;
    let fk = kind(&a.kind)?;
    if fk == FusionKind::Tl {
        return Err(CliError::Invalid("the grid covers the affine kinds 1, 2 and 3".into()));
    }
    let mut tasks = Vec::new();
    for n1 in 1..a.n_max {
        for n2 in 1..=a.n_max - n1 {
            for k1 in (n1 % 2..=n1).step_by(2) {
                for k2 in (n2 % 2..=n2).step_by(2) {
                    for x in labels(fk, &p, n1, k1) {
                        for y in labels(fk, &p, n2, k2) {
                            tasks.push((x, y));
                        }
                    }
                }
            }
        }
    }
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<Value>>> = Mutex::new(vec![None; tasks.len()]);
    std::thread::scope(|s| {
        for _ in 0..threads().min(tasks.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some((x, y)) = tasks.get(i) else { break };
                let v = match fuse_crosscheck(fk, x, y, &r, a.bound) {
                    Ok(c) => json!({ "left": x.to_string(), "right": y.to_string(), "pass": c.pass, "dim": c.explicit_dim,
                                     "route": c.route, "factors": c.factors.factors }),
                    Err(e) => json!({ "left": x.to_string(), "right": y.to_string(), "pass": false, "error": e.to_string() }),
                };
                results.lock().expect("grid results")[i] = Some(v);
            });
        }
    });
    // task order, not completion order, so the digest is reproducible
    let rows: Vec<Value> = results.into_inner().expect("grid results").into_iter().map(|v| v.expect("every task ran")).collect();
    let failed = rows.iter().filter(|v| v["pass"] != json!(true)).count();
    done(json!({ "kind": fk.to_string(), "tasks": rows.len(), "failed": failed, "rows": rows }), failed == 0)
}
