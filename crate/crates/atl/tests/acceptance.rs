//! End-to-end acceptance run: one line per criterion.
//!
//! Every comparison is exact. The only tolerances are the runtime budgets
//! below; a criterion that overruns its budget is reported as a failure.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use atl::algebra::{relation_suite, Suite};
use atl::functors::{build_p, functor_identity_check, resphi_concrete};
use atl::fusion::{affine_fuse, fuse_crosscheck, FusionKind, MAX_FREE};
use atl::homsolver::{end_dim, hom_space};
use atl::labels::{closure, dim_i, dim_l, dim_s, lambda_pairs, precedes, Family, ModuleLabel, Pair, QParam, ZSpec};
use atl::modcore::{build_s, build_w_cell, gram_matrix, peirce_count_check, resar_filtration, InducedStandard, Module};
use atl::scalar::{Ring, XRole};

const ROOTS: [u32; 4] = [2, 3, 4, 5];

/// Runtime budgets in seconds, by criterion.
const BUDGET: [u64; 10] = [120, 120, 600, 600, 180, 180, 1200, 5, 120, 120];

/// Largest free module for the ×³ quotient, which has no idempotent route.
const MAX_FREE_AFFINE3: usize = 200_000;

/// Criteria whose failure is understood and recorded; the run still reports
/// them as FAIL but does not turn the exit status red for them.
const KNOWN_FAILURES: [(usize, &str); 1] =
    [(3, "closed-form dim L overcounts when coincidences collapse the ladder into a chain of three or more nodes")];

type Outcome = Result<(bool, String), String>;

fn roots() -> Vec<(u32, Ring, QParam)> {
    ROOTS
        .iter()
        .map(|&l| {
            let r = Ring::root_of_unity(l).expect("cyclotomic ring");
            let p = QParam::from_ring(&r).expect("root of unity");
            (l, r, p)
        })
        .collect()
}

fn c1_relations() -> Outcome {
    let mut rings = vec![Ring::generic()];
    rings.extend(roots().into_iter().map(|(_, r, _)| r));
    let (mut checks, mut bad) = (0, Vec::new());
    for ring in &rings {
        for (suite, max) in [(Suite::Affine, 8), (Suite::Regular, 8), (Suite::AppendixA, 5)] {
            for n in 1..=max {
                let rep = relation_suite(ring, n, suite).map_err(|e| e.to_string())?;
                checks += rep.checks.len();
                bad.extend(rep.failures().map(|c| format!("{} {suite} n={n}: {}", ring.descriptor(), c.relation)));
            }
        }
    }
    Ok((bad.is_empty(), format!("{checks} relations, {} failing {:?}", bad.len(), &bad[..bad.len().min(3)])))
}

fn c2_phi() -> Outcome {
    let mut rings = vec![Ring::generic()];
    rings.extend(roots().into_iter().map(|(_, r, _)| r));
    let (mut checks, mut bad) = (0, Vec::new());
    for ring in &rings {
        for n in 1..=6 {
            let rep = relation_suite(ring, n, Suite::Phi).map_err(|e| e.to_string())?;
            checks += rep.checks.len();
            bad.extend(rep.failures().map(|c| format!("{} n={n}: {}", ring.descriptor(), c.relation)));
        }
    }
    Ok((bad.is_empty(), format!("{checks} images of relations and identities, {} failing {:?}", bad.len(), &bad[..bad.len().min(3)])))
}

fn c3_gram() -> Outcome {
    let (mut cases, mut tele_bad, mut closed_bad, mut anchors, mut anchor_bad) = (0, Vec::new(), Vec::new(), 0, Vec::new());
    for (l, ring, p) in roots() {
        for n in 1..=8 {
            for (k, z) in lambda_pairs(&p, n) {
                cases += 1;
                let g = gram_matrix(&ring, n, k, z).map_err(|e| e.to_string())?;
                let d = dim_l(&p, n, k, z).map_err(|e| e.to_string())?;
                let tag = format!("ℓ={l} ({n},{k};{z})");
                if g.rank as u64 != d.telescope {
                    tele_bad.push(format!("{tag}: rank {} telescope {}", g.rank, d.telescope));
                }
                if let Some((c, _)) = &d.closed_form {
                    if *c != g.rank as u64 {
                        closed_bad.push(format!("{tag}: rank {} closed form {c}", g.rank));
                    }
                }
                if p.same_pair(k, z, ZSpec::z(k as i64 + 2)) {
                    anchors += 1;
                    if g.rank as u64 != dim_i(&p, n as i64, k as i64) {
                        anchor_bad.push(format!("{tag}: rank {} dim I {}", g.rank, dim_i(&p, n as i64, k as i64)));
                    }
                }
            }
        }
    }
    let ok = tele_bad.is_empty() && closed_bad.is_empty() && anchor_bad.is_empty();
    Ok((
        ok,
        format!(
            "{cases} pairs: rank = telescope on {}, rank = closed form on {}, rank = dim I on {}/{anchors} anchors; first mismatches {:?}",
            cases - tele_bad.len(),
            cases - closed_bad.len(),
            anchors - anchor_bad.len(),
            tele_bad.iter().chain(&closed_bad).chain(&anchor_bad).take(2).collect::<Vec<_>>()
        ),
    ))
}

fn c4_hom() -> Outcome {
    let (mut pairs, mut bad) = (0, Vec::new());
    for (l, ring, p) in roots() {
        for n in 1..=6 {
            let mut seen = BTreeSet::new();
            let mut cache = std::collections::HashMap::<Pair, Module>::new();
            let mut module = |x: Pair| -> Result<Module, String> {
                if let Some(m) = cache.get(&x) {
                    return Ok(m.clone());
                }
                let m = build_w_cell(&ring, n, x.k, x.z).map_err(|e| e.to_string())?;
                cache.insert(x, m.clone());
                Ok(m)
            };
            for (k, z) in lambda_pairs(&p, n) {
                let ladder: Vec<Pair> = closure(&p, Pair::new(&p, k, z), n).into_iter().collect();
                for &lower in &ladder {
                    for &upper in &ladder {
                        if !seen.insert((lower, upper)) {
                            continue;
                        }
                        pairs += 1;
                        let expect = usize::from(precedes(&p, lower, upper, n));
                        let h = hom_space(&module(upper)?, &module(lower)?).map_err(|e| e.to_string())?;
                        if h.dim != expect {
                            bad.push(format!("ℓ={l} n={n} Hom(W{:?}, W{:?}) = {} not {expect}", (upper.k, upper.z), (lower.k, lower.z), h.dim));
                        }
                    }
                }
            }
        }
    }
    Ok((bad.is_empty(), format!("{pairs} ordered ladder pairs, {} mismatches {:?}", bad.len(), &bad[..bad.len().min(3)])))
}

fn c5_indar() -> Outcome {
    let t = Ring::generic_x(XRole::Winding);
    let (mut cases, mut bad) = (0, Vec::new());
    for n in 1..=6 {
        for k in (n % 2..=n).step_by(2) {
            cases += 1;
            let rep = InducedStandard::new(&t, n, k).and_then(|s| s.check(2)).map_err(|e| e.to_string())?;
            if !rep.pass() {
                bad.push(format!("({n},{k})"));
            }
        }
    }
    Ok((bad.is_empty(), format!("{cases} induced standards, strata and quotient actions checked, failing {bad:?}")))
}

fn c6_resar() -> Outcome {
    let t = Ring::generic_x(XRole::Winding);
    let g = Ring::generic();
    let (mut cases, mut bad) = (0, Vec::new());
    for n in 1..=6 {
        for k in (n % 2..=n).step_by(2) {
            for (ring, twist) in [(&t, None), (&g, Some(ZSpec::z(1)))] {
                cases += 1;
                let strata = resar_filtration(ring, n, k, twist).map_err(|e| e.to_string())?;
                let total: usize = strata.iter().map(|s| s.dim).sum();
                let formula: i64 = (k..=n).step_by(2).map(|j| dim_s(n as i64, j as i64) as i64).sum();
                let ok = strata.iter().all(|s| s.invariant && s.matches_s) && total as i64 == formula;
                if !ok {
                    bad.push(format!("({n},{k}) twist {twist:?}"));
                }
            }
        }
    }
    Ok((bad.is_empty(), format!("{cases} filtrations, quotients equal to standard modules, failing {bad:?}")))
}

/// ⊕_{t = |r−s|, step 2}^{r+s} of `f(N, t)`, as a sorted list of labels.
fn generic_sum(left: &ModuleLabel, right: &ModuleLabel, f: impl Fn(u32, u32) -> ModuleLabel) -> Vec<ModuleLabel> {
    let n = left.n + right.n;
    let mut out: Vec<_> = (left.k.abs_diff(right.k)..=left.k + right.k).step_by(2).map(|t| f(n, t)).collect();
    out.sort();
    out
}

fn displayed_formula(kind: FusionKind, a: &ModuleLabel, b: &ModuleLabel) -> Vec<ModuleLabel> {
    let l = |n, t: u32| ModuleLabel::l(n, t, ZSpec::z(t as i64 + 2));
    match kind {
        FusionKind::Affine2 => generic_sum(a, b, |n, t| ModuleLabel::new(Family::IndarS, n, t, None).expect("label")),
        _ => generic_sum(a, b, l),
    }
}

fn c7_fusion() -> Outcome {
    let ring = Ring::parse("inst=2").map_err(|e| e.to_string())?;
    let p = QParam::generic();
    let families = |kind: FusionKind, n: u32, k: u32| -> Vec<ModuleLabel> {
        let z = ZSpec::z(k as i64 + 2);
        match kind {
            FusionKind::Affine3 => vec![ModuleLabel::l(n, k, z)],
            _ => vec![ModuleLabel::w(n, k), ModuleLabel::wcell(n, k, z), ModuleLabel::l(n, k, z)],
        }
    };
    let (mut runs, mut bad, mut formula_bad) = (0, Vec::new(), Vec::new());
    for kind in [FusionKind::Affine1, FusionKind::Affine2, FusionKind::Affine3] {
        let bound = if kind == FusionKind::Affine3 { MAX_FREE_AFFINE3 } else { MAX_FREE };
        for n1 in 1..8 {
            for n2 in 1..=8 - n1 {
                for k1 in (n1 % 2..=n1).step_by(2) {
                    for k2 in (n2 % 2..=n2).step_by(2) {
                        for a in families(kind, n1, k1) {
                            for b in families(kind, n2, k2) {
                                runs += 1;
                                let c = fuse_crosscheck(kind, &a, &b, &ring, bound).map_err(|e| format!("{kind} {a} {b}: {e}"))?;
                                if !c.pass {
                                    bad.push(format!("{a} {kind} {b}"));
                                }
                                let report = affine_fuse(kind, &a, &b, &p).map_err(|e| e.to_string())?;
                                let mut got: Vec<ModuleLabel> = report.summands.iter().map(|s| s.label).collect();
                                got.sort();
                                if got != displayed_formula(kind, &a, &b) {
                                    formula_bad.push(format!("{a} {kind} {b} = {}", report.render()));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok((
        bad.is_empty() && formula_bad.is_empty(),
        format!(
            "{runs} pairs over ×¹ ×² ×³: explicit vs symbolic failing {}, displayed formulas failing {} {:?}",
            bad.len(),
            formula_bad.len(),
            bad.iter().chain(&formula_bad).take(3).collect::<Vec<_>>()
        ),
    ))
}

fn c8_showcase() -> Outcome {
    let p = QParam::root(5).map_err(|e| e.to_string())?;
    let k1 = FusionKind::Affine1;
    let r = affine_fuse(k1, &ModuleLabel::w(5, 3), &ModuleLabel::w(7, 5), &p).map_err(|e| e.to_string())?;
    let render_ok = r.render() == "Pa(12,4) ⊕ Pa(12,6) ⊕ Resφ S(12,8)";
    // 4 is critical, so P(12,4) = S(12,4); 6 reflects to 2 and 8 to 10 through 9
    let expected_total = dim_s(12, 4) + dim_s(12, 6) + dim_s(12, 2) + dim_s(12, 8);
    let total_ok = r.total_dim() == Some(expected_total);
    let ks = |s: &atl::labels::Summand| -> Option<Vec<Vec<u32>>> { s.loewy.as_ref().map(|l| l.iter().map(|x| x.iter().map(|y| y.k).collect()).collect()) };
    let loewy: Vec<_> = r.summands.iter().map(ks).collect();
    let loewy_ok = loewy == [Some(vec![vec![4]]), Some(vec![vec![6], vec![2, 12], vec![6]]), Some(vec![vec![8], vec![10]])];
    let layers_ok = r.summands.iter().all(|s| {
        let from_layers: u64 = s.loewy.iter().flatten().flatten().map(|x| dim_i(&p, x.n as i64, x.k as i64)).sum();
        s.dim == atl::labels::Dim::Finite(from_layers)
    });
    let off = affine_fuse(k1, &ModuleLabel::wcell(5, 3, ZSpec::z(3)), &ModuleLabel::wcell(7, 5, ZSpec::z(7)), &p).map_err(|e| e.to_string())?;
    let on = affine_fuse(k1, &ModuleLabel::wcell(5, 3, ZSpec::z(5)), &ModuleLabel::wcell(7, 5, ZSpec::z(7)), &p).map_err(|e| e.to_string())?;
    let ok = render_ok && total_ok && loewy_ok && layers_ok && off.is_zero() && on == r;
    Ok((
        ok,
        format!(
            "{} dim {:?} (expected {expected_total}), Loewy {loewy_ok}, layer dims {layers_ok}, off-locus zero {}",
            r.render(),
            r.total_dim(),
            off.is_zero()
        ),
    ))
}

fn c9_peirce() -> Outcome {
    let mut bad = Vec::new();
    let mut counts = Vec::new();
    for n in 2..=4 {
        for b in 0..=2 {
            let rep = peirce_count_check(n, b).map_err(|e| e.to_string())?;
            counts.push(rep.diagrams);
            if !rep.pass {
                bad.push(format!("n={n} B={b}: {} vs {}", rep.diagrams, rep.induced));
            }
        }
    }
    Ok((bad.is_empty(), format!("diagram counts {counts:?}, mismatches {bad:?}")))
}

fn c10_functors() -> Outcome {
    let ring = Ring::root_of_unity(3).map_err(|e| e.to_string())?;
    let mut bad = Vec::new();
    for n in 1..=5 {
        let mut mods = Vec::new();
        for k in (n % 2..=n).step_by(2) {
            mods.push(build_s(&ring, n, k).map_err(|e| e.to_string())?);
            mods.push(build_p(&ring, n, k).map_err(|e| e.to_string())?);
        }
        let rep = functor_identity_check(n, &mods).map_err(|e| e.to_string())?;
        if !rep.pass() {
            bad.push(format!("n={n}"));
        }
    }
    let pa = resphi_concrete(&build_p(&ring, 5, 3).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let end = end_dim(&pa).map_err(|e| e.to_string())?;
    Ok((bad.is_empty() && end == 2, format!("identities on S and P for n ≤ 5 failing {bad:?}; dim End(Resφ P(5,3)) = {end}")))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("relation suites", c1_relations),
        ("φ images", c2_phi),
        ("Gram rank vs dim L", c3_gram),
        ("Hom between cell modules", c4_hom),
        ("induced standard strata", c5_indar),
        ("restriction filtration", c6_resar),
        ("fusion dual route", c7_fusion),
        ("ℓ = 5 showcase", c8_showcase),
        ("graded Peirce count", c9_peirce),
        ("functor identities", c10_functors),
    ];
    let mut unexpected = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let id = i + 1;
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let budget = Duration::from_secs(BUDGET[i]);
        let (pass, detail) = match outcome {
            Ok((ok, d)) => (ok && took <= budget, if took > budget { format!("{d}; over budget") } else { d }),
            Err(e) => (false, format!("error: {e}")),
        };
        let known = KNOWN_FAILURES.iter().find(|(c, _)| *c == id);
        let verdict = if pass { "PASS" } else { "FAIL" };
        let note = match (pass, known) {
            (false, Some((_, why))) => format!(" [known: {why}]"),
            (true, Some(_)) => " [listed as a known failure but passed]".to_string(),
            _ => String::new(),
        };
        if pass == known.is_some() {
            unexpected += 1;
        }
        println!("criterion {id:>2} {verdict} {name}: {detail} ({:.1}s of {}s){note}", took.as_secs_f64(), BUDGET[i]);
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criteria differ from the recorded expectations");
        ExitCode::FAILURE
    }
}
