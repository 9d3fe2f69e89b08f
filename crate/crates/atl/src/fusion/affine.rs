//! Symbolic fusion reports, the affine pipelines ×¹, ×², ×³, and their
//! explicit counterparts.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use serde::Serialize;

use crate::functors::{build_p, resphi_concrete};
use crate::homsolver::{factor_multiset, FactorReport};
use crate::labels::{functor_table, DecompositionReport, Family, Functor, ModuleLabel, QParam, Summand, ZSpec};
use crate::modcore::{build_i, build_l, build_s, Module};
use crate::scalar::Ring;

use super::explicit::{tl_diagrams, tl_fuse_explicit, tl_fuse_standard};
use super::FusionError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FusionKind {
    Tl,
    Affine1,
    Affine2,
    Affine3,
}

impl FromStr for FusionKind {
    type Err = FusionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "tl" | "0" => FusionKind::Tl,
            "1" => FusionKind::Affine1,
            "2" => FusionKind::Affine2,
            "3" => FusionKind::Affine3,
            _ => return Err(FusionError::Refused(format!("unknown fusion kind `{s}`"))),
        })
    }
}

impl fmt::Display for FusionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FusionKind::Tl => "×f",
            FusionKind::Affine1 => "×¹f",
            FusionKind::Affine2 => "×²f",
            FusionKind::Affine3 => "×³f",
        })
    }
}

/// TL fusion rules at roots of unity that are quoted rather than derived:
/// ((n1, r), (n2, s), ℓ) ↦ summands (family, k) over TL_{n1+n2}.
const QUOTED: &[((u32, u32), (u32, u32), u32, &[(Family, u32)])] =
    &[((5, 3), (7, 5), 5, &[(Family::P, 4), (Family::P, 6), (Family::S, 8)])];

fn regular_kind(x: &ModuleLabel) -> Result<(), FusionError> {
    if matches!(x.family, Family::S | Family::I | Family::P) {
        Ok(())
    } else {
        Err(FusionError::Refused(format!("TL fusion takes S, I or P labels, not {x}")))
    }
}

/// S(n,r) ×f S(m,s) = ⊕_{t=|r−s|, step 2}^{r+s} S(n+m,t) for generic q,
/// where S = I = P.
pub fn tl_fuse_symbolic(a: &ModuleLabel, b: &ModuleLabel, p: &QParam) -> Result<DecompositionReport, FusionError> {
    regular_kind(a)?;
    regular_kind(b)?;
    let n = a.n + b.n;
    let mut out = DecompositionReport::default();
    if p.is_generic() {
        let (r, s) = (a.k.max(b.k), a.k.min(b.k));
        for t in (r - s..=r + s).step_by(2) {
            out.push(Summand { label: ModuleLabel::s(n, t), via: None, mult: 1, dim: crate::labels::Dim::Finite(crate::labels::dim_s(n as i64, t as i64)), loewy: None });
        }
        return Ok(out);
    }
    let ell = p.ell.expect("root of unity");
    let quoted = QUOTED.iter().find(|(x, y, l, _)| {
        *l == ell && a.family == Family::S && b.family == Family::S && ((*x, *y) == ((a.n, a.k), (b.n, b.k)) || (*y, *x) == ((a.n, a.k), (b.n, b.k)))
    });
    let Some((_, _, _, summands)) = quoted else {
        return Err(FusionError::Refused(
            "generic q only: TL fusion rules at roots of unity are not derived here; use explicit mode".into(),
        ));
    };
    for &(f, k) in summands.iter() {
        let label = ModuleLabel::new(f, n, k, None).expect("valid quoted label");
        out.push(Summand { label, via: None, mult: 1, dim: crate::labels::dims(&label, p).map_err(label_err)?, loewy: None });
    }
    out.notes.push("TL fusion rule quoted from a published table, not computed".into());
    Ok(out)
}

fn label_err(e: crate::labels::LabelError) -> FusionError {
    FusionError::Refused(e.to_string())
}

fn table(dir: Functor, x: &ModuleLabel, p: &QParam) -> Result<DecompositionReport, FusionError> {
    functor_table(dir, x, p).map_err(label_err)
}

fn fuse_reports(a: &DecompositionReport, b: &DecompositionReport, p: &QParam) -> Result<DecompositionReport, FusionError> {
    let mut out = DecompositionReport::default();
    for x in &a.summands {
        for y in &b.summands {
            if x.via.is_some() || y.via.is_some() {
                return Err(FusionError::Refused(format!("cannot fuse {} with {}", x.name(), y.name())));
            }
            out.extend(tl_fuse_symbolic(&x.label, &y.label, p)?, x.mult * y.mult);
        }
    }
    Ok(out)
}

fn apply(dir: Functor, r: &DecompositionReport, p: &QParam) -> Result<DecompositionReport, FusionError> {
    let mut out = DecompositionReport::default();
    for s in &r.summands {
        out.extend(table(dir, &s.label, p)?, s.mult);
    }
    out.notes.extend(r.notes.iter().filter(|n| !out.notes.contains(n)).cloned().collect::<Vec<_>>());
    Ok(out)
}

/// The symbolic report of `left kind right`.
pub fn affine_fuse(kind: FusionKind, left: &ModuleLabel, right: &ModuleLabel, p: &QParam) -> Result<DecompositionReport, FusionError> {
    if kind == FusionKind::Tl {
        return tl_fuse_symbolic(left, right, p);
    }
    if !left.family.is_affine() || !right.family.is_affine() {
        return Err(FusionError::Refused(format!("{kind} takes aTL-module labels")));
    }
    match kind {
        FusionKind::Affine1 | FusionKind::Affine2 => {
            let a = table(Functor::IndPhi, left, p)?;
            let b = table(Functor::IndPhi, right, p)?;
            if a.is_zero() || b.is_zero() {
                let mut z = DecompositionReport::zero("Indφ of a factor vanishes");
                z.notes.extend(a.notes.into_iter().chain(b.notes));
                return Ok(z);
            }
            let fused = fuse_reports(&a, &b, p)?;
            let dir = if kind == FusionKind::Affine1 { Functor::ResPhi } else { Functor::IndAr };
            apply(dir, &fused, p)
        }
        FusionKind::Affine3 => {
            if !p.is_generic() || left.family != Family::L || right.family != Family::L {
                return Err(FusionError::Refused("×³ is covered for generic q with irreducible factors only".into()));
            }
            let a = table(Functor::ResAr, left, p)?;
            let b = table(Functor::ResAr, right, p)?;
            apply(Functor::ResPhi, &fuse_reports(&a, &b, p)?, p)
        }
        FusionKind::Tl => unreachable!(),
    }
}

/// Composition factors predicted by a report of L-labelled or Loewy-annotated
/// summands; `None` when some summand carries no factor data.
pub fn predicted_factors(r: &DecompositionReport) -> Option<Vec<ModuleLabel>> {
    let mut out = Vec::new();
    for s in &r.summands {
        let one: Vec<ModuleLabel> = match (&s.loewy, s.label.family) {
            (Some(layers), _) => layers.iter().flatten().copied().collect(),
            (None, Family::L) => vec![s.label],
            (None, Family::S | Family::I) if s.via.is_none() => vec![s.label.with_family(Family::I)],
            _ => return None,
        };
        for _ in 0..s.mult {
            out.extend(one.iter().copied());
        }
    }
    out.sort();
    Some(out)
}

fn regular_module(ring: &Ring, x: &ModuleLabel) -> Result<Module, FusionError> {
    Ok(match x.family {
        Family::S => build_s(ring, x.n, x.k)?,
        Family::I => build_i(ring, x.n, x.k)?,
        Family::P => build_p(ring, x.n, x.k).map_err(|e| FusionError::Refused(e.to_string()))?,
        _ => return Err(FusionError::Refused(format!("no concrete TL module for {x}"))),
    })
}

/// Which construction produced the TL fusion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    FreeQuotient,
    Idempotent,
}

/// Explicit TL fusion: the free quotient when it fits in `max_free`, else
/// the idempotent presentation for standard inputs.
///
/// Results are memoized per process by ring, labels and bound, since the
/// affine pipelines reach the same TL fusion from many labels.
pub fn tl_fuse_concrete(ring: &Ring, a: &ModuleLabel, b: &ModuleLabel, max_free: usize) -> Result<(Module, Route), FusionError> {
    static MEMO: OnceLock<Mutex<HashMap<String, (Module, Route)>>> = OnceLock::new();
    let key = format!("{}|{a}|{b}|{max_free}", ring.descriptor());
    let memo = MEMO.get_or_init(Default::default);
    if let Some(hit) = memo.lock().expect("fusion memo").get(&key) {
        return Ok(hit.clone());
    }
    let out = tl_fuse_uncached(ring, a, b, max_free)?;
    memo.lock().expect("fusion memo").insert(key, out.clone());
    Ok(out)
}

fn tl_fuse_uncached(ring: &Ring, a: &ModuleLabel, b: &ModuleLabel, max_free: usize) -> Result<(Module, Route), FusionError> {
    let (ma, mb) = (regular_module(ring, a)?, regular_module(ring, b)?);
    let free = tl_diagrams(a.n + b.n).len() * ma.dim() * mb.dim();
    if free <= max_free {
        return Ok((tl_fuse_explicit(&ma, &mb, max_free)?, Route::FreeQuotient));
    }
    // at generic q the irreducible quotient I is S itself
    let standard = |x: &ModuleLabel| x.family == Family::S || (x.family == Family::I && ring.is_generic_q());
    if standard(a) && standard(b) {
        return Ok((tl_fuse_standard(ring, a.n, a.k, b.n, b.k)?, Route::Idempotent));
    }
    Err(FusionError::Bound(free, max_free))
}

/// The fused module built from concrete modules, over TL (for Tl and ×²)
/// or over aTL (for ×¹ and ×³).
pub fn affine_fuse_explicit(
    kind: FusionKind,
    left: &ModuleLabel,
    right: &ModuleLabel,
    ring: &Ring,
    max_free: usize,
) -> Result<(Module, Route), FusionError> {
    let p = QParam::from_ring(ring).map_err(label_err)?;
    match kind {
        FusionKind::Tl => tl_fuse_concrete(ring, left, right, max_free),
        FusionKind::Affine1 | FusionKind::Affine2 => {
            let a = table(Functor::IndPhi, left, &p)?;
            let b = table(Functor::IndPhi, right, &p)?;
            let n = left.n + right.n;
            if a.is_zero() || b.is_zero() {
                let acting = if kind == FusionKind::Affine1 { crate::modcore::Acting::Affine } else { crate::modcore::Acting::Regular };
                return Ok((Module::zero(ring, n, acting), Route::FreeQuotient));
            }
            let (fused, route) = tl_fuse_concrete(ring, &a.summands[0].label, &b.summands[0].label, max_free)?;
            if kind == FusionKind::Affine2 {
                return Ok((fused, route));
            }
            Ok((resphi_concrete(&fused).map_err(|e| FusionError::Refused(e.to_string()))?, route))
        }
        FusionKind::Affine3 => {
            if left.family != Family::L || right.family != Family::L {
                return Err(FusionError::Refused("×³ is covered for irreducible factors only".into()));
            }
            let la = build_l(ring, left.n, left.k, left.z.unwrap())?.restrict_regular()?;
            let lb = build_l(ring, right.n, right.k, right.z.unwrap())?.restrict_regular()?;
            let fused = tl_fuse_explicit(&la, &lb, max_free)?;
            Ok((resphi_concrete(&fused).map_err(|e| FusionError::Refused(e.to_string()))?, Route::FreeQuotient))
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Crosscheck {
    pub kind: FusionKind,
    pub left: ModuleLabel,
    pub right: ModuleLabel,
    pub symbolic: DecompositionReport,
    pub route: Route,
    pub explicit_dim: usize,
    /// Finite-dimensional part predicted at the level that was built.
    pub predicted_dim: Option<u64>,
    pub predicted_factors: Option<Vec<String>>,
    pub factors: FactorReport,
    pub pass: bool,
}

/// Builds both routes and compares dimension and composition factors.
pub fn fuse_crosscheck(
    kind: FusionKind,
    left: &ModuleLabel,
    right: &ModuleLabel,
    ring: &Ring,
    max_free: usize,
) -> Result<Crosscheck, FusionError> {
    let p = QParam::from_ring(ring).map_err(label_err)?;
    let symbolic = affine_fuse(kind, left, right, &p)?;
    let (module, route) = affine_fuse_explicit(kind, left, right, ring, max_free)?;
    let n = left.n + right.n;
    // ×² is compared before induction, where everything is finite
    let level = if kind == FusionKind::Affine2 {
        let a = table(Functor::IndPhi, left, &p)?;
        let b = table(Functor::IndPhi, right, &p)?;
        if a.is_zero() || b.is_zero() {
            DecompositionReport::zero("Indφ of a factor vanishes")
        } else {
            fuse_reports(&a, &b, &p)?
        }
    } else {
        symbolic.clone()
    };
    let predicted = predicted_factors(&level);
    let regular = matches!(kind, FusionKind::Tl | FusionKind::Affine2);
    let mut candidates = Vec::new();
    for t in (n % 2..=n).step_by(2) {
        if regular {
            if !(p.beta_zero() && t == 0 && n.is_multiple_of(2)) {
                candidates.push(build_i(ring, n, t)?);
            }
        } else if p.in_lambda(n, t, ZSpec::z(t as i64 + 2)) {
            candidates.push(build_l(ring, n, t, ZSpec::z(t as i64 + 2))?);
        }
    }
    let candidates: Vec<Module> = candidates.into_iter().filter(|m| m.dim() > 0).collect();
    let factors = factor_multiset(&module, &candidates)?;
    let got: Vec<ModuleLabel> = factors.label_multiset();
    let predicted_dim = level.total_dim();
    let pass = factors.certain && predicted.as_ref() == Some(&got) && predicted_dim == Some(module.dim() as u64);
    Ok(Crosscheck {
        kind,
        left: *left,
        right: *right,
        symbolic,
        route,
        explicit_dim: module.dim(),
        predicted_dim,
        predicted_factors: predicted.map(|v| v.iter().map(ToString::to_string).collect()),
        factors,
        pass,
    })
}
