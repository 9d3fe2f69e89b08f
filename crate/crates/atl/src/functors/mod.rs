//! Concrete pullbacks along φ, projective covers of standard modules, and
//! checks of the functor identities on explicit modules.

use serde::Serialize;
use thiserror::Error;

use crate::fusion::{tl_fuse_explicit, FusionError, MAX_FREE};
use crate::homsolver::{end_dim, find_isomorphism, hom_space, HomError};
use crate::labels::{LabelError, ModuleLabel, QParam};
use crate::linalg::{nullspace, rank, Matrix};
use crate::modcore::{build_s, Acting, Module, ModuleError};
use crate::scalar::{Ring, Scalar};

#[derive(Debug, Error)]
pub enum FunctorError {
    #[error("expected a TL_n-module")]
    NotRegular,
    #[error("{0}")]
    Construction(String),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    Label(#[from] LabelError),
}

fn u_matrices(x: &Module) -> Vec<Matrix> {
    x.generators().iter().map(|(_, m)| m.clone()).collect()
}

/// Resφ X: the aTL_n-module on the space of X with g acting as φ(g).
///
/// φ(τ) = v³ T_1⋯T_{n−1}, φ(e_0) = η⁻¹ u_1 η with η = T_1⋯T_{n−1}, and
/// φ(e_i) = φ(τ) φ(e_{i−1}) φ(τ)⁻¹; on n = 1, τ acts as v³.
pub fn resphi_concrete(x: &Module) -> Result<Module, FunctorError> {
    if x.acting() != Acting::Regular {
        return Err(FunctorError::NotRegular);
    }
    let ring = x.ring().clone();
    let (n, d) = (x.n(), x.dim());
    let name = format!("Resφ {}", x.name());
    if n == 0 {
        return Err(FunctorError::Construction("φ needs n ≥ 1".into()));
    }
    let id = Matrix::identity(&ring, d);
    let us = u_matrices(x);
    let t = |u: &Matrix| id.scale(&ring.v_pow(1)).add(&u.scale(&ring.v_pow(-1)));
    let t_inv = |u: &Matrix| id.scale(&ring.v_pow(-1)).add(&u.scale(&ring.v_pow(1)));
    let mut eta = id.clone();
    let mut eta_inv = id.clone();
    for u in &us {
        eta = eta.mul(&ring, &t(u));
        eta_inv = t_inv(u).mul(&ring, &eta_inv);
    }
    let tau = eta.scale(&ring.v_pow(3));
    let tau_inv = eta_inv.scale(&ring.v_pow(-3));
    let mut gens = Vec::new();
    if n >= 2 {
        let mut e = eta_inv.mul(&ring, &us[0]).mul(&ring, &eta);
        gens.push(e.clone());
        for _ in 1..n {
            e = tau.mul(&ring, &e).mul(&ring, &tau_inv);
            gens.push(e.clone());
        }
    }
    gens.push(tau);
    gens.push(tau_inv);
    let mut out = Module::new(&ring, n, Acting::Affine, x.basis().to_vec(), gens, &name)?;
    if let Some(l) = x.label() {
        let fam = match l.family {
            crate::labels::Family::P => Some(crate::labels::Family::Pa),
            _ => None,
        };
        if let Some(f) = fam {
            out = out.with_label(l.with_family(f));
        }
    }
    Ok(out.renamed(&name))
}

/// Matrix of (T_1⋯T_{n−1})^n on a TL_n-module: central, it acts on each
/// standard module by a scalar.
pub fn full_twist(x: &Module) -> Matrix {
    let ring = x.ring();
    let id = Matrix::identity(ring, x.dim());
    let mut eta = id.clone();
    for u in u_matrices(x) {
        eta = eta.mul(ring, &id.scale(&ring.v_pow(1)).add(&u.scale(&ring.v_pow(-1))));
    }
    let mut out = id;
    for _ in 0..x.n() {
        out = out.mul(ring, &eta);
    }
    out
}

fn scalar_of(m: &Matrix) -> Option<Scalar> {
    let c = m.get(0, 0).clone();
    let ok = m.entries().all(|(i, j, x)| if i == j { *x == c } else { x.is_zero() });
    ok.then_some(c)
}

/// The projective cover P_{n,k} of the standard module.
///
/// It equals S_{n,k} when k has no reflection k⁻ ≥ 0 (always for generic
/// q). Otherwise it is the summand of Ind P_{n−1,k−1} on which the full
/// twist has the eigenvalue it takes on S_{n,k}; the result must have
/// dimension dim S_{n,k} + dim S_{n,k⁻}.
pub fn build_p(ring: &Ring, n: u32, k: u32) -> Result<Module, FunctorError> {
    let p = QParam::from_ring(ring)?;
    let s = build_s(ring, n, k)?;
    let label = ModuleLabel::p(n, k);
    let Some(km) = p.minus(k as i64) else {
        return Ok(s.with_label(label).renamed(&label.to_string()));
    };
    if k == 0 {
        return Err(FunctorError::Construction("k = 0 has no reflection below".into()));
    }
    let prev = build_p(ring, n - 1, k - 1)?;
    let strand = build_s(ring, 1, 1)?;
    let ind = tl_fuse_explicit(&prev, &strand, MAX_FREE)?;
    let field = ind.ring().clone();
    let s_f = s.over_field()?;
    let lambda = scalar_of(&full_twist(&s_f)).ok_or_else(|| FunctorError::Construction(format!("full twist is not scalar on S({n},{k})")))?;
    let f = full_twist(&ind).sub(&Matrix::identity(&field, ind.dim()).scale(&lambda));
    let mut g = Matrix::identity(&field, ind.dim());
    for _ in 0..ind.dim() {
        g = g.mul(&field, &f);
    }
    let (_, ker) = nullspace(&field, &g);
    let sub = ind.submodule(&ker)?;
    let want = (crate::labels::dim_s(n as i64, k as i64) + crate::labels::dim_s(n as i64, km)) as usize;
    if sub.dim() != want {
        return Err(FunctorError::Construction(format!(
            "generalized eigenspace of the twist has dimension {} but P({n},{k}) needs {want}",
            sub.dim()
        )));
    }
    Ok(sub.with_label(label).renamed(&label.to_string()))
}

/// The concrete module behind a finite-dimensional label.
pub fn concrete_module(ring: &Ring, label: &ModuleLabel) -> Result<Module, FunctorError> {
    use crate::labels::Family;
    use crate::modcore::{build_i, build_l, build_m, build_w_cell};
    let (n, k) = (label.n, label.k);
    let z = || label.z.ok_or_else(|| FunctorError::Construction(format!("{label} needs a twist")));
    Ok(match label.family {
        Family::S => build_s(ring, n, k)?,
        Family::M => build_m(ring, n, k)?,
        Family::I => build_i(ring, n, k)?,
        Family::P => build_p(ring, n, k)?,
        Family::Pa => resphi_concrete(&build_p(ring, n, k)?)?,
        Family::Wcell => build_w_cell(ring, n, k, z()?)?,
        Family::L => build_l(ring, n, k, z()?)?,
        Family::W | Family::IndarS => {
            return Err(FunctorError::Construction(format!("{label} is infinite-dimensional; use a cell module instead")))
        }
    })
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum IsoVerdict {
    /// An invertible intertwiner, as sparse triplets.
    IsomorphicCertified { witness: Vec<(usize, usize, String)> },
    Distinguished { invariant: String },
    Inconclusive,
}

impl IsoVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, IsoVerdict::IsomorphicCertified { .. })
    }
}

fn generator_ranks(m: &Module) -> Vec<usize> {
    m.generators().iter().map(|(_, g)| rank(m.ring(), g).0).collect()
}

/// Compares cheap invariants, then looks for an invertible intertwiner.
pub fn isomorphism_signature(a: &Module, b: &Module) -> Result<IsoVerdict, FunctorError> {
    if a.n() != b.n() || a.acting() != b.acting() {
        return Ok(IsoVerdict::Distinguished { invariant: "different algebras".into() });
    }
    if a.dim() != b.dim() {
        return Ok(IsoVerdict::Distinguished { invariant: format!("dimension {} vs {}", a.dim(), b.dim()) });
    }
    let (af, bf) = (a.over_field()?, b.over_field()?);
    let (ra, rb) = (generator_ranks(&af), generator_ranks(&bf));
    if ra != rb {
        return Ok(IsoVerdict::Distinguished { invariant: format!("generator ranks {ra:?} vs {rb:?}") });
    }
    let (ea, eb) = (end_dim(&af)?, end_dim(&bf)?);
    if ea != eb {
        return Ok(IsoVerdict::Distinguished { invariant: format!("End dimension {ea} vs {eb}") });
    }
    let h = hom_space(&af, &bf)?;
    if h.dim == 0 && a.dim() > 0 {
        return Ok(IsoVerdict::Distinguished { invariant: "no nonzero morphism".into() });
    }
    Ok(match find_isomorphism(&af, &bf, 12)? {
        Some(f) => IsoVerdict::IsomorphicCertified { witness: f.triplets(af.ring()) },
        None => IsoVerdict::Inconclusive,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub module: String,
    pub dim: usize,
    pub pulled_back_dim: usize,
    pub affine_relations: bool,
    pub tau_invertible: bool,
    /// Forgetting τ on Resφ X returns X's matrices exactly.
    pub resar_resphi_literal: bool,
    pub failures: Vec<String>,
}

impl IdentityCheck {
    pub fn pass(&self) -> bool {
        self.dim == self.pulled_back_dim && self.affine_relations && self.tau_invertible && self.resar_resphi_literal
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HomSignature {
    pub source: String,
    pub target: String,
    pub regular: usize,
    pub pulled_back: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct FunctorReport {
    pub n: u32,
    pub modules: Vec<IdentityCheck>,
    /// dim Hom_{TL}(X, Y) against dim Hom_{aTL}(Resφ X, Resφ Y); equal
    /// because φ is onto.
    pub hom_signatures: Vec<HomSignature>,
}

impl FunctorReport {
    pub fn pass(&self) -> bool {
        self.modules.iter().all(IdentityCheck::pass) && self.hom_signatures.iter().all(|h| h.regular == h.pulled_back)
    }
}

pub fn functor_identity_check(n: u32, modules: &[Module]) -> Result<FunctorReport, FunctorError> {
    let mut checks = Vec::new();
    let mut pulled = Vec::new();
    for x in modules {
        if x.n() != n {
            return Err(FunctorError::Construction(format!("{} is not a TL_{n}-module", x.name())));
        }
        let y = resphi_concrete(x)?;
        let mut failures = Vec::new();
        let rel = y.relation_checks()?;
        failures.extend(rel.iter().filter(|c| !c.pass).map(|c| c.relation.clone()));
        let ring = y.ring();
        let tau = y.matrix(crate::algebra::Letter::Tau)?;
        let tau_inv = y.matrix(crate::algebra::Letter::TauInv)?;
        let id = Matrix::identity(ring, y.dim());
        let tau_invertible = tau.mul(ring, tau_inv) == id && tau_inv.mul(ring, tau) == id;
        let back = y.restrict_regular()?;
        let literal = u_matrices(&back) == u_matrices(x);
        checks.push(IdentityCheck {
            module: x.name().to_string(),
            dim: x.dim(),
            pulled_back_dim: y.dim(),
            affine_relations: failures.is_empty(),
            tau_invertible,
            resar_resphi_literal: literal,
            failures,
        });
        pulled.push(y);
    }
    let mut sigs = Vec::new();
    for (i, a) in modules.iter().enumerate() {
        for (j, b) in modules.iter().enumerate() {
            sigs.push(HomSignature {
                source: a.name().to_string(),
                target: b.name().to_string(),
                regular: hom_space(a, b)?.dim,
                pulled_back: hom_space(&pulled[i], &pulled[j])?.dim,
            });
        }
    }
    Ok(FunctorReport { n, modules: checks, hom_signatures: sigs })
}

#[cfg(test)]
mod tests;
