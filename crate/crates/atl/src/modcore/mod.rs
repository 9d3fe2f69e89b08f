//! Finite-rank modules given by exact generator matrices.

mod cell;
mod induced;
mod peirce;
mod resar;

pub use cell::{
    build_i, build_l, build_m, build_s, build_w_cell, build_w_free, build_w_twisted, gram_matrix, regular_gram, specialize_free,
    GramData,
};
pub use induced::{IndarBasis, InducedStandard, IndarReport};
pub use peirce::{peirce_count_check, PeirceReport};
pub use resar::{resar_filtration, ResarStratum};

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, Letter, RelationCheck, Word};
use crate::diagram::DiagramError;
use crate::labels::ModuleLabel;
use crate::linalg::{rref, Matrix};
use crate::scalar::{Ring, Scalar, ScalarError};

#[derive(Debug, Error)]
pub enum ModuleError {
    #[error("n = {0} and k = {1} must satisfy 0 ≤ k ≤ n with k ≡ n mod 2")]
    Parity(u32, u32),
    #[error("the twist z must be invertible")]
    ZeroTwist,
    #[error("wrong ring: {0}")]
    RingKind(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{0} does not act on this module")]
    Generator(String),
    #[error("subspace is not invariant under {0}")]
    NotInvariant(String),
    #[error("modules act on different algebras or sizes")]
    Incompatible,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Which algebra acts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Acting {
    /// aTL_n, generated by e_0, …, e_{n−1}, τ, τ⁻¹.
    Affine,
    /// TL_n, generated by u_1, …, u_{n−1}.
    Regular,
}

/// The generating letters of the acting algebra.
pub fn generator_letters(acting: Acting, n: u32) -> Vec<Letter> {
    match acting {
        Acting::Affine => {
            let mut out: Vec<Letter> = if n >= 2 { (0..n as i64).map(Letter::E).collect() } else { Vec::new() };
            out.push(Letter::Tau);
            out.push(Letter::TauInv);
            out
        }
        Acting::Regular => (1..n).map(Letter::U).collect(),
    }
}

/// A module with a chosen basis; column j of a generator matrix is the
/// image of basis vector j.
#[derive(Clone, Debug)]
pub struct Module {
    ring: Ring,
    n: u32,
    acting: Acting,
    basis: Vec<String>,
    gens: Vec<(Letter, Matrix)>,
    label: Option<ModuleLabel>,
    name: String,
}

impl Module {
    /// `gens` must list the matrices of [`generator_letters`] in order.
    pub fn new(ring: &Ring, n: u32, acting: Acting, basis: Vec<String>, gens: Vec<Matrix>, name: &str) -> Result<Module, ModuleError> {
        let letters = generator_letters(acting, n);
        if letters.len() != gens.len() {
            return Err(ModuleError::Incompatible);
        }
        let d = basis.len();
        if gens.iter().any(|m| m.rows() != d || m.cols() != d) {
            return Err(ModuleError::Incompatible);
        }
        Ok(Module {
            ring: ring.clone(),
            n,
            acting,
            basis,
            gens: letters.into_iter().zip(gens).collect(),
            label: None,
            name: name.to_string(),
        })
    }

    pub fn zero(ring: &Ring, n: u32, acting: Acting) -> Module {
        let gens = generator_letters(acting, n).iter().map(|_| Matrix::zeros(ring, 0, 0)).collect();
        Module::new(ring, n, acting, Vec::new(), gens, "0").unwrap()
    }

    pub fn with_label(mut self, label: ModuleLabel) -> Module {
        self.name = label.to_string();
        self.label = Some(label);
        self
    }

    pub fn renamed(mut self, name: &str) -> Module {
        self.name = name.to_string();
        self
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn acting(&self) -> Acting {
        self.acting
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn label(&self) -> Option<ModuleLabel> {
        self.label
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[(Letter, Matrix)] {
        &self.gens
    }

    /// Matrix of one letter. On affine modules u_i is read as e_i; on
    /// regular modules e_i (1 ≤ i ≤ n−1) is read as u_i.
    pub fn matrix(&self, l: Letter) -> Result<&Matrix, ModuleError> {
        let want = match (self.acting, l) {
            (Acting::Affine, Letter::E(i)) => Letter::E(i.rem_euclid(self.n.max(1) as i64)),
            (Acting::Affine, Letter::U(i)) => Letter::E(i as i64),
            (Acting::Regular, Letter::E(i)) if i >= 1 && i < self.n as i64 => Letter::U(i as u32),
            (_, other) => other,
        };
        self.gens.iter().find(|(g, _)| *g == want).map(|(_, m)| m).ok_or(ModuleError::Generator(l.to_string()))
    }

    /// Matrix of a word; letters act right to left, so the word `a b` is
    /// the matrix product A·B.
    pub fn word_matrix(&self, w: &Word) -> Result<Matrix, ModuleError> {
        let mut acc = Matrix::identity(&self.ring, self.dim());
        for &l in w.letters() {
            acc = acc.mul(&self.ring, self.matrix(l)?);
        }
        Ok(acc)
    }

    /// Matrix of a linear combination of words.
    pub fn combination_matrix(&self, terms: &[(Scalar, Word)]) -> Result<Matrix, ModuleError> {
        let mut acc = Matrix::zeros(&self.ring, self.dim(), self.dim());
        for (c, w) in terms {
            acc = acc.add(&self.word_matrix(w)?.scale(c));
        }
        Ok(acc)
    }

    /// Every defining relation of the acting algebra as a matrix identity.
    pub fn relation_checks(&self) -> Result<Vec<RelationCheck>, ModuleError> {
        let (ring, n) = (&self.ring, self.n);
        let mut out = Vec::new();
        let beta = ring.beta();
        match self.acting {
            Acting::Affine => {
                for (name, a, b) in crate::algebra::affine_relations(n) {
                    out.push(check(&name, &self.word_matrix(&a)?, &self.word_matrix(&b)?));
                }
                if n >= 2 {
                    let tn = self.word_matrix(&Word::new(n, vec![Letter::Tau; n as usize])?)?;
                    for i in 0..n as i64 {
                        let e = self.matrix(Letter::E(i))?;
                        out.push(check(&format!("e{i}² = β e{i}"), &e.mul(ring, e), &e.scale(&beta)));
                        out.push(check(&format!("τ^n e{i} = e{i} τ^n"), &tn.mul(ring, e), &e.mul(ring, &tn)));
                    }
                }
            }
            Acting::Regular => {
                for i in 1..n {
                    let u = self.matrix(Letter::U(i))?;
                    out.push(check(&format!("u{i}² = β u{i}"), &u.mul(ring, u), &u.scale(&beta)));
                    for j in 1..n {
                        let v = self.matrix(Letter::U(j))?;
                        if i.abs_diff(j) == 1 {
                            out.push(check(&format!("u{i} u{j} u{i} = u{i}"), &u.mul(ring, v).mul(ring, u), u));
                        } else if j > i + 1 {
                            out.push(check(&format!("u{i} u{j} = u{j} u{i}"), &u.mul(ring, v), &v.mul(ring, u)));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn relations_hold(&self) -> Result<bool, ModuleError> {
        Ok(self.relation_checks()?.iter().all(|c| c.pass))
    }

    /// Forget τ: the TL_n-module with u_i acting as e_i.
    pub fn restrict_regular(&self) -> Result<Module, ModuleError> {
        if self.acting != Acting::Affine {
            return Err(ModuleError::Incompatible);
        }
        let gens = (1..self.n).map(|i| self.matrix(Letter::E(i as i64)).cloned()).collect::<Result<_, _>>()?;
        Module::new(&self.ring, self.n, Acting::Regular, self.basis.clone(), gens, &format!("Resar {}", self.name))
    }

    pub fn direct_sum(&self, other: &Module) -> Result<Module, ModuleError> {
        self.ring.check_same(&other.ring)?;
        if self.n != other.n || self.acting != other.acting {
            return Err(ModuleError::Incompatible);
        }
        let (a, b) = (self.dim(), other.dim());
        let gens = self
            .gens
            .iter()
            .zip(&other.gens)
            .map(|((_, x), (_, y))| {
                let mut m = Matrix::zeros(&self.ring, a + b, a + b);
                for (i, j, s) in x.entries() {
                    m.set(i, j, s.clone());
                }
                for (i, j, s) in y.entries() {
                    m.set(a + i, a + j, s.clone());
                }
                m
            })
            .collect();
        let basis = self.basis.iter().cloned().chain(other.basis.iter().cloned()).collect();
        Module::new(&self.ring, self.n, self.acting, basis, gens, &format!("{} ⊕ {}", self.name, other.name))
    }

    /// Apply a ring map to every matrix entry.
    pub fn map_scalars(&self, target: &Ring, f: impl Fn(&Scalar) -> Result<Scalar, ModuleError>) -> Result<Module, ModuleError> {
        let mut gens = Vec::with_capacity(self.gens.len());
        for (_, m) in &self.gens {
            let mut out = Matrix::zeros(target, m.rows(), m.cols());
            for (i, j, s) in m.entries() {
                if !s.is_zero() {
                    out.set(i, j, f(s)?);
                }
            }
            gens.push(out);
        }
        let mut out = Module::new(target, self.n, self.acting, self.basis.clone(), gens, &self.name)?;
        out.label = self.label;
        Ok(out)
    }

    /// Coordinates of the same module over the fraction field used by
    /// exact elimination (Q(v) for Laurent coefficients).
    pub fn over_field(&self) -> Result<Module, ModuleError> {
        if self.ring.is_field() {
            return Ok(self.clone());
        }
        if self.ring.x_role().is_some() {
            return Err(ModuleError::RingKind("specialize the second variable first".into()));
        }
        let f = Ring::parse("ratfunc")?;
        self.map_scalars(&f, |s| Ok(f.eval(s.as_laurent().expect("Laurent entry"))))
    }

    /// Smallest invariant subspace containing `vectors`, as echelon rows.
    pub fn submodule_closure(&self, vectors: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>, ModuleError> {
        let ring = &self.ring;
        if !ring.is_field() {
            return Err(ModuleError::RingKind("closures are computed over a field; use over_field".into()));
        }
        let d = self.dim();
        let mut rows: Vec<Vec<Scalar>> = vectors.to_vec();
        let mut basis = echelon(ring, d, &rows);
        loop {
            for v in basis.clone() {
                for (_, g) in &self.gens {
                    rows.push(g.apply(ring, &v));
                }
            }
            let next = echelon(ring, d, &rows);
            if next.len() == basis.len() {
                return Ok(next);
            }
            basis = next;
            rows = basis.clone();
        }
    }

    /// M / U for an invariant subspace U spanned by `sub`. The quotient
    /// basis is the set of non-pivot coordinates of U's echelon form.
    pub fn quotient(&self, sub: &[Vec<Scalar>]) -> Result<Module, ModuleError> {
        let m = self.over_field()?;
        let ring = &m.ring;
        let d = m.dim();
        let rows = echelon(ring, d, sub);
        let pivots: Vec<usize> = rows.iter().map(|r| r.iter().position(|x| !x.is_zero()).unwrap()).collect();
        let keep: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
        let reduce = |mut v: Vec<Scalar>| {
            for (r, &p) in rows.iter().zip(&pivots) {
                let f = v[p].clone();
                if !f.is_zero() {
                    for (x, y) in v.iter_mut().zip(r) {
                        if !y.is_zero() {
                            *x = &*x - &(&f * y);
                        }
                    }
                }
            }
            v
        };
        let mut gens = Vec::new();
        for (l, g) in &m.gens {
            let mut out = Matrix::zeros(ring, keep.len(), keep.len());
            for (jj, &j) in keep.iter().enumerate() {
                let img = reduce(g.column(j));
                for &p in &pivots {
                    if !img[p].is_zero() {
                        return Err(ModuleError::NotInvariant(l.to_string()));
                    }
                }
                for (ii, &i) in keep.iter().enumerate() {
                    out.set(ii, jj, img[i].clone());
                }
            }
            gens.push(out);
        }
        // invariance of U itself
        for (l, g) in &m.gens {
            for r in &rows {
                let img = reduce(g.apply(ring, r));
                if img.iter().any(|x| !x.is_zero()) {
                    return Err(ModuleError::NotInvariant(l.to_string()));
                }
            }
        }
        let basis = keep.iter().map(|&i| m.basis[i].clone()).collect();
        Module::new(ring, m.n, m.acting, basis, gens, &format!("{} / U", m.name))
    }

    /// The module spanned by invariant vectors `sub`, in the basis given by
    /// their echelon form.
    pub fn submodule(&self, sub: &[Vec<Scalar>]) -> Result<Module, ModuleError> {
        let m = self.over_field()?;
        let ring = &m.ring;
        let rows = echelon(ring, m.dim(), sub);
        let pivots: Vec<usize> = rows.iter().map(|r| r.iter().position(|x| !x.is_zero()).unwrap()).collect();
        let mut gens = Vec::new();
        for (l, g) in &m.gens {
            let mut out = Matrix::zeros(ring, rows.len(), rows.len());
            for (j, r) in rows.iter().enumerate() {
                let img = g.apply(ring, r);
                // rows are reduced, so coordinates are read at the pivots
                let mut rest = img.clone();
                for (i, (row, &p)) in rows.iter().zip(&pivots).enumerate() {
                    let c = img[p].clone();
                    out.set(i, j, c.clone());
                    if !c.is_zero() {
                        for (x, y) in rest.iter_mut().zip(row) {
                            *x = &*x - &(&c * y);
                        }
                    }
                }
                if rest.iter().any(|x| !x.is_zero()) {
                    return Err(ModuleError::NotInvariant(l.to_string()));
                }
            }
            gens.push(out);
        }
        let basis = (0..rows.len()).map(|i| format!("u{i}")).collect();
        Module::new(ring, m.n, m.acting, basis, gens, &format!("U ⊂ {}", m.name))
    }
}

fn check(name: &str, a: &Matrix, b: &Matrix) -> RelationCheck {
    RelationCheck { relation: name.to_string(), pass: a == b }
}

/// Nonzero rows of the reduced echelon form of `rows`.
pub fn echelon(ring: &Ring, cols: usize, rows: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(ring, cols, rows.to_vec());
    let (_, e) = rref(ring, &m);
    (0..e.pivots.len()).map(|i| e.matrix.row(i).to_vec()).collect()
}

#[cfg(test)]
mod tests;
