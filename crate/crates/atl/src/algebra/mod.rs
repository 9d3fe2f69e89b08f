//! Linear combinations of diagrams, generator words, the braiding and the
//! morphism φ : aTL_n → TL_n.

mod appendix;
mod braid;
mod phi;
mod relations;
mod word;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::diagram::{Diagram, DiagramError};
use crate::scalar::{Ring, Scalar, ScalarError};

pub use appendix::AppendixElements;
pub use braid::{eta, eta_inv, eta_second_form, t, t_inv};
pub use phi::{regular_words, Phi};
pub use relations::{affine_relations, eta_naturality_check, relation_suite, RelationCheck, Suite, SuiteReport};
pub use word::{Letter, Word};

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("cannot combine a ({0},{1}) element with a ({2},{3}) element")]
    Shape(u32, u32, u32, u32),
    #[error("bad word {0:?}")]
    Word(String),
}

/// Element of Hom(right, left): a finite combination of (left, right)-diagrams.
#[derive(Clone, PartialEq, Eq)]
pub struct Element {
    ring: Ring,
    left: u32,
    right: u32,
    terms: BTreeMap<Diagram, Scalar>,
}

impl Element {
    pub fn zero(ring: &Ring, left: u32, right: u32) -> Self {
        Element { ring: ring.clone(), left, right, terms: BTreeMap::new() }
    }

    pub fn from_diagram(ring: &Ring, d: Diagram) -> Self {
        Self::term(ring, d, ring.one())
    }

    pub fn term(ring: &Ring, d: Diagram, c: Scalar) -> Self {
        let mut e = Self::zero(ring, d.left(), d.right());
        e.add_term(d, c);
        e
    }

    pub fn identity(ring: &Ring, n: u32) -> Self {
        Self::from_diagram(ring, Diagram::identity(n))
    }

    pub fn scalar(ring: &Ring, n: u32, c: Scalar) -> Self {
        Self::term(ring, Diagram::identity(n), c)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn left(&self) -> u32 {
        self.left
    }

    pub fn right(&self) -> u32 {
        self.right
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Diagram, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, d: &Diagram) -> Scalar {
        self.terms.get(d).cloned().unwrap_or_else(|| self.ring.zero())
    }

    /// Every term is a rank-zero diagram.
    pub fn is_regular(&self) -> bool {
        self.terms.keys().all(Diagram::is_regular)
    }

    pub fn add_term(&mut self, d: Diagram, c: Scalar) {
        debug_assert_eq!((d.left(), d.right()), (self.left, self.right));
        if c.is_zero() {
            return;
        }
        match self.terms.entry(d) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check(&self, other: &Element, same_shape: bool) -> Result<(), AlgebraError> {
        self.ring.check_same(&other.ring)?;
        let ok = if same_shape {
            (self.left, self.right) == (other.left, other.right)
        } else {
            self.right == other.left
        };
        if ok {
            Ok(())
        } else {
            Err(AlgebraError::Shape(self.left, self.right, other.left, other.right))
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.check(other, true)?;
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Element {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -&*c;
        }
        out
    }

    pub fn sub(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        if s.is_zero() {
            return Self::zero(&self.ring, self.left, self.right);
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = &*c * s;
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.check(other, false)?;
        let mut out = Self::zero(&self.ring, self.left, other.right);
        let beta = self.ring.beta();
        let mut beta_pows = vec![self.ring.one()];
        for (db, cb) in &self.terms {
            for (da, ca) in &other.terms {
                let (d, loops) = Diagram::compose(db, da)?;
                while beta_pows.len() <= loops as usize {
                    let next = beta_pows.last().unwrap() * &beta;
                    beta_pows.push(next);
                }
                let c = &(cb * ca) * &beta_pows[loops as usize];
                out.add_term(d, c);
            }
        }
        Ok(out)
    }

    /// Product of a chain of composable elements, `fs[0] ∘ fs[1] ∘ …`.
    pub fn product<'a>(ring: &Ring, n: u32, fs: impl IntoIterator<Item = &'a Element>) -> Result<Element, AlgebraError> {
        let mut acc = Self::identity(ring, n);
        for f in fs {
            acc = acc.compose(f)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, k: u32) -> Result<Element, AlgebraError> {
        let mut acc = Self::identity(&self.ring, self.left);
        for _ in 0..k {
            acc = acc.compose(self)?;
        }
        Ok(acc)
    }

    /// `self ⊗ other` (rank-zero terms only), self on top.
    pub fn tensor(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.ring.check_same(&other.ring)?;
        let mut out = Self::zero(&self.ring, self.left + other.left, self.right + other.right);
        for (df, cf) in &self.terms {
            for (dg, cg) in &other.terms {
                out.add_term(Diagram::tensor(df, dg)?, cf * cg);
            }
        }
        Ok(out)
    }

    pub fn involution(&self) -> Element {
        let mut out = Self::zero(&self.ring, self.right, self.left);
        for (d, c) in &self.terms {
            out.add_term(d.involution(), c.clone());
        }
        out
    }

    /// Commutator `self ∘ other − other ∘ self`.
    pub fn commutator(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.compose(other)?.sub(&other.compose(self)?)
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(d, c)| format!("({}) {}", self.ring.render(c), d.render()))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
