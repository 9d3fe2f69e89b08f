//! Laurent polynomials in v (and in v, x) with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{fmt_rational, parse_rational, ScalarError};

/// Sparse Laurent polynomial in v; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentV {
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentV {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigRational::one(), 0)
    }

    pub fn monomial(c: BigRational, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    pub fn int(c: i64) -> Self {
        Self::monomial(BigRational::from_integer(BigInt::from(c)), 0)
    }

    pub fn v_pow(e: i64) -> Self {
        Self::monomial(BigRational::one(), e)
    }

    pub fn signed_v_pow(sign: i64, e: i64) -> Self {
        Self::monomial(BigRational::from_integer(BigInt::from(sign)), e)
    }

    /// β = q + q⁻¹ = −v² − v⁻².
    pub fn beta() -> Self {
        Self::signed_v_pow(-1, 2).add(&Self::signed_v_pow(-1, -2))
    }

    pub fn from_terms(it: impl IntoIterator<Item = (i64, BigRational)>) -> Self {
        let mut out = Self::zero();
        for (e, c) in it {
            out.add_term(e, c);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> BigRational {
        self.terms.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, e: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect() }
    }

    pub fn shift(&self, by: i64) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + by, c.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitution v ↦ v^k (k may be negative).
    pub fn substitute_power(&self, k: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (e * k, c.clone())))
    }

    /// Units of Q[v, v⁻¹] are nonzero rational multiples of monomials.
    pub fn as_unit(&self) -> Option<(BigRational, i64)> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            Some((c.clone(), *e))
        } else {
            None
        }
    }

    /// Canonical text, e.g. `-1*v^2 + -1*v^-2`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .rev()
            .map(|(e, c)| format!("{}*v^{}", fmt_rational(c), e))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn parse(s: &str) -> Result<Self, ScalarError> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        for part in s.split(" + ") {
            let (c, rest) = part
                .trim()
                .split_once("*v^")
                .ok_or_else(|| ScalarError::Parse(part.to_string()))?;
            let e: i64 = rest.trim().parse().map_err(|_| ScalarError::Parse(part.to_string()))?;
            out.add_term(e, parse_rational(c)?);
        }
        Ok(out)
    }
}

impl fmt::Debug for LaurentV {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Display for LaurentV {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// What the second variable of a [`LaurentVX`] stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum XRole {
    /// The twist parameter z of a cell module.
    Twist,
    /// Right winding τ (or the loop variable on the zero-defect sector).
    Winding,
}

/// Laurent polynomial in v and x.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentVX {
    terms: BTreeMap<(i64, i64), BigRational>,
}

impl LaurentVX {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigRational::one(), 0, 0)
    }

    pub fn monomial(c: BigRational, ev: i64, ex: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((ev, ex), c);
        }
        Self { terms }
    }

    pub fn x_pow(e: i64) -> Self {
        Self::monomial(BigRational::one(), 0, e)
    }

    pub fn from_v(p: &LaurentV) -> Self {
        Self { terms: p.terms().map(|(e, c)| ((e, 0), c.clone())).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &BigRational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    fn add_term(&mut self, e: (i64, i64), c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                out.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }

    /// Substitute x ↦ `x_val`, leaving a Laurent polynomial in v.
    pub fn eval_x(&self, x_val: &LaurentV) -> LaurentV {
        let mut out = LaurentV::zero();
        let mut cache: BTreeMap<i64, LaurentV> = BTreeMap::new();
        for ((ev, ex), c) in &self.terms {
            let xp = cache.entry(*ex).or_insert_with(|| {
                if *ex >= 0 {
                    x_val.pow(*ex as u32)
                } else {
                    let (uc, ue) = x_val.as_unit().expect("negative power of a non-unit");
                    LaurentV::monomial(uc.recip(), -ue).pow((-*ex) as u32)
                }
            });
            out = out.add(&xp.shift(*ev).scale(c));
        }
        out
    }

    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .rev()
            .map(|((ev, ex), c)| format!("{}*v^{}*{}^{}", fmt_rational(c), ev, var, ex))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Debug for LaurentVX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x"))
    }
}
