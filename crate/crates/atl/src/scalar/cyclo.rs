//! The cyclotomic field Q(ζ_N), elements in the power basis 1, ζ, …, ζ^{φ(N)−1}.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{fmt_rational, poly};

#[derive(Debug, PartialEq, Eq)]
pub struct CycField {
    pub n: u32,
    /// Monic Φ_N, lowest degree first.
    pub phi: Vec<i64>,
}

impl CycField {
    pub fn get(n: u32) -> Arc<CycField> {
        static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycField>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().unwrap();
        guard
            .entry(n)
            .or_insert_with(|| Arc::new(CycField { n, phi: poly::cyclotomic(n as u64) }))
            .clone()
    }

    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    fn reduce(&self, mut c: Vec<BigRational>) -> Vec<BigRational> {
        let d = self.degree();
        for i in (d..c.len()).rev() {
            let lead = std::mem::replace(&mut c[i], BigRational::zero());
            if lead.is_zero() {
                continue;
            }
            for (j, &pj) in self.phi[..d].iter().enumerate() {
                if pj != 0 {
                    c[i - d + j] -= &lead * BigInt::from(pj);
                }
            }
        }
        c.truncate(d);
        c.resize(d, BigRational::zero());
        c
    }
}

#[derive(Clone)]
pub struct CycElt {
    field: Arc<CycField>,
    c: Vec<BigRational>,
}

impl PartialEq for CycElt {
    fn eq(&self, other: &Self) -> bool {
        self.field.n == other.field.n && self.c == other.c
    }
}

impl Eq for CycElt {}

impl Hash for CycElt {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.n.hash(state);
        self.c.hash(state);
    }
}

impl CycElt {
    pub fn zero(field: &Arc<CycField>) -> Self {
        Self { field: field.clone(), c: vec![BigRational::zero(); field.degree()] }
    }

    pub fn from_rational(field: &Arc<CycField>, r: BigRational) -> Self {
        let mut out = Self::zero(field);
        out.c[0] = r;
        out
    }

    /// ζ^k for any integer k.
    pub fn zeta_pow(field: &Arc<CycField>, k: i64) -> Self {
        let n = field.n as i64;
        let k = k.rem_euclid(n) as usize;
        let mut c = vec![BigRational::zero(); k + 1];
        c[k] = BigRational::one();
        Self { field: field.clone(), c: field.reduce(c) }
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn n(&self) -> u32 {
        self.field.n
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(|x| x.is_zero())
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.field.n, other.field.n, "cyclotomic fields differ");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        Self { field: self.field.clone(), c: self.c.iter().zip(&other.c).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        Self { field: self.field.clone(), c: self.c.iter().zip(&other.c).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> Self {
        Self { field: self.field.clone(), c: self.c.iter().map(|a| -a).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let d = self.field.degree();
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Self { field: self.field.clone(), c: self.field.reduce(prod) }
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self { field: self.field.clone(), c: self.c.iter().map(|a| a * s).collect() }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let m = poly::from_ints(&self.field.phi);
        let inv = poly::inverse_mod(&self.c, &m)?;
        Some(Self { field: self.field.clone(), c: self.field.reduce(inv) })
    }

    /// Sum of absolute values of the coefficients, which bounds every
    /// complex embedding.
    pub fn l1(&self) -> BigRational {
        self.c.iter().fold(BigRational::zero(), |acc, x| acc + num_traits::Signed::abs(x))
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self.c.iter().map(fmt_rational).collect();
        format!("cyc({})[{}]", self.field.n, parts.join(","))
    }
}

impl fmt::Debug for CycElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn zeta_has_order_n() {
        for n in [3u32, 5, 8, 10, 12, 16] {
            let f = CycField::get(n);
            let z = CycElt::zeta_pow(&f, 1);
            let mut acc = CycElt::from_rational(&f, rat(1));
            for _ in 0..n {
                acc = acc.mul(&z);
            }
            assert!(acc.is_one(), "n={n}");
            assert!(!CycElt::zeta_pow(&f, n as i64 / 2).is_one());
        }
    }

    #[test]
    fn inverse_is_exact() {
        let f = CycField::get(10);
        let x = CycElt::zeta_pow(&f, 1).add(&CycElt::from_rational(&f, rat(3)));
        assert!(x.mul(&x.inv().unwrap()).is_one());
    }
}
