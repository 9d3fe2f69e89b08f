//! The field Q(v) as reduced fractions of polynomials.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::laurent::LaurentV;
use super::poly::{self, QPoly};

/// `num/den` with gcd(num, den) = 1 and `den` monic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: QPoly,
    den: QPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        Self { num: Vec::new(), den: vec![BigRational::one()] }
    }

    pub fn one() -> Self {
        Self::from_poly(vec![BigRational::one()])
    }

    pub fn from_rational(c: BigRational) -> Self {
        let mut p = vec![c];
        poly::trim(&mut p);
        Self::from_poly(p)
    }

    pub fn from_poly(num: QPoly) -> Self {
        Self { num, den: vec![BigRational::one()] }
    }

    pub fn new(num: QPoly, den: QPoly) -> Self {
        let mut num = num;
        let mut den = den;
        poly::trim(&mut num);
        poly::trim(&mut den);
        assert!(!den.is_empty(), "zero denominator");
        if num.is_empty() {
            return Self::zero();
        }
        let g = poly::gcd(&num, &den);
        if g.len() > 1 {
            num = poly::divrem(&num, &g).0;
            den = poly::divrem(&den, &g).0;
        }
        let lead = den.last().unwrap().clone();
        if !lead.is_one() {
            let inv = lead.recip();
            num = poly::scale(&num, &inv);
            den = poly::scale(&den, &inv);
        }
        Self { num, den }
    }

    pub fn from_laurent(p: &LaurentV) -> Self {
        let Some(lo) = p.min_exp() else {
            return Self::zero();
        };
        let shift = lo.min(0);
        let hi = p.max_exp().unwrap();
        let mut num = vec![BigRational::zero(); (hi - shift + 1) as usize];
        for (e, c) in p.terms() {
            num[(e - shift) as usize] = c.clone();
        }
        if shift < 0 {
            let mut den = vec![BigRational::zero(); (-shift + 1) as usize];
            den[(-shift) as usize] = BigRational::one();
            Self::new(num, den)
        } else {
            Self::from_poly(num)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.den.len() == 1 && self.num.len() == 1 && self.num[0].is_one()
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::new(poly::add(&self.num, &other.num), self.den.clone());
        }
        Self::new(
            poly::add(&poly::mul(&self.num, &other.den), &poly::mul(&other.num, &self.den)),
            poly::mul(&self.den, &other.den),
        )
    }

    pub fn neg(&self) -> Self {
        Self { num: poly::neg(&self.num), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::new(poly::mul(&self.num, &other.num), poly::mul(&self.den, &other.den))
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::new(self.den.clone(), self.num.clone()))
    }

    /// Value at a rational point, if the denominator does not vanish there.
    pub fn eval(&self, at: &BigRational) -> Option<BigRational> {
        let ev = |p: &QPoly| p.iter().rev().fold(BigRational::zero(), |acc, c| acc * at + c);
        let d = ev(&self.den);
        if d.is_zero() {
            None
        } else {
            Some(ev(&self.num) / d)
        }
    }

    pub fn render(&self) -> String {
        if self.den.len() == 1 {
            poly::render(&self.num, "v")
        } else {
            format!("({})/({})", poly::render(&self.num, "v"), poly::render(&self.den, "v"))
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}
