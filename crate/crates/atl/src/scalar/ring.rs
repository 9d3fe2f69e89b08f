//! Ring handles and the scalar values they own.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::cyclo::{CycElt, CycField};
use super::laurent::{LaurentV, LaurentVX, XRole};
use super::ratfunc::RatFunc;
use super::{fmt_rational, parse_rational, rat, ScalarError};

/// Serializable description of a coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RingDescriptor {
    /// Q[v, v⁻¹] with v formal.
    Generic,
    /// Q[v^±, x^±] where x is a twist z or the winding t.
    GenericX { role: XRole },
    /// The fraction field Q(v).
    RatFunc,
    /// Q with v specialized to a rational number (q = −v²).
    Instance { v: String },
    /// Q(ζ_N) with v = ζ_N^{v_exp}.
    Cyclotomic { n: u32, v_exp: u32 },
}

impl RingDescriptor {
    /// q = exp(iπe/ℓ), written through v = ζ_{4ℓ}^{e+ℓ}.
    pub fn root_of_unity(ell: u32, e: u32) -> Result<Self, ScalarError> {
        if ell < 2 {
            return Err(ScalarError::InvalidRing(format!("l = {ell} must be at least 2")));
        }
        let four_l = 4 * ell;
        let a = e + ell;
        let g = a.gcd(&four_l);
        let desc = RingDescriptor::Cyclotomic { n: four_l / g, v_exp: a / g };
        match cyclotomic_ell(four_l / g, a / g)? {
            l if l == ell => Ok(desc),
            l => Err(ScalarError::InvalidRing(format!(
                "v-image gives a root of unity with l = {l}, requested l = {ell}"
            ))),
        }
    }
}

/// ℓ for q = −ζ_N^{2a}: the least ℓ with q^{2ℓ} = 1.
fn cyclotomic_ell(n: u32, a: u32) -> Result<u32, ScalarError> {
    if n < 3 {
        return Err(ScalarError::InvalidRing(format!("N = {n} must be at least 3")));
    }
    // q = exp(2πi (4a + N) / 2N)
    let num = (4 * a as u64 + n as u64) % (2 * n as u64);
    let d = (2 * n as u64) / num.gcd(&(2 * n as u64));
    if d <= 2 {
        return Err(ScalarError::ExcludedQ);
    }
    Ok(if d.is_multiple_of(2) { (d / 2) as u32 } else { d as u32 })
}

impl FromStr for RingDescriptor {
    type Err = ScalarError;

    /// `generic`, `generic-z`, `generic-t`, `ratfunc`, `inst=2`, `l=5`,
    /// `l=3,e=2`, `cyc=10:1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ScalarError::InvalidRing(s.to_string());
        match s {
            "generic" => return Ok(Self::Generic),
            "generic-z" => return Ok(Self::GenericX { role: XRole::Twist }),
            "generic-t" => return Ok(Self::GenericX { role: XRole::Winding }),
            "ratfunc" => return Ok(Self::RatFunc),
            _ => {}
        }
        if let Some(v) = s.strip_prefix("inst=") {
            let val = parse_rational(v)?;
            if val.is_zero() || val.abs().is_one() {
                return Err(ScalarError::ExcludedQ);
            }
            return Ok(Self::Instance { v: fmt_rational(&val) });
        }
        if let Some(rest) = s.strip_prefix("cyc=") {
            let (n, a) = rest.split_once(':').ok_or_else(bad)?;
            let n: u32 = n.parse().map_err(|_| bad())?;
            let a: u32 = a.parse().map_err(|_| bad())?;
            cyclotomic_ell(n, a % n.max(1))?;
            return Ok(Self::Cyclotomic { n, v_exp: a % n });
        }
        if let Some(rest) = s.strip_prefix("l=") {
            let (l, e) = match rest.split_once(",e=") {
                Some((l, e)) => (l, e.parse().map_err(|_| bad())?),
                None => (rest, 1),
            };
            return Self::root_of_unity(l.parse().map_err(|_| bad())?, e);
        }
        Err(bad())
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Generic => write!(f, "generic"),
            Self::GenericX { role: XRole::Twist } => write!(f, "generic-z"),
            Self::GenericX { role: XRole::Winding } => write!(f, "generic-t"),
            Self::RatFunc => write!(f, "ratfunc"),
            Self::Instance { v } => write!(f, "inst={v}"),
            Self::Cyclotomic { n, v_exp } => write!(f, "cyc={n}:{v_exp}"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum RingKind {
    GenericV,
    GenericVX(XRole),
    RatFunc,
    Rational { v: BigRational },
    Cyclotomic { field: Arc<CycField>, v_exp: u32, ell: u32 },
}

/// An exact coefficient value. The variant always matches the owning ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Laurent(LaurentV),
    LaurentX(LaurentVX),
    Frac(RatFunc),
    Rational(BigRational),
    Cyc(CycElt),
}

struct RingInner {
    desc: RingDescriptor,
    kind: RingKind,
    zero: Scalar,
    one: Scalar,
    v: Scalar,
    v_inv: Scalar,
}

/// Shared handle on a coefficient ring. Handles compare by descriptor.
#[derive(Clone)]
pub struct Ring {
    inner: Arc<RingInner>,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.desc == other.inner.desc
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({})", self.inner.desc)
    }
}

impl Ring {
    pub fn new(desc: RingDescriptor) -> Result<Ring, ScalarError> {
        let kind = match &desc {
            RingDescriptor::Generic => RingKind::GenericV,
            RingDescriptor::GenericX { role } => RingKind::GenericVX(*role),
            RingDescriptor::RatFunc => RingKind::RatFunc,
            RingDescriptor::Instance { v } => {
                let v = parse_rational(v)?;
                if v.is_zero() || v.abs().is_one() {
                    return Err(ScalarError::ExcludedQ);
                }
                RingKind::Rational { v }
            }
            RingDescriptor::Cyclotomic { n, v_exp } => {
                let ell = cyclotomic_ell(*n, *v_exp)?;
                RingKind::Cyclotomic { field: CycField::get(*n), v_exp: *v_exp, ell }
            }
        };
        let (zero, one, v, v_inv) = match &kind {
            RingKind::GenericV => (
                Scalar::Laurent(LaurentV::zero()),
                Scalar::Laurent(LaurentV::one()),
                Scalar::Laurent(LaurentV::v_pow(1)),
                Scalar::Laurent(LaurentV::v_pow(-1)),
            ),
            RingKind::GenericVX(_) => (
                Scalar::LaurentX(LaurentVX::zero()),
                Scalar::LaurentX(LaurentVX::one()),
                Scalar::LaurentX(LaurentVX::from_v(&LaurentV::v_pow(1))),
                Scalar::LaurentX(LaurentVX::from_v(&LaurentV::v_pow(-1))),
            ),
            RingKind::RatFunc => (
                Scalar::Frac(RatFunc::zero()),
                Scalar::Frac(RatFunc::one()),
                Scalar::Frac(RatFunc::from_laurent(&LaurentV::v_pow(1))),
                Scalar::Frac(RatFunc::from_laurent(&LaurentV::v_pow(-1))),
            ),
            RingKind::Rational { v } => (
                Scalar::Rational(BigRational::zero()),
                Scalar::Rational(BigRational::one()),
                Scalar::Rational(v.clone()),
                Scalar::Rational(v.recip()),
            ),
            RingKind::Cyclotomic { field, v_exp, .. } => (
                Scalar::Cyc(CycElt::zero(field)),
                Scalar::Cyc(CycElt::from_rational(field, BigRational::one())),
                Scalar::Cyc(CycElt::zeta_pow(field, *v_exp as i64)),
                Scalar::Cyc(CycElt::zeta_pow(field, -(*v_exp as i64))),
            ),
        };
        Ok(Ring { inner: Arc::new(RingInner { desc, kind, zero, one, v, v_inv }) })
    }

    pub fn generic() -> Ring {
        Ring::new(RingDescriptor::Generic).unwrap()
    }

    pub fn generic_x(role: XRole) -> Ring {
        Ring::new(RingDescriptor::GenericX { role }).unwrap()
    }

    pub fn root_of_unity(ell: u32) -> Result<Ring, ScalarError> {
        Ring::new(RingDescriptor::root_of_unity(ell, 1)?)
    }

    pub fn parse(s: &str) -> Result<Ring, ScalarError> {
        Ring::new(s.parse()?)
    }

    pub fn descriptor(&self) -> &RingDescriptor {
        &self.inner.desc
    }

    pub fn kind(&self) -> &RingKind {
        &self.inner.kind
    }

    /// ℓ when q is a root of unity, `None` when q is generic.
    pub fn ell(&self) -> Option<u32> {
        match &self.inner.kind {
            RingKind::Cyclotomic { ell, .. } => Some(*ell),
            _ => None,
        }
    }

    /// Multiplicative order of v when it is a root of unity.
    pub fn v_order(&self) -> Option<u64> {
        match &self.inner.kind {
            RingKind::Cyclotomic { field, v_exp, .. } => {
                let n = field.n as u64;
                Some(n / n.gcd(&(*v_exp as u64)))
            }
            RingKind::Rational { v } if v.is_one() => Some(1),
            RingKind::Rational { v } if (-v).is_one() => Some(2),
            _ => None,
        }
    }

    pub fn is_generic_q(&self) -> bool {
        self.ell().is_none()
    }

    pub fn is_field(&self) -> bool {
        !matches!(self.inner.kind, RingKind::GenericV | RingKind::GenericVX(_))
    }

    pub fn x_role(&self) -> Option<XRole> {
        match self.inner.kind {
            RingKind::GenericVX(r) => Some(r),
            _ => None,
        }
    }

    pub fn check_same(&self, other: &Ring) -> Result<(), ScalarError> {
        if self == other {
            Ok(())
        } else {
            Err(ScalarError::RingMismatch(self.inner.desc.to_string(), other.inner.desc.to_string()))
        }
    }

    pub fn zero(&self) -> Scalar {
        self.inner.zero.clone()
    }

    pub fn one(&self) -> Scalar {
        self.inner.one.clone()
    }

    pub fn rational(&self, c: BigRational) -> Scalar {
        match &self.inner.kind {
            RingKind::GenericV => Scalar::Laurent(LaurentV::monomial(c, 0)),
            RingKind::GenericVX(_) => Scalar::LaurentX(LaurentVX::monomial(c, 0, 0)),
            RingKind::RatFunc => Scalar::Frac(RatFunc::from_rational(c)),
            RingKind::Rational { .. } => Scalar::Rational(c),
            RingKind::Cyclotomic { field, .. } => Scalar::Cyc(CycElt::from_rational(field, c)),
        }
    }

    pub fn int(&self, c: i64) -> Scalar {
        self.rational(rat(c))
    }

    pub fn v_pow(&self, e: i64) -> Scalar {
        match &self.inner.kind {
            RingKind::GenericV => Scalar::Laurent(LaurentV::v_pow(e)),
            RingKind::GenericVX(_) => Scalar::LaurentX(LaurentVX::monomial(BigRational::one(), e, 0)),
            RingKind::Cyclotomic { field, v_exp, .. } => {
                Scalar::Cyc(CycElt::zeta_pow(field, *v_exp as i64 * e))
            }
            _ => {
                let base = if e >= 0 { &self.inner.v } else { &self.inner.v_inv };
                self.pow(base, e.unsigned_abs())
            }
        }
    }

    /// q = −v².
    pub fn q(&self) -> Scalar {
        -&self.v_pow(2)
    }

    /// β = q + q⁻¹.
    pub fn beta(&self) -> Scalar {
        -&(&self.v_pow(2) + &self.v_pow(-2))
    }

    /// The second variable of a `GenericX` ring.
    pub fn x_pow(&self, e: i64) -> Result<Scalar, ScalarError> {
        match self.inner.kind {
            RingKind::GenericVX(_) => Ok(Scalar::LaurentX(LaurentVX::x_pow(e))),
            _ => Err(ScalarError::MissingBinding("x")),
        }
    }

    pub fn pow(&self, base: &Scalar, k: u64) -> Scalar {
        let mut acc = self.one();
        let mut b = base.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &b;
            }
            k >>= 1;
            if k > 0 {
                b = &b * &b;
            }
        }
        acc
    }

    /// Integer power, negative exponents through the inverse.
    pub fn ipow(&self, base: &Scalar, k: i64) -> Result<Scalar, ScalarError> {
        if k >= 0 {
            Ok(self.pow(base, k as u64))
        } else {
            Ok(self.pow(&self.inv(base)?, k.unsigned_abs()))
        }
    }

    pub fn inv(&self, s: &Scalar) -> Result<Scalar, ScalarError> {
        match s {
            Scalar::Laurent(p) => {
                let (c, e) = p.as_unit().ok_or(ScalarError::NotInvertible)?;
                Ok(Scalar::Laurent(LaurentV::monomial(c.recip(), -e)))
            }
            Scalar::LaurentX(p) => {
                let mut it = p.terms();
                match (it.next(), it.next()) {
                    (Some(((ev, ex), c)), None) => {
                        Ok(Scalar::LaurentX(LaurentVX::monomial(c.recip(), -ev, -ex)))
                    }
                    _ => Err(ScalarError::NotInvertible),
                }
            }
            Scalar::Frac(f) => f.inv().map(Scalar::Frac).ok_or(ScalarError::NotInvertible),
            Scalar::Rational(r) => {
                if r.is_zero() {
                    Err(ScalarError::NotInvertible)
                } else {
                    Ok(Scalar::Rational(r.recip()))
                }
            }
            Scalar::Cyc(c) => c.inv().map(Scalar::Cyc).ok_or(ScalarError::NotInvertible),
        }
    }

    /// The evaluation homomorphism Q[v^±] → this ring.
    pub fn eval(&self, p: &LaurentV) -> Scalar {
        match &self.inner.kind {
            RingKind::GenericV => Scalar::Laurent(p.clone()),
            RingKind::GenericVX(_) => Scalar::LaurentX(LaurentVX::from_v(p)),
            RingKind::RatFunc => Scalar::Frac(RatFunc::from_laurent(p)),
            RingKind::Rational { v } => {
                let mut acc = BigRational::zero();
                for (e, c) in p.terms() {
                    acc += c * rational_pow(v, e);
                }
                Scalar::Rational(acc)
            }
            RingKind::Cyclotomic { field, v_exp, .. } => {
                let mut acc = CycElt::zero(field);
                for (e, c) in p.terms() {
                    acc = acc.add(&CycElt::zeta_pow(field, *v_exp as i64 * e).scale(c));
                }
                Scalar::Cyc(acc)
            }
        }
    }

    /// Evaluate a polynomial in (v, x) with x bound to `x_val`.
    pub fn eval_x(&self, p: &LaurentVX, x_val: &Scalar) -> Result<Scalar, ScalarError> {
        let mut acc = self.zero();
        for ((ev, ex), c) in p.terms() {
            let term = &(&self.v_pow(ev) * &self.ipow(x_val, ex)?) * &self.rational(c.clone());
            acc = &acc + &term;
        }
        Ok(acc)
    }

    pub fn render(&self, s: &Scalar) -> String {
        match (s, self.inner.kind.clone()) {
            (Scalar::LaurentX(p), RingKind::GenericVX(XRole::Twist)) => p.render("z"),
            (Scalar::LaurentX(p), _) => p.render("t"),
            _ => s.render(),
        }
    }
}

fn rational_pow(v: &BigRational, e: i64) -> BigRational {
    let base = if e >= 0 { v.clone() } else { v.recip() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Laurent(p) => p.is_zero(),
            Scalar::LaurentX(p) => p.is_zero(),
            Scalar::Frac(f) => f.is_zero(),
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Cyc(c) => c.is_zero(),
        }
    }

    pub fn render(&self) -> String {
        match self {
            Scalar::Laurent(p) => p.render(),
            Scalar::LaurentX(p) => p.render("x"),
            Scalar::Frac(f) => f.render(),
            Scalar::Rational(r) => fmt_rational(r),
            Scalar::Cyc(c) => c.render(),
        }
    }

    pub fn as_laurent(&self) -> Option<&LaurentV> {
        match self {
            Scalar::Laurent(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_laurent_x(&self) -> Option<&LaurentVX> {
        match self {
            Scalar::LaurentX(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_cyc(&self) -> Option<&CycElt> {
        match self {
            Scalar::Cyc(c) => Some(c),
            _ => None,
        }
    }

    /// Rational multiple, shared by every ring.
    pub fn scale_rational(&self, c: &BigRational) -> Scalar {
        match self {
            Scalar::Laurent(p) => Scalar::Laurent(p.scale(c)),
            Scalar::LaurentX(p) => Scalar::LaurentX(p.mul(&LaurentVX::monomial(c.clone(), 0, 0))),
            Scalar::Frac(f) => Scalar::Frac(f.mul(&RatFunc::from_rational(c.clone()))),
            Scalar::Rational(r) => Scalar::Rational(r * c),
            Scalar::Cyc(x) => Scalar::Cyc(x.scale(c)),
        }
    }

    pub fn scale_int(&self, c: i64) -> Scalar {
        self.scale_rational(&BigRational::from_integer(BigInt::from(c)))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Laurent(a), Scalar::Laurent(b)) => Scalar::Laurent(a.$m(b)),
                    (Scalar::LaurentX(a), Scalar::LaurentX(b)) => Scalar::LaurentX(a.$m(b)),
                    (Scalar::Frac(a), Scalar::Frac(b)) => Scalar::Frac(a.$m(b)),
                    (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a.$m(b)),
                    (Scalar::Cyc(a), Scalar::Cyc(b)) => Scalar::Cyc(a.$m(b)),
                    (a, b) => panic!("mixed-ring arithmetic: {a:?} and {b:?}"),
                }
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Laurent(a) => Scalar::Laurent(a.neg()),
            Scalar::LaurentX(a) => Scalar::LaurentX(a.neg()),
            Scalar::Frac(a) => Scalar::Frac(a.neg()),
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Cyc(a) => Scalar::Cyc(a.neg()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptors_for_small_ell() {
        let cases = [(2, 8, 3), (3, 3, 1), (4, 16, 5), (5, 10, 3)];
        for (ell, n, a) in cases {
            assert_eq!(RingDescriptor::root_of_unity(ell, 1).unwrap(), RingDescriptor::Cyclotomic { n, v_exp: a });
            let r = Ring::root_of_unity(ell).unwrap();
            assert_eq!(r.ell(), Some(ell));
        }
    }

    #[test]
    fn beta_vanishes_at_ell_two() {
        let r = Ring::root_of_unity(2).unwrap();
        assert!(r.beta().is_zero());
        assert!(!Ring::root_of_unity(5).unwrap().beta().is_zero());
    }

    #[test]
    fn q_plus_minus_one_rejected() {
        // v = ζ_4 gives q = 1, v = 1 gives q = −1
        assert_eq!(Ring::parse("cyc=4:1").unwrap_err(), ScalarError::ExcludedQ);
        assert!(Ring::parse("cyc=8:2").is_err());
        assert!(Ring::parse("inst=1").is_err());
    }

    #[test]
    fn odd_ell_with_order_ell_q() {
        let r = Ring::parse("l=3,e=2").unwrap();
        assert_eq!(r.ell(), Some(3));
        let q = r.q();
        assert!((&r.pow(&q, 3) - &r.one()).is_zero());
    }

    #[test]
    fn descriptor_text_roundtrip() {
        for s in ["generic", "generic-z", "generic-t", "ratfunc", "inst=2", "cyc=10:3"] {
            let d: RingDescriptor = s.parse().unwrap();
            assert_eq!(d.to_string(), s);
        }
    }
}
