//! Exact scalars: Laurent polynomials in v (with v² = −q), cyclotomic
//! specializations, rational functions and rational points.

mod cyclo;
mod laurent;
pub mod poly;
mod ratfunc;
mod ring;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

pub use cyclo::{CycElt, CycField};
pub use laurent::{LaurentV, LaurentVX, XRole};
pub use ratfunc::RatFunc;
pub use ring::{Ring, RingDescriptor, RingKind, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("cannot parse scalar `{0}`")]
    Parse(String),
    #[error("invalid ring descriptor: {0}")]
    InvalidRing(String),
    #[error("operands live in different rings ({0} vs {1})")]
    RingMismatch(String, String),
    #[error("element is not invertible")]
    NotInvertible,
    #[error("missing binding for variable {0}")]
    MissingBinding(&'static str),
    #[error("q = ±1 is excluded")]
    ExcludedQ,
}

pub(crate) fn fmt_rational(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational, ScalarError> {
    let s = s.trim();
    let err = || ScalarError::Parse(s.to_string());
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().map_err(|_| err())?;
            let b: BigInt = b.trim().parse().map_err(|_| err())?;
            if b == BigInt::from(0) {
                return Err(err());
            }
            Ok(BigRational::new(a, b))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| err())?)),
    }
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
