//! Closed-form dimensions.

use std::fmt;

use serde::Serialize;

use super::dim_l::dim_l;
use super::{Family, LabelError, ModuleLabel, QParam, ZSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Dim {
    Finite(u64),
    /// Infinite over the field; `rank` is the rank over the τ-ring when known.
    Infinite { rank: Option<u64> },
}

impl Dim {
    pub fn finite(self) -> Option<u64> {
        match self {
            Dim::Finite(d) => Some(d),
            Dim::Infinite { .. } => None,
        }
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::Finite(d) => write!(f, "{d}"),
            Dim::Infinite { rank: Some(r) } => write!(f, "∞ (rank {r})"),
            Dim::Infinite { rank: None } => write!(f, "∞"),
        }
    }
}

pub fn binomial(n: i64, m: i64) -> u64 {
    if m < 0 || m > n || n < 0 {
        return 0;
    }
    let m = m.min(n - m) as u128;
    let mut acc: u128 = 1;
    for i in 0..m {
        acc = acc * (n as u128 - i) / (i + 1);
    }
    u64::try_from(acc).expect("binomial fits in u64")
}

fn valid(n: i64, k: i64) -> bool {
    k >= 0 && k <= n && (n - k) % 2 == 0
}

/// dim S_{n,k}; zero outside Λ_n.
pub fn dim_s(n: i64, k: i64) -> u64 {
    if !valid(n, k) {
        return 0;
    }
    let m = (n - k) / 2;
    binomial(n, m) - binomial(n, m - 1)
}

/// dim W_{n,k;z}; zero outside Λ_n.
pub fn dim_w(n: i64, k: i64) -> u64 {
    if !valid(n, k) {
        return 0;
    }
    binomial(n, (n - k) / 2)
}

/// dim M_{n,k}: noncrossing matchings of n + k points.
pub fn dim_m(n: i64, k: i64) -> u64 {
    if n < 0 || k < 0 || (n + k) % 2 == 1 {
        return 0;
    }
    let h = (n + k) / 2;
    binomial(2 * h, h) / (h as u64 + 1)
}

/// dim I_{n,k}: alternating sum of dim S over the part of [k] at or above k.
pub fn dim_i(p: &QParam, n: i64, k: i64) -> u64 {
    if !valid(n, k) {
        return 0;
    }
    let orbit = p.orbit(k, n);
    let start = orbit.iter().position(|&x| x == k).expect("k in its class");
    let mut acc: i64 = 0;
    for (b, &x) in orbit[start..].iter().enumerate() {
        let d = dim_s(n, x) as i64;
        acc += if b % 2 == 0 { d } else { -d };
    }
    acc as u64
}

/// dim P_{n,k} = dim S_{n,k} + dim S_{n,k⁻}.
pub fn dim_p(p: &QParam, n: i64, k: i64) -> u64 {
    if !valid(n, k) {
        return 0;
    }
    dim_s(n, k) + p.minus(k).map_or(0, |m| dim_s(n, m))
}

/// Rejects labels outside the parameter sets of their family.
pub fn validate(label: &ModuleLabel, p: &QParam) -> Result<(), LabelError> {
    let (n, k) = (label.n, label.k);
    match label.family {
        Family::I if p.beta_zero() && k == 0 && n % 2 == 0 && n > 0 => {
            Err(LabelError::Excluded(label.to_string()))
        }
        Family::L => {
            let z = label.z.expect("L carries a twist");
            if z != ZSpec::Formal && !p.in_lambda(n, k, z) {
                return Err(LabelError::Excluded(label.to_string()));
            }
            Ok(())
        }
        Family::IndarS if p.beta_zero() && (k == 0 || k == 2) => Err(LabelError::Excluded(label.to_string())),
        _ => Ok(()),
    }
}

pub fn dims(label: &ModuleLabel, p: &QParam) -> Result<Dim, LabelError> {
    validate(label, p)?;
    let (n, k) = (label.n as i64, label.k as i64);
    Ok(match label.family {
        Family::S => Dim::Finite(dim_s(n, k)),
        Family::M => Dim::Finite(dim_m(n, k)),
        Family::I => Dim::Finite(dim_i(p, n, k)),
        Family::P | Family::Pa => Dim::Finite(dim_p(p, n, k)),
        Family::Wcell => Dim::Finite(dim_w(n, k)),
        Family::L => Dim::Finite(dim_l(p, label.n, label.k, label.z.expect("L carries a twist"))?.value),
        Family::W => Dim::Infinite { rank: Some(dim_w(n, k)) },
        Family::IndarS => Dim::Infinite { rank: None },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        assert_eq!(dim_s(5, 3), 4);
        assert_eq!(dim_s(4, 0), 2);
        assert_eq!(dim_s(12, 8), 54);
        assert_eq!(dim_w(4, 2), 4);
        assert_eq!(dim_m(4, 2), 5);
        let g = QParam::generic();
        assert_eq!(dims(&ModuleLabel::wcell(4, 2, ZSpec::z(3)), &g).unwrap(), Dim::Finite(4));
        assert_eq!(dims(&ModuleLabel::w(4, 2), &g).unwrap(), Dim::Infinite { rank: Some(4) });
    }

    #[test]
    fn irreducible_and_projective_at_roots() {
        let p = QParam::root(3).unwrap();
        // [0] = {0, 4}: dim I_{4,0} = 2 − 1
        assert_eq!(dim_i(&p, 4, 0), 1);
        assert_eq!(dim_i(&p, 4, 2), dim_s(4, 2));
        assert_eq!(dim_p(&p, 4, 4), dim_s(4, 4) + dim_s(4, 0));
        let b0 = QParam::root(2).unwrap();
        assert_eq!(dim_i(&b0, 4, 0), 0);
        assert!(dims(&ModuleLabel::i(4, 0), &b0).is_err());
        // generic q: everything is semisimple
        let g = QParam::generic();
        for n in 0..10 {
            for k in (n % 2..=n).step_by(2) {
                assert_eq!(dim_i(&g, n, k), dim_s(n, k));
                assert_eq!(dim_p(&g, n, k), dim_s(n, k));
            }
        }
    }

    #[test]
    fn standard_dims_add_up_to_cell_dims() {
        for n in 0..12i64 {
            for k in (n % 2..=n).step_by(2) {
                let sum: u64 = (k..=n).step_by(2).map(|j| dim_s(n, j)).sum();
                assert_eq!(sum, dim_w(n, k));
            }
        }
    }
}
