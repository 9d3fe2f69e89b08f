//! Module labels and twist specifications.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_with::{DeserializeFromStr, SerializeDisplay};

use crate::scalar::{Ring, Scalar, ScalarError};

use super::LabelError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    S,
    M,
    I,
    P,
    W,
    Wcell,
    L,
    Pa,
    IndarS,
}

impl Family {
    /// Families of aTL_n-modules.
    pub fn is_affine(self) -> bool {
        matches!(self, Family::W | Family::Wcell | Family::L | Family::Pa | Family::IndarS)
    }

    pub fn needs_twist(self) -> bool {
        matches!(self, Family::Wcell | Family::L)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for Family {
    type Err = LabelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "S" => Family::S,
            "M" => Family::M,
            "I" => Family::I,
            "P" => Family::P,
            "W" => Family::W,
            "Wcell" => Family::Wcell,
            "L" => Family::L,
            "Pa" => Family::Pa,
            "IndarS" => Family::IndarS,
            _ => return Err(LabelError::Parse(s.to_string())),
        })
    }
}

/// A twist z = sign · v^r, or a formal z.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, SerializeDisplay, DeserializeFromStr)]
pub enum ZSpec {
    Formal,
    Power { sign: i8, r: i64 },
}

impl ZSpec {
    pub fn power(sign: i8, r: i64) -> ZSpec {
        ZSpec::Power { sign: if sign < 0 { -1 } else { 1 }, r }
    }

    /// z_k = v^k.
    pub fn z(k: i64) -> ZSpec {
        ZSpec::power(1, k)
    }

    pub fn inverse(self) -> ZSpec {
        match self {
            ZSpec::Formal => ZSpec::Formal,
            ZSpec::Power { sign, r } => ZSpec::Power { sign, r: -r },
        }
    }

    /// The value in `ring`; a formal z needs a ring with a twist variable.
    pub fn value(self, ring: &Ring) -> Result<Scalar, ScalarError> {
        match self {
            ZSpec::Formal => ring.x_pow(1),
            ZSpec::Power { sign, r } => Ok(ring.v_pow(r).scale_int(sign as i64)),
        }
    }

    /// Reduce to a normal form when v has finite order `ord` (−1 = v^{ord/2}).
    pub fn normalize(self, ord: Option<i64>) -> ZSpec {
        match (self, ord) {
            (ZSpec::Power { sign, r }, Some(o)) => {
                let r = if sign < 0 { r + o / 2 } else { r };
                ZSpec::Power { sign: 1, r: r.rem_euclid(o) }
            }
            (z, _) => z,
        }
    }
}

impl fmt::Display for ZSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZSpec::Formal => write!(f, "z"),
            ZSpec::Power { sign, r } => write!(f, "{}v{}", if *sign < 0 { "-" } else { "" }, r),
        }
    }
}

impl FromStr for ZSpec {
    type Err = LabelError;

    /// `z`/`generic` (formal), `v4`, `-v3`, `v-2`, `1`, `-1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "z" || t == "generic" {
            return Ok(ZSpec::Formal);
        }
        let (sign, body) = match t.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, t.strip_prefix('+').unwrap_or(t)),
        };
        if body == "1" {
            return Ok(ZSpec::power(sign, 0));
        }
        let r = body
            .strip_prefix('v')
            .and_then(|e| if e.is_empty() { Some(1) } else { e.trim_start_matches('^').parse().ok() })
            .ok_or_else(|| LabelError::Parse(s.to_string()))?;
        Ok(ZSpec::power(sign, r))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModuleLabel {
    pub family: Family,
    pub n: u32,
    pub k: u32,
    pub z: Option<ZSpec>,
}

impl ModuleLabel {
    pub fn new(family: Family, n: u32, k: u32, z: Option<ZSpec>) -> Result<Self, LabelError> {
        let label = ModuleLabel { family, n, k, z };
        if k > n || (n - k) % 2 == 1 {
            return Err(LabelError::Parity(n, k));
        }
        if family.needs_twist() != z.is_some() {
            return Err(LabelError::Twist(label.to_string()));
        }
        Ok(label)
    }

    pub fn s(n: u32, k: u32) -> Self {
        Self::new(Family::S, n, k, None).expect("valid S label")
    }

    pub fn i(n: u32, k: u32) -> Self {
        Self::new(Family::I, n, k, None).expect("valid I label")
    }

    pub fn p(n: u32, k: u32) -> Self {
        Self::new(Family::P, n, k, None).expect("valid P label")
    }

    pub fn w(n: u32, k: u32) -> Self {
        Self::new(Family::W, n, k, None).expect("valid W label")
    }

    pub fn wcell(n: u32, k: u32, z: ZSpec) -> Self {
        Self::new(Family::Wcell, n, k, Some(z)).expect("valid Wcell label")
    }

    pub fn l(n: u32, k: u32, z: ZSpec) -> Self {
        Self::new(Family::L, n, k, Some(z)).expect("valid L label")
    }

    pub fn with_family(self, family: Family) -> Self {
        ModuleLabel { family, ..self }
    }
}

impl fmt::Display for ModuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.z {
            Some(z) => write!(f, "{}({},{};{})", self.family, self.n, self.k, z),
            None => write!(f, "{}({},{})", self.family, self.n, self.k),
        }
    }
}

impl FromStr for ModuleLabel {
    type Err = LabelError;

    /// `S:5,3`, `W:2,2`, `Wcell:4,2;v4`, `L:4,0;-v2`, or the display form
    /// `Wcell(4,2;v4)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LabelError::Parse(s.to_string());
        let t = s.trim();
        let (fam, rest) = match t.split_once(':') {
            Some(p) => p,
            None => {
                let (f, r) = t.split_once('(').ok_or_else(bad)?;
                (f, r.strip_suffix(')').ok_or_else(bad)?)
            }
        };
        let family: Family = fam.trim().parse()?;
        let (nk, z) = match rest.split_once(';') {
            Some((a, b)) => (a, Some(b.parse()?)),
            None => (rest, None),
        };
        let (n, k) = nk.split_once(',').ok_or_else(bad)?;
        let n = n.trim().parse().map_err(|_| bad())?;
        let k = k.trim().parse().map_err(|_| bad())?;
        ModuleLabel::new(family, n, k, z)
    }
}
