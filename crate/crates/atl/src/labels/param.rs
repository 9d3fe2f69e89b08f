//! The q-data labels depend on: ℓ, the order of v, and the twist arithmetic.

use serde::Serialize;

use crate::scalar::Ring;

use super::{LabelError, ZSpec};

/// A twist ±v^r reduced to a canonical pair.
pub type Unit = (i8, i64);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QParam {
    /// Least ℓ with q^{2ℓ} = 1, or `None` for generic q.
    pub ell: Option<u32>,
    /// Order of v; `None` when v has infinite order.
    pub v_order: Option<u64>,
}

impl QParam {
    pub fn generic() -> Self {
        QParam { ell: None, v_order: None }
    }

    /// q = exp(iπ/ℓ), the default root of unity of the `l=ℓ` rings.
    pub fn root(ell: u32) -> Result<Self, LabelError> {
        Self::from_ring(&Ring::root_of_unity(ell).map_err(|e| LabelError::Ring(e.to_string()))?)
    }

    pub fn from_ring(ring: &Ring) -> Result<Self, LabelError> {
        match (ring.ell(), ring.v_order()) {
            (None, Some(_)) => Err(LabelError::Ring("q = ±1 is not covered".into())),
            (ell, ord) => Ok(QParam { ell, v_order: ord }),
        }
    }

    pub fn is_generic(&self) -> bool {
        self.ell.is_none()
    }

    /// β = 0 exactly when ℓ = 2.
    pub fn beta_zero(&self) -> bool {
        self.ell == Some(2)
    }

    pub fn is_critical(&self, k: i64) -> bool {
        self.ell.is_some_and(|l| (k + 1).rem_euclid(l as i64) == 0)
    }

    /// Reflection of k through the first critical integer above it.
    pub fn plus(&self, k: i64) -> Option<i64> {
        let l = self.ell? as i64;
        if self.is_critical(k) {
            return None;
        }
        let kc = k + (l - 1 - k.rem_euclid(l));
        Some(2 * kc - k)
    }

    /// Reflection of k through the last critical integer below it, if ≥ 0.
    pub fn minus(&self, k: i64) -> Option<i64> {
        let l = self.ell? as i64;
        if self.is_critical(k) {
            return None;
        }
        let kc = k - 1 - k.rem_euclid(l);
        (kc >= 0 && 2 * kc - k >= 0).then_some(2 * kc - k)
    }

    /// The class [k] ∩ Λ_n, increasing.
    pub fn orbit(&self, k: i64, n: i64) -> Vec<i64> {
        let mut out = vec![k];
        let mut cur = k;
        while let Some(m) = self.minus(cur) {
            out.insert(0, m);
            cur = m;
        }
        cur = k;
        while let Some(p) = self.plus(cur).filter(|&p| p <= n) {
            out.push(p);
            cur = p;
        }
        out.retain(|&x| x <= n);
        out
    }

    /// Canonical form of ±v^r. With v of even order, −1 is a power of v.
    pub fn canon(&self, sign: i8, r: i64) -> Unit {
        match self.v_order {
            None => (sign, r),
            Some(o) => {
                let o = o as i64;
                if o % 2 == 0 {
                    (1, (r + if sign < 0 { o / 2 } else { 0 }).rem_euclid(o))
                } else {
                    (sign, r.rem_euclid(o))
                }
            }
        }
    }

    /// v^a = v^b.
    pub fn v_eq(&self, a: i64, b: i64) -> bool {
        match self.v_order {
            None => a == b,
            Some(o) => (a - b).rem_euclid(o as i64) == 0,
        }
    }

    pub fn unit(&self, z: ZSpec) -> Option<Unit> {
        match z {
            ZSpec::Formal => None,
            ZSpec::Power { sign, r } => Some(self.canon(sign, r)),
        }
    }

    /// Twist equality in Λ^a at index k, where (0, z) ~ (0, z⁻¹).
    pub fn same_pair(&self, k: u32, a: ZSpec, b: ZSpec) -> bool {
        match (self.unit(a), self.unit(b)) {
            (Some(x), Some(y)) => x == y || (k == 0 && self.unit(b.inverse()) == Some(x)),
            _ => a == b,
        }
    }

    /// Representative of a twist used as a map key.
    pub fn key(&self, k: u32, z: ZSpec) -> Option<Unit> {
        let u = self.unit(z)?;
        if k == 0 {
            Some(u.min(self.unit(z.inverse())?))
        } else {
            Some(u)
        }
    }

    /// Whether (k, z) lies in Λ^a_n: (0, q) is dropped when β = 0 and n is even and nonzero.
    pub fn in_lambda(&self, n: u32, k: u32, z: ZSpec) -> bool {
        if k > n || (n - k) % 2 == 1 {
            return false;
        }
        if self.beta_zero() && k == 0 && n > 0 {
            // q = −v²
            return !self.same_pair(0, z, ZSpec::power(-1, 2));
        }
        true
    }
}
