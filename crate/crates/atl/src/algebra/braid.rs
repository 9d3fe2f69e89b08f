//! T_i = v·1 + v⁻¹e_i and the braiding η_{r,s}.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::diagram::Diagram;
use crate::scalar::Ring;

use super::{AlgebraError, Element};

pub fn t(ring: &Ring, n: u32, i: i64) -> Result<Element, AlgebraError> {
    let mut x = Element::scalar(ring, n, ring.v_pow(1));
    x.add_term(Diagram::e(n, i)?, ring.v_pow(-1));
    Ok(x)
}

pub fn t_inv(ring: &Ring, n: u32, i: i64) -> Result<Element, AlgebraError> {
    let mut x = Element::scalar(ring, n, ring.v_pow(-1));
    x.add_term(Diagram::e(n, i)?, ring.v_pow(1));
    Ok(x)
}

type EtaKey = (String, u32, u32, bool);

fn cache() -> &'static Mutex<HashMap<EtaKey, Element>> {
    static CACHE: OnceLock<Mutex<HashMap<EtaKey, Element>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Index sequence of η_{r,s} as a left-to-right product of T's:
/// Y_s ⋯ Y_1 with Y_i = T_i T_{i+1} ⋯ T_{i+r−1}.
fn eta_indices(r: u32, s: u32) -> Vec<i64> {
    let mut out = Vec::with_capacity((r * s) as usize);
    for i in (1..=s as i64).rev() {
        for j in 0..r as i64 {
            out.push(i + j);
        }
    }
    out
}

fn build(ring: &Ring, r: u32, s: u32, inverse: bool) -> Result<Element, AlgebraError> {
    let n = r + s;
    let mut idx = eta_indices(r, s);
    if inverse {
        idx.reverse();
    }
    let mut acc = Element::identity(ring, n);
    for i in idx {
        let f = if inverse { t_inv(ring, n, i)? } else { t(ring, n, i)? };
        acc = acc.compose(&f)?;
    }
    Ok(acc)
}

fn cached(ring: &Ring, r: u32, s: u32, inverse: bool) -> Result<Element, AlgebraError> {
    let key = (ring.descriptor().to_string(), r, s, inverse);
    if let Some(x) = cache().lock().unwrap().get(&key) {
        return Ok(x.clone());
    }
    let x = build(ring, r, s, inverse)?;
    cache().lock().unwrap().insert(key, x.clone());
    Ok(x)
}

/// η_{r,s} ∈ End(r+s).
pub fn eta(ring: &Ring, r: u32, s: u32) -> Result<Element, AlgebraError> {
    cached(ring, r, s, false)
}

pub fn eta_inv(ring: &Ring, r: u32, s: u32) -> Result<Element, AlgebraError> {
    cached(ring, r, s, true)
}

/// η_{r,s} = Z_1 Z_2 ⋯ Z_r with Z_i = T_{i+s−1} ⋯ T_{i+1} T_i.
pub fn eta_second_form(ring: &Ring, r: u32, s: u32) -> Result<Element, AlgebraError> {
    let n = r + s;
    let mut acc = Element::identity(ring, n);
    for i in 1..=r as i64 {
        for j in (0..s as i64).rev() {
            acc = acc.compose(&t(ring, n, i + j)?)?;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_forms_agree() {
        let r = Ring::generic();
        for (a, b) in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1), (1, 3), (2, 3)] {
            assert_eq!(eta(&r, a, b).unwrap(), eta_second_form(&r, a, b).unwrap(), "{a},{b}");
        }
    }

    #[test]
    fn inverses() {
        let r = Ring::generic();
        for (a, b) in [(1, 1), (2, 1), (1, 3), (2, 2)] {
            let x = eta(&r, a, b).unwrap().compose(&eta_inv(&r, a, b).unwrap()).unwrap();
            assert_eq!(x, Element::identity(&r, a + b));
        }
    }

    #[test]
    fn t_squared_by_expansion() {
        // T² = v²·1 + (2 + v⁻²β)e
        let r = Ring::generic();
        let lhs = t(&r, 3, 1).unwrap().compose(&t(&r, 3, 1).unwrap()).unwrap();
        let mut rhs = Element::scalar(&r, 3, r.v_pow(2));
        rhs.add_term(Diagram::e(3, 1).unwrap(), &r.int(2) + &(&r.v_pow(-2) * &r.beta()));
        assert_eq!(lhs, rhs);
        // u T T = (−q)^{-3} u
        let u = Element::from_diagram(&r, Diagram::u(4, 3).unwrap());
        let tt = t(&r, 4, 3).unwrap().compose(&t(&r, 4, 3).unwrap()).unwrap();
        assert_eq!(u.compose(&tt).unwrap(), u.scale(&r.v_pow(-6)));
    }
}
