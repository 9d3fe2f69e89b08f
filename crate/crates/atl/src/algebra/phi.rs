//! φ : aTL_n → TL_n on generator words.

use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, Mutex, OnceLock};

use crate::diagram::Diagram;
use crate::scalar::Ring;

use super::braid::{eta, eta_inv};
use super::{AlgebraError, Element, Letter, Word};

/// Images of the affine generators under φ for one (ring, n).
#[derive(Clone, Debug)]
pub struct Phi {
    ring: Ring,
    n: u32,
    tau: Element,
    tau_inv: Element,
    e: Vec<Element>,
}

impl Phi {
    pub fn new(ring: &Ring, n: u32) -> Result<Phi, AlgebraError> {
        if n == 0 {
            return Err(AlgebraError::Word("φ needs n ≥ 1".into()));
        }
        let (tau, tau_inv) = if n == 1 {
            (Element::scalar(ring, 1, ring.v_pow(3)), Element::scalar(ring, 1, ring.v_pow(-3)))
        } else {
            (eta(ring, n - 1, 1)?.scale(&ring.v_pow(3)), eta_inv(ring, n - 1, 1)?.scale(&ring.v_pow(-3)))
        };
        let mut e = Vec::new();
        if n >= 2 {
            let u1 = Element::from_diagram(ring, Diagram::u(n, 1)?);
            let e0 = eta_inv(ring, n - 1, 1)?.compose(&u1)?.compose(&eta(ring, n - 1, 1)?)?;
            e.push(e0);
            for i in 1..n as usize {
                let next = tau.compose(&e[i - 1])?.compose(&tau_inv)?;
                e.push(next);
            }
        }
        Ok(Phi { ring: ring.clone(), n, tau, tau_inv, e })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn tau(&self) -> &Element {
        &self.tau
    }

    pub fn tau_inv(&self) -> &Element {
        &self.tau_inv
    }

    /// φ(e_i), index mod n.
    pub fn e(&self, i: i64) -> &Element {
        &self.e[i.rem_euclid(self.n as i64) as usize]
    }

    /// φ of one letter; a regular letter u_i is read through ι as e_i.
    pub fn letter(&self, l: Letter) -> &Element {
        match l {
            Letter::E(i) => self.e(i),
            Letter::U(i) => self.e(i as i64),
            Letter::Tau => &self.tau,
            Letter::TauInv => &self.tau_inv,
        }
    }

    pub fn apply(&self, w: &Word) -> Result<Element, AlgebraError> {
        if w.n() != self.n {
            return Err(AlgebraError::Shape(w.n(), w.n(), self.n, self.n));
        }
        Element::product(&self.ring, self.n, w.letters().iter().map(|&l| self.letter(l)))
    }

    /// φ∘ι on an element of TL_n, through a u-word for each diagram.
    pub fn apply_regular(&self, x: &Element) -> Result<Element, AlgebraError> {
        let words = regular_words(self.n);
        let mut out = Element::zero(&self.ring, self.n, self.n);
        for (d, c) in x.terms() {
            let letters = words.get(&d.without_loops()).filter(|_| d.nc_loops() == 0).ok_or(AlgebraError::Word(
                format!("{} is not a regular diagram", d.render()),
            ))?;
            let img = Element::product(&self.ring, self.n, letters.iter().map(|&i| self.e(i as i64)))?;
            out = out.add(&img.scale(c))?;
        }
        Ok(out)
    }
}

/// A reduced u-word for every regular diagram on n points: a word whose
/// product is the diagram itself, with no loops.
pub fn regular_words(n: u32) -> Arc<HashMap<Diagram, Vec<u32>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<HashMap<Diagram, Vec<u32>>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(w) = cache.lock().unwrap().get(&n) {
        return w.clone();
    }
    let mut seen: HashMap<Diagram, Vec<u32>> = HashMap::new();
    let id = Diagram::identity(n);
    seen.insert(id.clone(), Vec::new());
    let mut queue = VecDeque::from([id]);
    while let Some(d) = queue.pop_front() {
        for i in 1..n {
            let (next, loops) = Diagram::compose(&d, &Diagram::u(n, i).unwrap()).unwrap();
            if loops == 0 && !seen.contains_key(&next) {
                let mut w = seen[&d].clone();
                w.push(i);
                seen.insert(next.clone(), w);
                queue.push_back(next);
            }
        }
    }
    let out = Arc::new(seen);
    cache.lock().unwrap().insert(n, out.clone());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_regular_diagram_has_a_word() {
        let catalan = [1, 1, 2, 5, 14, 42, 132, 429];
        for n in 1..=7 {
            assert_eq!(regular_words(n).len(), catalan[n as usize]);
        }
    }

    #[test]
    fn n2_tau_times_e1() {
        let r = Ring::generic();
        let phi = Phi::new(&r, 2).unwrap();
        let u1 = Element::from_diagram(&r, Diagram::u(2, 1).unwrap());
        assert_eq!(phi.tau().compose(phi.e(1)).unwrap(), u1.neg());
        // φ(τ) = q(q − u_1)
        let expected = Element::scalar(&r, 2, r.q()).sub(&u1).unwrap().scale(&r.q());
        assert_eq!(phi.tau(), &expected);
    }

    #[test]
    fn e1_tau_squared_image() {
        let r = Ring::generic();
        for n in 3..=5 {
            let phi = Phi::new(&r, n).unwrap();
            let lhs = phi.apply(&Word::parse(n, "e1 t t").unwrap()).unwrap();
            let letters = (1..n as i64).map(Letter::E).collect();
            let rhs = phi.apply(&Word::new(n, letters).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
            assert_eq!(phi.apply(&Word::empty(n)).unwrap(), Element::identity(&r, n));
        }
    }
}
