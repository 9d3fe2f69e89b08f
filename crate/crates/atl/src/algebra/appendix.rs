//! The alternative generator g, the central element Λ and their relatives.

use crate::diagram::Diagram;
use crate::scalar::Ring;

use super::braid::{t, t_inv};
use super::relations::RelationCheck;
use super::{AlgebraError, Element};

#[derive(Clone, Debug)]
pub struct AppendixElements {
    ring: Ring,
    n: u32,
    pub g: Element,
    pub g_inv: Element,
    pub lambda: Element,
}

fn e(ring: &Ring, n: u32, i: i64) -> Result<Element, AlgebraError> {
    Ok(Element::from_diagram(ring, Diagram::e(n, i)?))
}

impl AppendixElements {
    /// g = v⁻³ τ t_{n−1}⁻¹ ⋯ t_1⁻¹ and Λ = q g + q⁻¹ g⁻¹.
    pub fn new(ring: &Ring, n: u32) -> Result<Self, AlgebraError> {
        let mut g = Element::from_diagram(ring, Diagram::tau(n)).scale(&ring.v_pow(-3));
        for i in (1..n as i64).rev() {
            g = g.compose(&t_inv(ring, n, i)?)?;
        }
        let mut g_inv = Element::scalar(ring, n, ring.v_pow(3));
        for i in 1..n as i64 {
            g_inv = g_inv.compose(&t(ring, n, i)?)?;
        }
        g_inv = g_inv.compose(&Element::from_diagram(ring, Diagram::tau_inv(n)))?;
        let q = ring.q();
        let lambda = g.scale(&q).add(&g_inv.scale(&ring.inv(&q)?))?;
        Ok(AppendixElements { ring: ring.clone(), n, g, g_inv, lambda })
    }

    /// g_k = t_k ⋯ t_1 g t_1 ⋯ t_k and its inverse.
    pub fn g_k(&self, k: u32) -> Result<(Element, Element), AlgebraError> {
        let (ring, n) = (&self.ring, self.n);
        let mut gk = self.g.clone();
        let mut gk_inv = self.g_inv.clone();
        for i in 1..=k as i64 {
            gk = t(ring, n, i)?.compose(&gk)?.compose(&t(ring, n, i)?)?;
            gk_inv = t_inv(ring, n, i)?.compose(&gk_inv)?.compose(&t_inv(ring, n, i)?)?;
        }
        Ok((gk, gk_inv))
    }

    /// U_0 = 1, U_1 = Λ, U_{m} = Λ U_{m−1} − U_{m−2}, all evaluated at Λ/2.
    pub fn chebyshev_u(&self, m: i64) -> Result<Element, AlgebraError> {
        let mut prev = Element::zero(&self.ring, self.n, self.n);
        let mut cur = Element::identity(&self.ring, self.n);
        if m < 0 {
            return Ok(prev);
        }
        for _ in 0..m {
            let next = self.lambda.compose(&cur)?.sub(&prev)?;
            prev = cur;
            cur = next;
        }
        Ok(cur)
    }

    pub fn relations(&self) -> Result<Vec<RelationCheck>, AlgebraError> {
        let (ring, n) = (&self.ring, self.n);
        let mut out = Vec::new();
        let id = Element::identity(ring, n);
        out.push(RelationCheck::new("g g^-1 = 1", &self.g.compose(&self.g_inv)?, &id));
        let qg = self.g.scale(&ring.q());
        for m in 2..=4u32 {
            let lhs = qg.pow(m)?;
            let rhs = qg.compose(&self.chebyshev_u(m as i64 - 1)?)?.sub(&self.chebyshev_u(m as i64 - 2)?)?;
            out.push(RelationCheck::new(&format!("(qg)^{m} = qg U_{}(Λ/2) - U_{}(Λ/2)", m - 1, m as i64 - 2), &lhs, &rhs));
        }
        if n < 2 {
            return Ok(out);
        }
        let e1 = e(ring, n, 1)?;
        out.push(RelationCheck::new("e1 g e1 = Λ e1", &e1.compose(&self.g)?.compose(&e1)?, &self.lambda.compose(&e1)?));
        for i in 1..n as i64 {
            let ei = e(ring, n, i)?;
            out.push(RelationCheck::zero(&format!("[Λ, e{i}] = 0"), &self.lambda.commutator(&ei)?));
        }
        let t1 = t(ring, n, 1)?;
        let lhs = t1.compose(&self.g)?.compose(&t1)?.compose(&self.g)?;
        let rhs = self.g.compose(&t1)?.compose(&self.g)?.compose(&t1)?;
        out.push(RelationCheck::new("t1 g t1 g = g t1 g t1", &lhs, &rhs));
        let q_inv = ring.inv(&ring.q())?;
        let gks: Vec<(Element, Element)> = (0..n - 1).map(|k| self.g_k(k)).collect::<Result<_, _>>()?;
        for (k, (gk, gk_inv)) in gks.iter().enumerate() {
            for (s, (gs, _)) in gks.iter().enumerate().skip(k + 1) {
                out.push(RelationCheck::zero(&format!("[g_{k}, g_{s}] = 0"), &gk.commutator(gs)?));
            }
            let lam_k = gk.scale(&ring.q()).add(&gk_inv.scale(&q_inv))?;
            let ek1 = e(ring, n, k as i64 + 1)?;
            out.push(RelationCheck::new(
                &format!("e{} g_{k} e{} = Λ_{k} e{}", k + 1, k + 1, k + 1),
                &ek1.compose(gk)?.compose(&ek1)?,
                &lam_k.compose(&ek1)?,
            ));
            for j in (1..n as i64).filter(|&j| j != k as i64) {
                let ej = e(ring, n, j)?;
                out.push(RelationCheck::zero(&format!("[Λ_{k}, e{j}] = 0"), &lam_k.commutator(&ej)?));
            }
        }
        Ok(out)
    }
}
