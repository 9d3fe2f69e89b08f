//! Standard and cell modules, the free module W_{n,k} and the Gram form.

use std::collections::HashMap;

use serde::Serialize;

use crate::algebra::Letter;
use crate::diagram::{affine_link_states, join_halves, regular_link_states, Diagram, LinkState, Side, Boundary};
use crate::labels::{ModuleLabel, ZSpec};
use crate::linalg::{nullspace, rank, Matrix, RankMethod};
use crate::scalar::{Ring, RingDescriptor, Scalar, XRole};

use super::{generator_letters, Acting, Module, ModuleError};

fn check_parity(n: u32, k: u32) -> Result<(), ModuleError> {
    if k > n || (n - k) % 2 == 1 {
        return Err(ModuleError::Parity(n, k));
    }
    Ok(())
}

/// Text form of a link state: `(` `)` for arcs, `|` for defects, `>` and
/// `<` for the two ends of an arc through the seam.
pub(crate) fn link_text(ls: &LinkState) -> String {
    let n = ls.n() as i64;
    (0..n)
        .map(|i| match ls.partner(i as usize) {
            None => '|',
            Some(g) if g >= n => '>',
            Some(g) if g < 0 => '<',
            Some(g) if g > i => '(',
            Some(_) => ')',
        })
        .collect()
}

pub(crate) fn letter_diagram(n: u32, l: Letter) -> Result<Diagram, ModuleError> {
    Ok(match l {
        Letter::E(i) => Diagram::e(n, i)?,
        Letter::U(i) => Diagram::u(n, i)?,
        Letter::Tau => Diagram::tau(n),
        Letter::TauInv => Diagram::tau_inv(n),
    })
}

/// β^c, cached per ring for small c.
pub(crate) struct BetaPowers {
    ring: Ring,
    pows: Vec<Scalar>,
}

impl BetaPowers {
    pub(crate) fn new(ring: &Ring) -> Self {
        BetaPowers { ring: ring.clone(), pows: vec![ring.one()] }
    }

    pub(crate) fn get(&mut self, c: u32) -> Scalar {
        while self.pows.len() <= c as usize {
            let next = &self.pows[self.pows.len() - 1] * &self.ring.beta();
            self.pows.push(next);
        }
        self.pows[c as usize].clone()
    }
}

/// S_{n,k}: monic regular (k, n) link states; anything that joins two
/// through lines is zero.
pub fn build_s(ring: &Ring, n: u32, k: u32) -> Result<Module, ModuleError> {
    check_parity(n, k)?;
    let states = regular_link_states(n, k);
    let index: HashMap<LinkState, usize> = states.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let mut beta = BetaPowers::new(ring);
    let mut gens = Vec::new();
    for l in generator_letters(Acting::Regular, n) {
        let g = letter_diagram(n, l)?;
        let mut m = Matrix::zeros(ring, states.len(), states.len());
        for (j, ls) in states.iter().enumerate() {
            let (d, loops) = Diagram::compose(&g, &ls.to_diagram(0))?;
            if d.through_lines() < k {
                continue;
            }
            let (img, _) = LinkState::from_diagram(&d).expect("monic image");
            m.add_at(index[&img], j, &beta.get(loops));
        }
        gens.push(m);
    }
    let basis = states.iter().map(link_text).collect();
    Ok(Module::new(ring, n, Acting::Regular, basis, gens, "")?.with_label(ModuleLabel::s(n, k)))
}

/// M_{n,k} = Hom(k, n) in the regular category, all diagrams kept.
pub fn build_m(ring: &Ring, n: u32, k: u32) -> Result<Module, ModuleError> {
    if n % 2 != k % 2 {
        return Err(ModuleError::Parity(n, k));
    }
    let mut diagrams = Vec::new();
    for m in (k % 2..=n.min(k)).step_by(2) {
        for l in regular_link_states(n, m) {
            for r in regular_link_states(k, m) {
                diagrams.push(join_halves(&l, &r, 0));
            }
        }
    }
    let index: HashMap<Diagram, usize> = diagrams.iter().cloned().enumerate().map(|(i, d)| (d, i)).collect();
    let mut beta = BetaPowers::new(ring);
    let mut gens = Vec::new();
    for l in generator_letters(Acting::Regular, n) {
        let g = letter_diagram(n, l)?;
        let mut m = Matrix::zeros(ring, diagrams.len(), diagrams.len());
        for (j, d) in diagrams.iter().enumerate() {
            let (img, loops) = Diagram::compose(&g, d)?;
            m.add_at(index[&img], j, &beta.get(loops));
        }
        gens.push(m);
    }
    let basis = diagrams.iter().map(Diagram::render).collect();
    let label = ModuleLabel::new(crate::labels::Family::M, n.max(k), n.min(k), None).ok();
    let mut out = Module::new(ring, n, Acting::Regular, basis, gens, &format!("M({n},{k})"))?;
    out.label = label.filter(|_| k <= n);
    Ok(out)
}

/// Affine link-state module where a winding w (or w loops when k = 0) is
/// replaced by `weight(w)`.
fn affine_module(ring: &Ring, n: u32, k: u32, weight: &dyn Fn(i64) -> Result<Scalar, ModuleError>) -> Result<Module, ModuleError> {
    check_parity(n, k)?;
    let states = affine_link_states(n, k);
    let index: HashMap<LinkState, usize> = states.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let mut beta = BetaPowers::new(ring);
    let mut gens = Vec::new();
    for l in generator_letters(Acting::Affine, n) {
        let g = letter_diagram(n, l)?;
        let mut m = Matrix::zeros(ring, states.len(), states.len());
        for (j, ls) in states.iter().enumerate() {
            let (d, loops) = Diagram::compose(&g, &ls.to_diagram(0))?;
            if d.through_lines() < k {
                continue;
            }
            let (img, w) = LinkState::from_diagram(&d).expect("monic image");
            m.add_at(index[&img], j, &(&beta.get(loops) * &weight(w)?));
        }
        gens.push(m);
    }
    let basis = states.iter().map(link_text).collect();
    Module::new(ring, n, Acting::Affine, basis, gens, "")
}

/// W_{n,k;z} for a scalar twist: right winding τ_k ↦ z, and for k = 0 a
/// non-contractible loop ↦ z + z⁻¹.
pub fn build_w_twisted(ring: &Ring, n: u32, k: u32, z: &Scalar) -> Result<Module, ModuleError> {
    let z_inv = ring.inv(z).map_err(|_| ModuleError::ZeroTwist)?;
    let loop_value = z + &z_inv;
    let weight = |w: i64| -> Result<Scalar, ModuleError> {
        Ok(if k == 0 { ring.pow(&loop_value, w as u64) } else if w >= 0 { ring.pow(z, w as u64) } else { ring.pow(&z_inv, w.unsigned_abs()) })
    };
    affine_module(ring, n, k, &weight)
}

/// W_{n,k;z} with z = ±v^r or z formal (twist ring).
pub fn build_w_cell(ring: &Ring, n: u32, k: u32, z: ZSpec) -> Result<Module, ModuleError> {
    if z == ZSpec::Formal && ring.x_role() != Some(XRole::Twist) {
        return Err(ModuleError::RingKind("a formal twist needs the generic-z ring".into()));
    }
    let zv = z.value(ring)?;
    Ok(build_w_twisted(ring, n, k, &zv)?.with_label(ModuleLabel::wcell(n, k, z)))
}

/// W_{n,k} as a free module over Q[v^±][t^±]: right winding becomes t^w;
/// for k = 0, t stands for the non-contractible loop.
pub fn build_w_free(ring: &Ring, n: u32, k: u32) -> Result<Module, ModuleError> {
    if ring.x_role() != Some(XRole::Winding) {
        return Err(ModuleError::RingKind(format!("W_{{n,k}} needs the generic-t ring, got {}", ring.descriptor())));
    }
    let weight = |w: i64| -> Result<Scalar, ModuleError> { Ok(ring.x_pow(w)?) };
    Ok(affine_module(ring, n, k, &weight)?.with_label(ModuleLabel::w(n, k)))
}

/// Specialize t ↦ z (k > 0) or t ↦ z + z⁻¹ (k = 0) into `target`.
pub fn specialize_free(w: &Module, k: u32, target: &Ring, z: &Scalar) -> Result<Module, ModuleError> {
    let t_val = if k == 0 { z + &target.inv(z)? } else { z.clone() };
    w.map_scalars(target, |s| {
        let p = s.as_laurent_x().ok_or_else(|| ModuleError::RingKind("expected a generic-t module".into()))?;
        Ok(target.eval_x(p, &t_val)?)
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GramData {
    pub n: u32,
    pub k: u32,
    pub z: String,
    pub ring: String,
    pub dim: usize,
    pub rank: usize,
    pub radical_dim: usize,
    pub rank_method: RankMethod,
    /// False when the rank is only a lower bound (formal twist that did
    /// not specialize to full rank).
    pub certified: bool,
    #[serde(skip)]
    pub matrix: Matrix,
}

/// Value of an End(k) diagram under the twist: τ^w ↦ z^w, loops ↦ (z+z⁻¹)^c,
/// fewer than k through lines ↦ 0.
fn pairing_value(ring: &Ring, d: &Diagram, k: u32, z: &Scalar) -> Result<Scalar, ModuleError> {
    if d.through_lines() < k {
        return Ok(ring.zero());
    }
    if k == 0 {
        let lv = z + &ring.inv(z)?;
        return Ok(ring.pow(&lv, d.nc_loops() as u64));
    }
    // τ^w links left point 0 to right point −w
    let w = -d.partner(Boundary::new(Side::Left, 0)).pos;
    debug_assert_eq!(*d, Diagram::tau_pow(k, w));
    Ok(ring.ipow(z, w)?)
}

/// Gram matrix G_ij = ⟨x_i, x_j⟩ = x_j^t ∘ x_i on the affine link-state basis.
pub fn gram_entries(ring: &Ring, n: u32, k: u32, z: &Scalar) -> Result<Matrix, ModuleError> {
    check_parity(n, k)?;
    let states = affine_link_states(n, k);
    let xs: Vec<Diagram> = states.iter().map(|s| s.to_diagram(0)).collect();
    let xts: Vec<Diagram> = xs.iter().map(Diagram::involution).collect();
    let mut beta = BetaPowers::new(ring);
    let mut g = Matrix::zeros(ring, xs.len(), xs.len());
    for (i, x) in xs.iter().enumerate() {
        for (j, yt) in xts.iter().enumerate() {
            let (d, loops) = Diagram::compose(yt, x)?;
            let val = pairing_value(ring, &d, k, z)?;
            if !val.is_zero() {
                g.set(i, j, &beta.get(loops) * &val);
            }
        }
    }
    Ok(g)
}

pub fn gram_matrix(ring: &Ring, n: u32, k: u32, z: ZSpec) -> Result<GramData, ModuleError> {
    if z == ZSpec::Formal && ring.x_role() != Some(XRole::Twist) {
        return Err(ModuleError::RingKind("a formal twist needs the generic-z ring".into()));
    }
    let zv = z.value(ring)?;
    let matrix = gram_entries(ring, n, k, &zv)?;
    let dim = matrix.rows();
    let (rank, rank_method, certified) = match ring.x_role() {
        Some(_) => {
            let (r, m) = formal_rank(&matrix)?;
            (r, m, r == dim)
        }
        None => {
            let (r, m) = rank(ring, &matrix);
            (r, m, true)
        }
    };
    Ok(GramData {
        n,
        k,
        z: z.to_string(),
        ring: ring.descriptor().to_string(),
        dim,
        rank,
        radical_dim: dim - rank,
        rank_method,
        certified,
        matrix,
    })
}

/// Lower bound for the rank over Q(v, x): the best of a few rational
/// specializations, each of which can only lose rank.
fn formal_rank(m: &Matrix) -> Result<(usize, RankMethod), ModuleError> {
    let mut best = (0, RankMethod::Certified);
    for (v, x) in [("2", "3/7"), ("5/3", "11/2")] {
        let target = Ring::new(RingDescriptor::Instance { v: v.into() })?;
        let xv = target.rational(x.parse().expect("rational literal"));
        let mm = m.map(|s| target.eval_x(s.as_laurent_x().expect("two-variable entry"), &xv).expect("invertible x"));
        let r = rank(&target, &mm);
        if r.0 > best.0 {
            best = r;
        }
        if best.0 == m.rows().min(m.cols()) {
            break;
        }
    }
    Ok(best)
}

/// Gram matrix of the regular form on S_{n,k}.
pub fn regular_gram(ring: &Ring, n: u32, k: u32) -> Result<Matrix, ModuleError> {
    check_parity(n, k)?;
    let xs: Vec<Diagram> = regular_link_states(n, k).iter().map(|s| s.to_diagram(0)).collect();
    let mut beta = BetaPowers::new(ring);
    let mut g = Matrix::zeros(ring, xs.len(), xs.len());
    for (i, x) in xs.iter().enumerate() {
        for (j, y) in xs.iter().enumerate() {
            let (d, loops) = Diagram::compose(&y.involution(), x)?;
            if d.through_lines() == k {
                g.set(i, j, beta.get(loops));
            }
        }
    }
    Ok(g)
}

/// M / rad⟨,⟩ where `gram` is the form in M's basis.
fn head(m: &Module, gram: &Matrix) -> Result<Module, ModuleError> {
    let (_, radical) = nullspace(m.ring(), &gram.transpose());
    m.quotient(&radical)
}

/// L_{n,k;z}: the cell module modulo the radical of its form.
pub fn build_l(ring: &Ring, n: u32, k: u32, z: ZSpec) -> Result<Module, ModuleError> {
    let w = build_w_cell(ring, n, k, z)?;
    let g = gram_entries(ring, n, k, &z.value(ring)?)?;
    Ok(head(&w, &g)?.with_label(ModuleLabel::l(n, k, z)))
}

/// I_{n,k}: S_{n,k} modulo the radical of its form.
pub fn build_i(ring: &Ring, n: u32, k: u32) -> Result<Module, ModuleError> {
    let s = build_s(ring, n, k)?;
    Ok(head(&s, &regular_gram(ring, n, k)?)?.with_label(ModuleLabel::i(n, k)))
}
