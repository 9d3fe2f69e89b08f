//! TL_{n1+n2} ⊗_{TL_{n1} ⊗ TL_{n2}} (M1 ⊠ M2) by explicit elimination.

use std::collections::HashMap;

use crate::diagram::{join_halves, regular_link_states, split_halves, Diagram};
use crate::linalg::{Matrix, SparseEchelon, SparseRow};
use crate::modcore::{generator_letters, Acting, Module};
use crate::scalar::{Ring, Scalar};

use super::FusionError;

/// Default cap on the free module TL_N × basis pairs.
pub const MAX_FREE: usize = 20_000;

/// All regular (n, n) diagrams.
pub fn tl_diagrams(n: u32) -> Vec<Diagram> {
    let mut out = Vec::new();
    for m in (n % 2..=n).step_by(2) {
        let states = regular_link_states(n, m);
        for l in &states {
            for r in &states {
                out.push(join_halves(l, r, 0));
            }
        }
    }
    out
}

struct BetaPow {
    ring: Ring,
    pows: Vec<Scalar>,
}

impl BetaPow {
    fn new(ring: &Ring) -> Self {
        BetaPow { ring: ring.clone(), pows: vec![ring.one()] }
    }

    fn get(&mut self, c: u32) -> Scalar {
        while self.pows.len() <= c as usize {
            let x = &self.pows[self.pows.len() - 1] * &self.ring.beta();
            self.pows.push(x);
        }
        self.pows[c as usize].clone()
    }
}

fn regular_pair(m1: &Module, m2: &Module) -> Result<(Module, Module), FusionError> {
    if m1.acting() != Acting::Regular || m2.acting() != Acting::Regular {
        return Err(FusionError::Refused("TL fusion takes TL_n-modules".into()));
    }
    if m1.n() == 0 || m2.n() == 0 {
        return Err(FusionError::Refused("both factors need n ≥ 1".into()));
    }
    m1.ring().check_same(m2.ring()).map_err(crate::modcore::ModuleError::from)?;
    Ok((m1.over_field()?, m2.over_field()?))
}

/// The quotient of the free module on (diagram, x1, x2) by the relations
/// d·b ⊗ x − d ⊗ b·x, b running over the generators of TL_{n1} ⊗ TL_{n2}.
pub fn tl_fuse_explicit(m1: &Module, m2: &Module, max_free: usize) -> Result<Module, FusionError> {
    let (a, b) = regular_pair(m1, m2)?;
    let ring = a.ring().clone();
    let (n1, n2) = (a.n(), b.n());
    let n = n1 + n2;
    let name = format!("{} ×f {}", a.name(), b.name());
    if a.dim() == 0 || b.dim() == 0 {
        return Ok(Module::zero(&ring, n, Acting::Regular).renamed(&name));
    }
    let diagrams = tl_diagrams(n);
    let index: HashMap<&Diagram, usize> = diagrams.iter().enumerate().map(|(i, d)| (d, i)).collect();
    let (d1, d2) = (a.dim(), b.dim());
    let block = d1 * d2;
    let free = diagrams.len() * block;
    if free > max_free {
        return Err(FusionError::Bound(free, max_free));
    }
    let enc = |di: usize, x: usize, y: usize| di * block + x * d2 + y;
    let mut beta = BetaPow::new(&ring);

    // (global generator, acts on first factor?, local matrix)
    let mut subgens: Vec<(Diagram, bool, &Matrix)> = Vec::new();
    for (i, (_, m)) in a.generators().iter().enumerate() {
        subgens.push((Diagram::u(n, i as u32 + 1)?, true, m));
    }
    for (j, (_, m)) in b.generators().iter().enumerate() {
        subgens.push((Diagram::u(n, n1 + j as u32 + 1)?, false, m));
    }

    let mut rel = SparseEchelon::new(&ring, free);
    for (di, d) in diagrams.iter().enumerate() {
        for (g, first, m) in &subgens {
            let (dd, loops) = Diagram::compose(d, g)?;
            let ddi = index[&dd];
            let c = beta.get(loops);
            for x in 0..d1 {
                for y in 0..d2 {
                    let mut row = SparseRow::new();
                    row.insert(enc(ddi, x, y), c.clone());
                    let moved: Vec<(usize, Scalar)> = if *first {
                        (0..d1).filter(|&x2| !m.get(x2, x).is_zero()).map(|x2| (enc(di, x2, y), m.get(x2, x).clone())).collect()
                    } else {
                        (0..d2).filter(|&y2| !m.get(y2, y).is_zero()).map(|y2| (enc(di, x, y2), m.get(y2, y).clone())).collect()
                    };
                    for (k, v) in moved {
                        let e = row.entry(k).or_insert_with(|| ring.zero());
                        *e = &*e - &v;
                    }
                    row.retain(|_, v| !v.is_zero());
                    if !row.is_empty() {
                        rel.insert(row);
                    }
                }
            }
        }
    }

    let keep = rel.non_pivots();
    let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut gens = Vec::new();
    for l in generator_letters(Acting::Regular, n) {
        let crate::algebra::Letter::U(i) = l else { unreachable!("regular letters") };
        let u = Diagram::u(n, i)?;
        let mut mat = Matrix::zeros(&ring, keep.len(), keep.len());
        for (col, &f) in keep.iter().enumerate() {
            let (di, x, y) = (f / block, (f % block) / d2, f % d2);
            let (dd, loops) = Diagram::compose(&u, &diagrams[di])?;
            let v = rel.reduce(SparseRow::from([(enc(index[&dd], x, y), beta.get(loops))]));
            for (k, val) in v {
                mat.set(pos[&k], col, val);
            }
        }
        gens.push(mat);
    }
    let basis = keep
        .iter()
        .map(|&f| {
            let (di, x, y) = (f / block, (f % block) / d2, f % d2);
            format!("{} ⊗ {} ⊗ {}", diagrams[di].render(), a.basis()[x], b.basis()[y])
        })
        .collect();
    Ok(Module::new(&ring, n, Acting::Regular, basis, gens, &name)?)
}

/// S(n1,r) ×f S(n2,s) through the idempotent presentation: with ε the
/// product of the normalized arc idempotents, TL ε ⊠ TL ε maps onto
/// S ⊠ S with kernel spanned by diagrams joining two defects of one factor,
/// so the fusion is TL_N ε modulo the diagrams whose source side has an arc
/// inside one block. Needs β invertible.
pub fn tl_fuse_standard(ring: &Ring, n1: u32, r: u32, n2: u32, s: u32) -> Result<Module, FusionError> {
    if r > n1 || (n1 - r) % 2 == 1 || s > n2 || (n2 - s) % 2 == 1 {
        return Err(FusionError::Refused(format!("S({n1},{r}) or S({n2},{s}) is not a standard label")));
    }
    let ring = if ring.is_field() { ring.clone() } else { Ring::parse("ratfunc")? };
    if ring.beta().is_zero() && (r < n1 || s < n2) {
        return Err(FusionError::Refused("the idempotent presentation needs β ≠ 0".into()));
    }
    let n = n1 + n2;
    let k = r + s;
    let admissible = |right: &crate::diagram::LinkState| {
        (0..k as usize).all(|i| match right.partner(i) {
            Some(p) if p as usize > i => (i < r as usize) != ((p as usize) < r as usize),
            _ => true,
        })
    };
    let mut basis_d = Vec::new();
    for m in (k % 2..=k.min(n)).step_by(2) {
        let rights: Vec<_> = regular_link_states(k, m).into_iter().filter(|x| admissible(x)).collect();
        for l in regular_link_states(n, m) {
            for rr in &rights {
                basis_d.push(join_halves(&l, rr, 0));
            }
        }
    }
    let index: HashMap<&Diagram, usize> = basis_d.iter().enumerate().map(|(i, d)| (d, i)).collect();
    let mut beta = BetaPow::new(&ring);
    let mut gens = Vec::new();
    for i in 1..n {
        let u = Diagram::u(n, i)?;
        let mut mat = Matrix::zeros(&ring, basis_d.len(), basis_d.len());
        for (j, d) in basis_d.iter().enumerate() {
            let (img, loops) = Diagram::compose(&u, d)?;
            let (_, right, _) = split_halves(&img);
            if admissible(&right) {
                mat.add_at(index[&img], j, &beta.get(loops));
            }
        }
        gens.push(mat);
    }
    let names = basis_d.iter().map(Diagram::render).collect();
    Ok(Module::new(&ring, n, Acting::Regular, names, gens, &format!("S({n1},{r}) ×f S({n2},{s})"))?)
}
