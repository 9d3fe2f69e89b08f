//! Intertwiner spaces, End dimensions and composition factors of concrete
//! modules.
//!
//! `hom_space` spans the source by a BFS tree of generator images, so an
//! intertwiner is fixed by the images of the tree roots; the relations come
//! from rewriting each generator image in the tree basis. The per-generator
//! nullspace intersection of `hom_space_nullspace` solves for all matrix
//! entries at once and serves as an independent check at small sizes.

use std::collections::VecDeque;

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::labels::ModuleLabel;
use crate::linalg::{rref, sparse_from_dense, Matrix, SparseEchelon, SparseRow};
use crate::modcore::{Module, ModuleError};
use crate::scalar::{Ring, Scalar, ScalarError};

#[derive(Debug, Error)]
pub enum HomError {
    #[error("modules act on different algebras or sizes")]
    Incompatible,
    #[error("system too large for the nullspace method: {0} unknowns")]
    TooLarge(usize),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HomMethod {
    Cyclic,
    Nullspace,
}

#[derive(Clone, Debug)]
pub struct IntertwinerSpace {
    pub source: String,
    pub target: String,
    pub dim: usize,
    /// Matrices F with F·ρ_source(g) = ρ_target(g)·F, over the field used.
    pub basis: Vec<Matrix>,
    pub method: HomMethod,
    pub ring: Ring,
}

#[derive(Serialize)]
struct SpaceJson<'a> {
    source: &'a str,
    target: &'a str,
    dim: usize,
    method: HomMethod,
    basis: Vec<Vec<(usize, usize, String)>>,
}

impl IntertwinerSpace {
    /// Checks the intertwining identity for every basis matrix.
    pub fn verify(&self, a: &Module, b: &Module) -> Result<bool, HomError> {
        let (a, b) = prepare(a, b)?;
        let r = &self.ring;
        Ok(self.basis.iter().all(|f| {
            a.generators().iter().zip(b.generators()).all(|((_, ga), (_, gb))| f.mul(r, ga) == gb.mul(r, f))
        }))
    }

    pub fn to_json(&self, with_basis: bool) -> serde_json::Value {
        let basis = if with_basis { self.basis.iter().map(|m| m.triplets(&self.ring)).collect() } else { Vec::new() };
        serde_json::to_value(SpaceJson {
            source: &self.source,
            target: &self.target,
            dim: self.dim,
            method: self.method,
            basis,
        })
        .expect("serializable")
    }
}

/// Both modules over the same field, acting by the same algebra.
fn prepare(a: &Module, b: &Module) -> Result<(Module, Module), HomError> {
    if a.n() != b.n() || a.acting() != b.acting() {
        return Err(HomError::Incompatible);
    }
    a.ring().check_same(b.ring())?;
    Ok((a.over_field()?, b.over_field()?))
}

fn unit(ring: &Ring, d: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![ring.zero(); d];
    v[i] = ring.one();
    v
}

pub fn invert(ring: &Ring, m: &Matrix) -> Option<Matrix> {
    let d = m.rows();
    let mut aug = Matrix::zeros(ring, d, 2 * d);
    for (i, j, x) in m.entries() {
        aug.set(i, j, x.clone());
    }
    for i in 0..d {
        aug.set(i, d + i, ring.one());
    }
    let (_, e) = rref(ring, &aug);
    if e.pivots.len() < d || e.pivots.iter().any(|&p| p >= d) {
        return None;
    }
    let cols: Vec<usize> = (d..2 * d).collect();
    let rows: Vec<usize> = (0..d).collect();
    Some(e.matrix.select(&rows, &cols))
}

enum Origin {
    Root(usize),
    Step(usize, usize),
}

/// Hom_A(a, b) by the cyclic-generator method.
pub fn hom_space(a: &Module, b: &Module) -> Result<IntertwinerSpace, HomError> {
    let (a, b) = prepare(a, b)?;
    let ring = a.ring().clone();
    let (da, db) = (a.dim(), b.dim());
    let ga: Vec<&Matrix> = a.generators().iter().map(|(_, m)| m).collect();
    let gb: Vec<&Matrix> = b.generators().iter().map(|(_, m)| m).collect();
    let done = |basis: Vec<Matrix>| IntertwinerSpace {
        source: a.name().to_string(),
        target: b.name().to_string(),
        dim: basis.len(),
        basis,
        method: HomMethod::Cyclic,
        ring: ring.clone(),
    };
    if da == 0 || db == 0 {
        return Ok(done(Vec::new()));
    }

    // BFS tree spanning a
    let mut span = SparseEchelon::new(&ring, da);
    let mut tree: Vec<Vec<Scalar>> = Vec::new();
    let mut origin: Vec<Origin> = Vec::new();
    let mut roots = 0;
    for i in 0..da {
        let e = unit(&ring, da, i);
        if !span.insert(sparse_from_dense(&e)) {
            continue;
        }
        tree.push(e);
        origin.push(Origin::Root(roots));
        roots += 1;
        let mut queue = VecDeque::from([tree.len() - 1]);
        while let Some(j) = queue.pop_front() {
            for (g, m) in ga.iter().enumerate() {
                let v = m.apply(&ring, &tree[j]);
                if span.insert(sparse_from_dense(&v)) {
                    tree.push(v);
                    origin.push(Origin::Step(j, g));
                    queue.push_back(tree.len() - 1);
                }
            }
        }
    }
    let t = Matrix::from_rows(&ring, da, tree.clone()).transpose();
    let t_inv = invert(&ring, &t).expect("tree vectors form a basis");

    // Y ∈ b^roots; tree vector j maps to P_j · Y
    let u = db * roots;
    let mut p: Vec<Matrix> = Vec::with_capacity(da);
    for o in &origin {
        p.push(match *o {
            Origin::Root(r) => {
                let mut m = Matrix::zeros(&ring, db, u);
                for i in 0..db {
                    m.set(i, r * db + i, ring.one());
                }
                m
            }
            Origin::Step(j, g) => gb[g].mul(&ring, &p[j]),
        });
    }

    let mut eqs = SparseEchelon::new(&ring, u);
    'outer: for (j, tj) in tree.iter().enumerate() {
        for (g, m) in ga.iter().enumerate() {
            let coords = t_inv.apply(&ring, &m.apply(&ring, tj));
            let mut lhs = gb[g].mul(&ring, &p[j]);
            for (i, c) in coords.iter().enumerate() {
                if !c.is_zero() {
                    lhs = lhs.sub(&p[i].scale(c));
                }
            }
            for r in 0..db {
                let row: SparseRow = sparse_from_dense(lhs.row(r));
                if !row.is_empty() {
                    eqs.insert(row);
                }
            }
            if eqs.is_full() {
                break 'outer;
            }
        }
    }
    let mut basis = Vec::new();
    for y in eqs.nullspace() {
        let mut ft = Matrix::zeros(&ring, db, da);
        for (j, pj) in p.iter().enumerate() {
            for (i, x) in pj.apply(&ring, &y).into_iter().enumerate() {
                ft.set(i, j, x);
            }
        }
        basis.push(ft.mul(&ring, &t_inv));
    }
    Ok(done(basis))
}

/// Hom_A(a, b) by intersecting the solution spaces generator by generator.
pub fn hom_space_nullspace(a: &Module, b: &Module) -> Result<IntertwinerSpace, HomError> {
    let (a, b) = prepare(a, b)?;
    let ring = a.ring().clone();
    let (da, db) = (a.dim(), b.dim());
    if da * db > 1600 {
        return Err(HomError::TooLarge(da * db));
    }
    let mut basis: Vec<Matrix> = Vec::with_capacity(da * db);
    for i in 0..db {
        for j in 0..da {
            let mut m = Matrix::zeros(&ring, db, da);
            m.set(i, j, ring.one());
            basis.push(m);
        }
    }
    for ((_, ma), (_, mb)) in a.generators().iter().zip(b.generators()) {
        if basis.is_empty() {
            break;
        }
        let defects: Vec<Matrix> = basis.iter().map(|f| f.mul(&ring, ma).sub(&mb.mul(&ring, f))).collect();
        let mut eqs = SparseEchelon::new(&ring, basis.len());
        for r in 0..db {
            for c in 0..da {
                let row: SparseRow = defects
                    .iter()
                    .enumerate()
                    .filter(|(_, d)| !d.get(r, c).is_zero())
                    .map(|(t, d)| (t, d.get(r, c).clone()))
                    .collect();
                if !row.is_empty() {
                    eqs.insert(row);
                }
            }
        }
        basis = eqs
            .nullspace()
            .into_iter()
            .map(|lam| {
                let mut f = Matrix::zeros(&ring, db, da);
                for (l, m) in lam.iter().zip(&basis) {
                    if !l.is_zero() {
                        f = f.add(&m.scale(l));
                    }
                }
                f
            })
            .collect();
    }
    Ok(IntertwinerSpace {
        source: a.name().to_string(),
        target: b.name().to_string(),
        dim: basis.len(),
        basis,
        method: HomMethod::Nullspace,
        ring,
    })
}

pub fn end_dim(a: &Module) -> Result<usize, HomError> {
    Ok(hom_space(a, a)?.dim)
}

/// Composition factors read off from traces.
#[derive(Clone, Debug, Serialize)]
pub struct FactorReport {
    pub factors: Vec<(String, u32)>,
    #[serde(skip)]
    pub labels: Vec<(Option<ModuleLabel>, u32)>,
    /// The candidate characters are independent on the sampled words, the
    /// multiplicities are non-negative integers and the dimensions add up.
    pub certain: bool,
    pub words: usize,
    pub note: String,
}

impl FactorReport {
    /// Labels with positive multiplicity, each repeated.
    pub fn label_multiset(&self) -> Vec<ModuleLabel> {
        let mut out = Vec::new();
        for (l, m) in &self.labels {
            if let Some(l) = l {
                out.extend(std::iter::repeat_n(*l, *m as usize));
            }
        }
        out.sort();
        out
    }
}

/// Matrix of a letter word, multiplied right to left so the sparse
/// generator is always the left factor.
fn word_trace(ring: &Ring, m: &Module, word: &[usize]) -> Scalar {
    let gens = m.generators();
    let mut acc = match word.last() {
        Some(&g) => gens[g].1.clone(),
        None => Matrix::identity(ring, m.dim()),
    };
    for &g in word.iter().rev().skip(1) {
        acc = gens[g].1.mul(ring, &acc);
    }
    (0..m.dim()).fold(ring.zero(), |s, i| &s + acc.get(i, i))
}

fn as_count(ring: &Ring, s: &Scalar, max: usize) -> Option<u32> {
    (0..=max as i64).find(|&k| *s == ring.int(k)).map(|k| k as u32)
}

/// Traces are additive along composition series and the characters of
/// pairwise non-isomorphic simple modules are linearly independent, so
/// tr_M = Σ m_L tr_L determines the multiplicities once enough words
/// separate the candidates.
pub fn factor_multiset(m: &Module, candidates: &[Module]) -> Result<FactorReport, HomError> {
    let fm = m.over_field()?;
    let ring = fm.ring().clone();
    let cands: Vec<Module> = candidates
        .iter()
        .map(|c| {
            if c.n() != m.n() || c.acting() != m.acting() {
                return Err(HomError::Incompatible);
            }
            c.ring().check_same(m.ring())?;
            Ok(c.over_field()?)
        })
        .collect::<Result<_, HomError>>()?;
    let k = cands.len();
    if fm.dim() == 0 {
        return Ok(FactorReport {
            factors: vec![],
            labels: vec![],
            certain: true,
            words: 0,
            note: "zero module".into(),
        });
    }
    let letters = fm.generators().len();
    let mut rng = ChaCha8Rng::seed_from_u64(0x7a11);
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    words.extend((0..letters).map(|g| vec![g]));
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut char_rank = SparseEchelon::new(&ring, k.max(1));
    let mut extra = 0;
    let budget = 40 + 12 * k;
    let mut w = 0;
    while w < budget {
        if w >= words.len() {
            let len = rng.gen_range(2..=6);
            words.push((0..len).map(|_| rng.gen_range(0..letters)).collect());
        }
        let word = &words[w];
        let mut row: Vec<Scalar> = cands.iter().map(|c| word_trace(&ring, c, word)).collect();
        let grew = k > 0 && char_rank.insert(sparse_from_dense(&row));
        row.push(word_trace(&ring, &fm, word));
        rows.push(row);
        w += 1;
        if char_rank.rank() == k && !grew {
            extra += 1;
            if extra >= 8 {
                break;
            }
        }
    }
    let aug = Matrix::from_rows(&ring, k + 1, rows);
    let (_, e) = rref(&ring, &aug);
    let independent = e.pivots.len() >= k && e.pivots.iter().take(k).enumerate().all(|(i, &p)| p == i);
    let consistent = !e.pivots.contains(&k);
    let mut labels = Vec::new();
    let mut factors = Vec::new();
    let mut integral = true;
    let mut total = 0usize;
    if independent && consistent {
        for (i, c) in cands.iter().enumerate() {
            match as_count(&ring, e.matrix.get(i, k), fm.dim()) {
                Some(mult) => {
                    total += mult as usize * c.dim();
                    if mult > 0 {
                        labels.push((c.label(), mult));
                        factors.push((c.name().to_string(), mult));
                    }
                }
                None => integral = false,
            }
        }
    }
    let closes = total == fm.dim();
    let certain = independent && consistent && integral && closes;
    let note = if certain {
        "characters separate the candidates".to_string()
    } else if !independent {
        "candidate characters are dependent on the sampled words".to_string()
    } else if !consistent {
        "the character is not a combination of the candidates".to_string()
    } else if !integral {
        "multiplicities are not non-negative integers".to_string()
    } else {
        format!("dimensions do not close: {total} of {}", fm.dim())
    };
    Ok(FactorReport { factors, labels, certain, words: w, note })
}

/// An invertible intertwiner a → b, searched among seeded random integer
/// combinations of a Hom basis. `None` does not prove non-isomorphism.
pub fn find_isomorphism(a: &Module, b: &Module, tries: usize) -> Result<Option<Matrix>, HomError> {
    if a.dim() != b.dim() {
        return Ok(None);
    }
    let h = hom_space(a, b)?;
    if h.dim == 0 {
        return Ok(if a.dim() == 0 { Some(Matrix::zeros(&h.ring, 0, 0)) } else { None });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x150);
    for t in 0..tries {
        let mut f = Matrix::zeros(&h.ring, b.dim(), a.dim());
        for m in &h.basis {
            let c = if t == 0 { 1 } else { rng.gen_range(-9..=9) };
            f = f.add(&m.scale(&h.ring.int(c)));
        }
        if invert(&h.ring, &f).is_some() {
            return Ok(Some(f));
        }
    }
    Ok(None)
}
