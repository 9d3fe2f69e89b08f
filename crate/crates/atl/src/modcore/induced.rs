//! Indar S_{n,k} realized inside Hom(k, n) of the affine category.
//!
//! Basis elements are (k, n)-diagrams whose right arcs all cross the seam.
//! With j such arcs the right half is forced (nested around the seam), so a
//! basis element is a left link state with k − 2j defects, a winding, and j.
//! A diagram with a right arc that does not cross the seam is zero. Each
//! stratum j is a copy of the basis of W_{n,k−2j}, and the winding window
//! |w| ≤ B makes everything finite.

use serde::Serialize;

use crate::algebra::{affine_relations, Letter, Word};
use crate::diagram::{affine_link_states, join_halves, regular_link_states, split_halves, Diagram, LinkState};
use crate::linalg::Matrix;
use crate::scalar::{Ring, Scalar, XRole};

use super::cell::{build_w_free, letter_diagram, link_text};
use super::{generator_letters, Acting, Module, ModuleError};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndarBasis {
    /// Number of right arcs.
    pub j: u32,
    /// Left half, with k − 2j defects.
    pub state: LinkState,
    /// Winding of the through lines, or loop count when k = 2j.
    pub w: i64,
}

impl IndarBasis {
    pub fn render(&self) -> String {
        format!("j{}:{}:w{}", self.j, link_text(&self.state), self.w)
    }
}

#[derive(Clone, Debug)]
pub struct InducedStandard {
    ring: Ring,
    n: u32,
    k: u32,
    /// Right half with j nested seam arcs, indexed by j.
    rights: Vec<LinkState>,
    /// Left halves of stratum j.
    states: Vec<Vec<LinkState>>,
}

impl InducedStandard {
    pub fn new(ring: &Ring, n: u32, k: u32) -> Result<Self, ModuleError> {
        if k > n || (n - k) % 2 == 1 {
            return Err(ModuleError::Parity(n, k));
        }
        if ring.x_role() != Some(XRole::Winding) {
            return Err(ModuleError::RingKind("Indar S needs the generic-t ring".into()));
        }
        if (k == 0 || k == 2) && ring.beta().is_zero() {
            return Err(ModuleError::Unsupported("Indar S_{n,k} with k ∈ {0, 2} needs β ≠ 0".into()));
        }
        let all_defects = regular_link_states(k, k).pop().expect("one state");
        let rights = (0..=k / 2).map(|j| all_defects.unsurgery(j).expect("enough defects")).collect();
        let states = (0..=k / 2).map(|j| affine_link_states(n, k - 2 * j)).collect();
        Ok(InducedStandard { ring: ring.clone(), n, k, rights, states })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn strata(&self) -> u32 {
        self.k / 2 + 1
    }

    pub fn stratum_states(&self, j: u32) -> &[LinkState] {
        &self.states[j as usize]
    }

    /// The (k, n)-diagram of a basis element.
    pub fn diagram(&self, b: &IndarBasis) -> Diagram {
        join_halves(&b.state, &self.rights[b.j as usize], b.w)
    }

    /// Read a (k, n)-diagram as a basis element; `None` when some right
    /// arc stays on one side of the seam (the element is zero).
    pub fn classify(&self, d: &Diagram) -> Result<Option<IndarBasis>, ModuleError> {
        let (left, right, w) = split_halves(d);
        let kk = self.k as i64;
        for i in 0..self.k as usize {
            if let Some(g) = right.partner(i) {
                if (0..kk).contains(&g) {
                    return Ok(None);
                }
            }
        }
        let j = (self.k - left.k()) / 2;
        if right != self.rights[j as usize] {
            return Err(ModuleError::Unsupported(format!("unexpected right half {}", link_text(&right))));
        }
        Ok(Some(IndarBasis { j, state: left, w }))
    }

    /// Action of one generator: a single basis element times β^c, or zero.
    pub fn act(&self, l: Letter, b: &IndarBasis) -> Result<Option<(IndarBasis, Scalar)>, ModuleError> {
        let g = letter_diagram(self.n, l)?;
        let (d, loops) = Diagram::compose(&g, &self.diagram(b))?;
        Ok(self.classify(&d)?.map(|img| (img, self.ring.pow(&self.ring.beta(), loops as u64))))
    }

    /// Action of a word (rightmost letter first).
    pub fn act_word(&self, w: &Word, b: &IndarBasis) -> Result<Option<(IndarBasis, Scalar)>, ModuleError> {
        let mut cur = (b.clone(), self.ring.one());
        for &l in w.letters().iter().rev() {
            match self.act(l, &cur.0)? {
                None => return Ok(None),
                Some((img, c)) => cur = (img, &cur.1 * &c),
            }
        }
        Ok(Some(cur))
    }

    /// Basis elements with |w| ≤ bound (0 ≤ w ≤ bound loops when k = 2j).
    pub fn window(&self, bound: i64) -> Vec<IndarBasis> {
        let mut out = Vec::new();
        for j in 0..self.strata() {
            let range = if self.k == 2 * j { 0..=bound } else { -bound..=bound };
            for state in &self.states[j as usize] {
                for w in range.clone() {
                    out.push(IndarBasis { j, state: state.clone(), w });
                }
            }
        }
        out
    }

    /// Image under i_k : Indar S_{n,k−2} → Indar S_{n,k}.
    pub fn embed(b: &IndarBasis) -> IndarBasis {
        IndarBasis { j: b.j + 1, ..b.clone() }
    }

    /// Stratum j modulo strata > j, as a module over the t-ring with the
    /// winding written as a power of t.
    pub fn stratum_module(&self, j: u32) -> Result<Module, ModuleError> {
        let ring = &self.ring;
        let states = &self.states[j as usize];
        let mut gens = Vec::new();
        for l in generator_letters(Acting::Affine, self.n) {
            let mut m = Matrix::zeros(ring, states.len(), states.len());
            for (c, s) in states.iter().enumerate() {
                let b = IndarBasis { j, state: s.clone(), w: 0 };
                if let Some((img, coeff)) = self.act(l, &b)? {
                    if img.j == j {
                        let r = states.iter().position(|x| *x == img.state).expect("state in stratum");
                        m.add_at(r, c, &(&coeff * &ring.x_pow(img.w)?));
                    }
                }
            }
            gens.push(m);
        }
        let basis = states.iter().map(link_text).collect();
        Module::new(ring, self.n, Acting::Affine, basis, gens, &format!("Indar S({},{}) stratum {j}", self.n, self.k))
    }

    /// All structural checks on the winding window |w| ≤ bound.
    pub fn check(&self, bound: i64) -> Result<IndarReport, ModuleError> {
        let ring = &self.ring;
        let n = self.n;
        let mut strata = Vec::new();
        let mut quotients_match = true;
        for j in 0..self.strata() {
            let kj = self.k - 2 * j;
            let sub = self.stratum_module(j)?;
            let w = build_w_free(ring, n, kj)?;
            let same = sub.generators().iter().zip(w.generators()).all(|((_, a), (_, b))| a == b);
            quotients_match &= same;
            strata.push(StratumReport { j, defects: kj, rank: sub.dim(), w_rank: w.dim(), action_matches_w: same });
        }
        let window = self.window(bound);
        let letters = generator_letters(Acting::Affine, n);
        // right winding only shifts w inside a stratum
        let mut winding_shift = true;
        for b in window.iter().filter(|b| b.w == 0 && self.k > 2 * b.j) {
            for &l in &letters {
                let base = self.act(l, b)?;
                for s in [-bound, bound] {
                    let shifted = IndarBasis { w: s, ..b.clone() };
                    let img = self.act(l, &shifted)?;
                    if let (Some((x, cx)), Some((y, cy))) = (&base, &img) {
                        if x.j == b.j && (y.j != x.j || y.state != x.state || y.w != x.w + s || cx != cy) {
                            winding_shift = false;
                        }
                    }
                }
            }
        }
        let beta = ring.beta();
        let mut relations_hold = true;
        let rels = affine_relations(n);
        for b in &window {
            for (_, a, c) in &rels {
                relations_hold &= self.act_word(a, b)? == self.act_word(c, b)?;
            }
            if n >= 2 {
                for i in 0..n as i64 {
                    let ee = self.act_word(&Word::new(n, vec![Letter::E(i), Letter::E(i)])?, b)?;
                    let e = self.act(Letter::E(i), b)?.map(|(x, c)| (x, &c * &beta));
                    relations_hold &= ee.filter(|(_, c)| !c.is_zero()) == e.filter(|(_, c)| !c.is_zero());
                }
            }
        }
        let mut embedding_intertwines = true;
        if self.k >= 2 {
            let lower = InducedStandard::new(ring, n, self.k - 2)?;
            let cap = join_halves(&regular_link_states(self.k - 2, self.k - 2)[0], &self.rights[1], 0);
            for b in lower.window(bound) {
                let (d, loops) = Diagram::compose(&lower.diagram(&b), &cap)?;
                embedding_intertwines &= loops == 0 && d == self.diagram(&Self::embed(&b));
                for &l in &letters {
                    let up = self.act(l, &Self::embed(&b))?;
                    let down = lower.act(l, &b)?.map(|(x, c)| (Self::embed(&x), c));
                    embedding_intertwines &= up == down;
                }
            }
        }
        Ok(IndarReport {
            n,
            k: self.k,
            window: bound,
            strata,
            quotients_match_w: quotients_match,
            winding_shift,
            relations_hold,
            embedding_intertwines,
            equals_w: self.strata() == 1 && quotients_match,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StratumReport {
    pub j: u32,
    pub defects: u32,
    pub rank: usize,
    pub w_rank: usize,
    pub action_matches_w: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IndarReport {
    pub n: u32,
    pub k: u32,
    pub window: i64,
    pub strata: Vec<StratumReport>,
    /// Every stratum modulo the higher ones acts as W_{n,k−2j}; j = 0 is
    /// the quotient by the image of Indar S_{n,k−2}.
    pub quotients_match_w: bool,
    pub winding_shift: bool,
    pub relations_hold: bool,
    pub embedding_intertwines: bool,
    /// Only one stratum and it is W_{n,k} (k ∈ {0, 1}).
    pub equals_w: bool,
}

impl IndarReport {
    pub fn pass(&self) -> bool {
        self.quotients_match_w
            && self.winding_shift
            && self.relations_hold
            && self.embedding_intertwines
            && self.strata.iter().all(|s| s.rank == s.w_rank)
            && (self.k > 1 || self.equals_w)
    }
}
