//! Sparse rows and an echelon form grown one vector at a time.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap};

use crate::scalar::{Ring, Scalar};

pub type SparseRow = BTreeMap<usize, Scalar>;

pub fn sparse_from_dense(v: &[Scalar]) -> SparseRow {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub fn dense_from_sparse(ring: &Ring, cols: usize, v: &SparseRow) -> Vec<Scalar> {
    let mut out = vec![ring.zero(); cols];
    for (&i, x) in v {
        out[i] = x.clone();
    }
    out
}

/// `acc += c · row`, dropping cancelled entries.
pub fn axpy(acc: &mut SparseRow, c: &Scalar, row: &SparseRow) {
    for (&j, x) in row {
        let t = c * x;
        match acc.get_mut(&j) {
            Some(y) => {
                *y = &*y + &t;
                if y.is_zero() {
                    acc.remove(&j);
                }
            }
            None => {
                if !t.is_zero() {
                    acc.insert(j, t);
                }
            }
        }
    }
}

/// Semi-reduced echelon form over a field: row i has a 1 at its pivot and
/// zeros at the pivots of rows inserted before it. Reducing against the
/// rows in insertion order clears every pivot column.
#[derive(Clone, Debug)]
pub struct SparseEchelon {
    ring: Ring,
    cols: usize,
    rows: Vec<SparseRow>,
    pivots: Vec<usize>,
    row_of: HashMap<usize, usize>,
}

impl SparseEchelon {
    pub fn new(ring: &Ring, cols: usize) -> Self {
        assert!(ring.is_field(), "elimination needs a field");
        SparseEchelon { ring: ring.clone(), cols, rows: Vec::new(), pivots: Vec::new(), row_of: HashMap::new() }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.row_of.contains_key(&c)
    }

    /// The representative of `v` modulo the span with no pivot entries.
    /// Row i only introduces pivots of rows inserted after it, so rows are
    /// visited in increasing order through a heap.
    pub fn reduce(&self, mut v: SparseRow) -> SparseRow {
        let mut heap: BinaryHeap<Reverse<usize>> = v.keys().filter_map(|c| self.row_of.get(c)).map(|&r| Reverse(r)).collect();
        let mut last = None;
        while let Some(Reverse(i)) = heap.pop() {
            if last == Some(i) {
                continue;
            }
            last = Some(i);
            let p = self.pivots[i];
            let Some(c) = v.get(&p).cloned() else { continue };
            for j in self.rows[i].keys() {
                if *j != p && !v.contains_key(j) {
                    if let Some(&r) = self.row_of.get(j) {
                        heap.push(Reverse(r));
                    }
                }
            }
            axpy(&mut v, &-&c, &self.rows[i]);
        }
        v
    }

    /// Adds `v` to the span; false when it was already there.
    pub fn insert(&mut self, v: SparseRow) -> bool {
        let r = self.reduce(v);
        let Some((&p, lead)) = r.iter().next() else {
            return false;
        };
        let inv = self.ring.inv(lead).expect("nonzero pivot");
        let r: SparseRow = r.iter().map(|(&j, x)| (j, x * &inv)).collect();
        self.row_of.insert(p, self.rows.len());
        self.pivots.push(p);
        self.rows.push(r);
        true
    }

    pub fn contains(&self, v: SparseRow) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn non_pivots(&self) -> Vec<usize> {
        (0..self.cols).filter(|c| !self.row_of.contains_key(c)).collect()
    }

    /// Rows fully reduced: zero at every other pivot.
    pub fn reduced_rows(&self) -> Vec<(usize, SparseRow)> {
        let mut out: Vec<SparseRow> = self.rows.clone();
        for i in (0..out.len()).rev() {
            let mut r = std::mem::take(&mut out[i]);
            for j in i + 1..out.len() {
                if let Some(c) = r.get(&self.pivots[j]).cloned() {
                    axpy(&mut r, &-&c, &out[j]);
                }
            }
            out[i] = r;
        }
        self.pivots.iter().copied().zip(out).collect()
    }

    /// Basis of the solutions x of r·x = 0 for every row r.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let rows = self.reduced_rows();
        self.non_pivots()
            .into_iter()
            .map(|f| {
                let mut x = vec![self.ring.zero(); self.cols];
                x[f] = self.ring.one();
                for (p, r) in &rows {
                    if let Some(c) = r.get(&f) {
                        x[*p] = -c;
                    }
                }
                x
            })
            .collect()
    }
}
