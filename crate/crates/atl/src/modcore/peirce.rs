//! Graded count behind aTL_n ≃ ⊕_k dim S_{n,k} · Indar S_{n,k}.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::algebra::Letter;
use crate::diagram::{join_halves, regular_link_states, Diagram};
use crate::scalar::{Ring, XRole};

use super::cell::letter_diagram;
use super::induced::InducedStandard;
use super::{generator_letters, Acting, ModuleError};

#[derive(Clone, Debug, Serialize)]
pub struct PeirceReport {
    pub n: u32,
    pub bound: u32,
    /// End(n) diagrams with rank ≤ B and at most B non-contractible loops,
    /// found by closing the identity under the generators.
    pub diagrams: usize,
    /// Σ_k dim S_{n,k} × (Indar S_{n,k} basis elements in the same range),
    /// each glued to a right half through the stratum-to-W correspondence.
    pub induced: usize,
    /// Contribution of each k to `induced`.
    pub per_k: Vec<(u32, usize)>,
    /// The two sets coincide as sets of diagrams, not only in size.
    pub same_sets: bool,
    pub pass: bool,
}

fn in_range(d: &Diagram, bound: u32) -> bool {
    d.rank() <= bound && d.nc_loops() <= bound
}

/// Every End(n) diagram reachable from 1 through diagrams of rank ≤ cap.
fn closure(n: u32, bound: u32, cap: u32) -> Result<HashSet<Diagram>, ModuleError> {
    let gens: Vec<Diagram> = generator_letters(Acting::Affine, n)
        .into_iter()
        .map(|l: Letter| letter_diagram(n, l))
        .collect::<Result<_, _>>()?;
    let start = Diagram::identity(n);
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(d) = queue.pop_front() {
        for g in &gens {
            let (next, _) = Diagram::compose(g, &d)?;
            if next.rank() <= cap && next.nc_loops() <= bound && seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(seen.into_iter().filter(|d| in_range(d, bound)).collect())
}

pub fn peirce_count_check(n: u32, bound: u32) -> Result<PeirceReport, ModuleError> {
    if n == 0 || n > 6 || bound > 4 {
        return Err(ModuleError::Unsupported("Peirce count is limited to 1 ≤ n ≤ 6 and B ≤ 4".into()));
    }
    let lhs = closure(n, bound, bound + 2 * n)?;
    // a diagram of rank ≤ B has |w| ≤ B + n
    let wmax = (bound + n) as i64;
    let t_ring = Ring::generic_x(XRole::Winding);
    let mut rhs = HashSet::new();
    let mut per_k = Vec::new();
    let mut total = 0;
    let mut injective = true;
    for k in (n % 2..=n).step_by(2) {
        let induced = InducedStandard::new(&t_ring, n, k)?;
        let mut count = 0;
        for s in regular_link_states(n, k) {
            for j in 0..=k / 2 {
                let right = s.unsurgery(j).expect("k defects");
                for b in induced.window(wmax).iter().filter(|b| b.j == j) {
                    let d = join_halves(&b.state, &right, b.w);
                    if in_range(&d, bound) {
                        count += 1;
                        injective &= rhs.insert(d);
                    }
                }
            }
        }
        per_k.push((k, count));
        total += count;
    }
    let same_sets = injective && lhs == rhs;
    Ok(PeirceReport { n, bound, diagrams: lhs.len(), induced: total, per_k, same_sets, pass: same_sets && lhs.len() == total })
}
