//! Successors, the weakest order ⪯ and its ladders.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::scalar::Ring;

use super::{LabelError, ModuleLabel, QParam, Unit, ZSpec};

/// A pair (k, z) of Λ^a with z stored in canonical form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Pair {
    pub k: u32,
    pub z: ZSpec,
}

impl Pair {
    pub fn new(p: &QParam, k: u32, z: ZSpec) -> Pair {
        let z = match p.key(k, z) {
            Some((sign, r)) => ZSpec::power(sign, r),
            None => z,
        };
        Pair { k, z }
    }

    fn unit(&self) -> Option<Unit> {
        match self.z {
            ZSpec::Power { sign, r } => Some((sign, r)),
            ZSpec::Formal => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Cond {
    A,
    B,
    AB,
}

/// Direct successors (j, y), j = k + 2m ≤ n, m ≥ 1: either
/// (A) z² = (−q)^j, y = z(−q)^{−m} or (B) z² = (−q)^{−j}, y = z(−q)^m.
pub fn successors(p: &QParam, x: Pair, n: u32) -> Vec<(Pair, Cond)> {
    let Some((sign, r)) = x.unit() else { return Vec::new() };
    let reps: Vec<(i8, i64)> = if x.k == 0 { vec![(sign, r), (sign, -r)] } else { vec![(sign, r)] };
    let mut out: Vec<(Pair, Cond)> = Vec::new();
    let mut push = |pair: Pair, c: Cond| match out.iter_mut().find(|(q, _)| *q == pair) {
        Some((_, old)) if *old != c => *old = Cond::AB,
        Some(_) => {}
        None => out.push((pair, c)),
    };
    let mut j = x.k + 2;
    while j <= n {
        let m = ((j - x.k) / 2) as i64;
        for &(s, e) in &reps {
            // z² = v^{2e}, (−q)^j = v^{2j}
            if p.v_eq(2 * e, 2 * j as i64) {
                push(Pair::new(p, j, ZSpec::power(s, e - 2 * m)), Cond::A);
            }
            if p.v_eq(2 * e, -2 * j as i64) {
                push(Pair::new(p, j, ZSpec::power(s, e + 2 * m)), Cond::B);
            }
        }
        j += 2;
    }
    out
}

/// Everything ⪰ x inside Λ^a_n, x included.
pub fn closure(p: &QParam, x: Pair, n: u32) -> BTreeSet<Pair> {
    let mut seen = BTreeSet::from([x]);
    let mut queue = VecDeque::from([x]);
    while let Some(y) = queue.pop_front() {
        for (s, _) in successors(p, y, n) {
            if seen.insert(s) {
                queue.push_back(s);
            }
        }
    }
    seen
}

/// (k, z) ⪯ (j, y).
pub fn precedes(p: &QParam, lower: Pair, upper: Pair, n: u32) -> bool {
    closure(p, lower, n).contains(&upper)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LadderFamily {
    K,
    J,
    I,
    H,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LadderNode {
    pub pair: Pair,
    /// Family memberships (a pair can belong to several under coincidences).
    pub families: Vec<(LadderFamily, u32)>,
}

/// `upper` succeeds `lower` directly, covering in the order restricted to the ladder.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LadderEdge {
    pub lower: Pair,
    pub upper: Pair,
    pub cond: Cond,
}

/// Root-of-unity data of the four families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LadderShape {
    pub s: i64,
    pub r: i64,
    /// z = (−1)^m v^r.
    pub m: u8,
    pub delta_i: i64,
    pub delta_h: i64,
    pub i0: i64,
    pub j0: i64,
    pub h0: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrderLadder {
    pub n: u32,
    pub start: Pair,
    pub ell: Option<u32>,
    pub shape: Option<LadderShape>,
    /// The nodes ⪰ start in Λ^a_n, by increasing k.
    pub nodes: Vec<LadderNode>,
    pub edges: Vec<LadderEdge>,
    /// Some of (k_0, u_0), (j_0, y_0), (i_0, x_0), (h_0, v_0) coincide.
    pub coincidence: bool,
    pub linear_chain: bool,
    /// The family formulas reproduce the successor closure inside Λ^a_n.
    pub families_exhaustive: bool,
    /// Coincidences may hide arrows that the family formulas do not display.
    pub possibly_incomplete: bool,
}

fn family_pair(p: &QParam, k: i64, m: u8, e: i64) -> Option<Pair> {
    (k >= 0).then(|| Pair::new(p, k as u32, ZSpec::power(if m == 1 { -1 } else { 1 }, e)))
}

/// The four families for a start with infinitely many successors.
fn shape(p: &QParam, start: Pair) -> Option<LadderShape> {
    let ell = p.ell? as i64;
    let (sign, e) = start.unit()?;
    let s = start.k as i64;
    let r = (1..=2 * ell).map(|t| s + 2 * t).find(|&r| p.v_eq(2 * e, 2 * r))?;
    let m = if p.canon(sign, e) == p.canon(1, r) { 0 } else { 1 };
    let two_l = 2 * ell;
    let smallest_above = |base: i64, bound: i64| {
        // least multiple δ of 2ℓ with base + δ > bound
        let d = (bound - base).div_euclid(two_l) + 1;
        d * two_l
    };
    let delta_i = smallest_above(-r, s);
    let i0 = -r + delta_i;
    let j0 = r;
    let delta_h = smallest_above(-s, i0.max(j0));
    Some(LadderShape { s, r, m, delta_i, delta_h, i0, j0, h0: -s + delta_h })
}

fn family_members(p: &QParam, sh: &LadderShape, n: u32) -> Vec<(LadderFamily, u32, Pair)> {
    let l = p.ell.expect("root of unity") as i64;
    let mut out = Vec::new();
    for a in 0.. {
        let al = a * l;
        let cands = [
            (LadderFamily::K, sh.s + 2 * al, sh.r + 2 * al),
            (LadderFamily::J, sh.r + 2 * al, sh.s + 2 * al),
            (LadderFamily::I, sh.i0 + 2 * al, -sh.s + sh.delta_i + 2 * al),
            (LadderFamily::H, sh.h0 + 2 * al, -sh.r + sh.delta_h + 2 * al),
        ];
        let mut any = false;
        for (f, k, e) in cands {
            if k <= n as i64 {
                any = true;
                if let Some(pair) = family_pair(p, k, sh.m, e) {
                    out.push((f, a as u32, pair));
                }
            }
        }
        if !any {
            break;
        }
    }
    out
}

/// Covering relations of ⪯ on `nodes`, each tagged with the condition it solves.
fn hasse(p: &QParam, nodes: &BTreeSet<Pair>, n: u32) -> Vec<LadderEdge> {
    let above: HashMap<Pair, BTreeSet<Pair>> =
        nodes.iter().map(|&x| (x, closure(p, x, n).into_iter().filter(|y| *y != x).collect())).collect();
    let mut edges = Vec::new();
    for &x in nodes {
        for (y, cond) in successors(p, x, n) {
            if !nodes.contains(&y) {
                continue;
            }
            let covered = above[&x].iter().any(|&w| w != y && above[&w].contains(&y));
            if !covered {
                edges.push(LadderEdge { lower: x, upper: y, cond });
            }
        }
    }
    edges
}

pub fn order_ladder(p: &QParam, n: u32, k: u32, z: ZSpec) -> Result<OrderLadder, LabelError> {
    if k > n || (n - k) % 2 == 1 {
        return Err(LabelError::Parity(n, k));
    }
    if z == ZSpec::Formal && !p.is_generic() {
        return Err(LabelError::Ring(
            "successors at a root of unity need z to be a 4ℓ-th root of unity; a formal z has none".into(),
        ));
    }
    let start = Pair::new(p, k, z);
    let closed = closure(p, start, n);
    let shape = shape(p, start);
    let mut nodes: Vec<LadderNode> =
        closed.iter().map(|&pair| LadderNode { pair, families: Vec::new() }).collect();
    let (mut coincidence, mut exhaustive) = (false, true);
    if let Some(sh) = &shape {
        let members = family_members(p, sh, n);
        let fam_set: HashSet<Pair> = members.iter().map(|m| m.2).collect();
        exhaustive = fam_set.len() == closed.len() && closed.iter().all(|x| fam_set.contains(x));
        for (f, a, pair) in members {
            if let Some(node) = nodes.iter_mut().find(|nd| nd.pair == pair) {
                node.families.push((f, a));
            }
        }
        // families intersect somewhere, looked at past the truncation
        let reach = (sh.h0.max(sh.i0).max(sh.j0) + 4 * p.ell.unwrap_or(1) as i64).max(n as i64) as u32;
        let all = family_members(p, sh, reach);
        coincidence = all.iter().map(|m| m.2).collect::<HashSet<_>>().len() < all.len();
    }
    nodes.sort_by_key(|nd| nd.pair);
    let edges = hasse(p, &closed, n);
    let linear_chain = {
        let mut ups: HashMap<Pair, usize> = HashMap::new();
        let mut downs: HashMap<Pair, usize> = HashMap::new();
        for e in &edges {
            *ups.entry(e.lower).or_default() += 1;
            *downs.entry(e.upper).or_default() += 1;
        }
        ups.values().all(|&c| c <= 1) && downs.values().all(|&c| c <= 1)
    };
    Ok(OrderLadder {
        n,
        start,
        ell: p.ell,
        shape,
        nodes,
        edges,
        coincidence,
        linear_chain,
        families_exhaustive: exhaustive,
        possibly_incomplete: coincidence,
    })
}

impl OrderLadder {
    /// Checks each edge's condition with ring arithmetic: z² against (−q)^{±j}
    /// and y against z(−q)^{∓m}.
    pub fn verify_edges(&self, ring: &Ring) -> Result<bool, LabelError> {
        let err = |e: crate::scalar::ScalarError| LabelError::Ring(e.to_string());
        let mq = ring.q().scale_int(-1);
        for e in &self.edges {
            let reps = if e.lower.k == 0 { vec![e.lower.z, e.lower.z.inverse()] } else { vec![e.lower.z] };
            let m = ((e.upper.k - e.lower.k) / 2) as i64;
            let y = e.upper.z.value(ring).map_err(err)?;
            let y_alt = e.upper.z.inverse().value(ring).map_err(err)?;
            let y_ok = |cand: &crate::scalar::Scalar| *cand == y || (e.upper.k == 0 && *cand == y_alt);
            let j = e.upper.k as i64;
            let mut a_ok = false;
            let mut b_ok = false;
            for z in reps {
                let zv = z.value(ring).map_err(err)?;
                let z2 = &zv * &zv;
                if z2 == ring.ipow(&mq, j).map_err(err)? && y_ok(&(&zv * &ring.ipow(&mq, -m).map_err(err)?)) {
                    a_ok = true;
                }
                if z2 == ring.ipow(&mq, -j).map_err(err)? && y_ok(&(&zv * &ring.ipow(&mq, m).map_err(err)?)) {
                    b_ok = true;
                }
            }
            let ok = match e.cond {
                Cond::A => a_ok,
                Cond::B => b_ok,
                Cond::AB => a_ok && b_ok,
            };
            if !ok || e.upper.k <= e.lower.k {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn node(&self, f: LadderFamily, a: u32) -> Option<Pair> {
        self.nodes.iter().find(|nd| nd.families.contains(&(f, a))).map(|nd| nd.pair)
    }
}

/// Composition factors of W_{n,k;z}: every pair ⪰ (k, z) in Λ^a_n, once each.
pub fn composition_factors(p: &QParam, n: u32, k: u32, z: ZSpec) -> Result<Vec<ModuleLabel>, LabelError> {
    if k > n || (n - k) % 2 == 1 {
        return Err(LabelError::Parity(n, k));
    }
    Ok(closure(p, Pair::new(p, k, z), n)
        .into_iter()
        .filter(|x| x.z == ZSpec::Formal || p.in_lambda(n, x.k, x.z))
        .map(|x| ModuleLabel::l(n, x.k, x.z))
        .collect())
}
