//! Link states: the left halves of monic diagrams.

use super::{Boundary, Diagram, Side};

/// n points on a circle (affine) or a line (regular), each either a defect
/// or the end of an arc. Arc partners are global positions, so an arc
/// through the seam from label a goes to a position ≥ n (or < 0).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinkState {
    n: u32,
    partner: Vec<Option<i64>>,
    defects: Vec<i64>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mark {
    Open,
    Close,
    Defect,
}

fn words(n: usize, opens: usize, defects: usize) -> Vec<Vec<Mark>> {
    fn rec(prefix: &mut Vec<Mark>, n: usize, o: usize, c: usize, d: usize, out: &mut Vec<Vec<Mark>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for (m, left) in [(Mark::Open, o), (Mark::Close, c), (Mark::Defect, d)] {
            if left == 0 {
                continue;
            }
            prefix.push(m);
            match m {
                Mark::Open => rec(prefix, n, o - 1, c, d, out),
                Mark::Close => rec(prefix, n, o, c - 1, d, out),
                Mark::Defect => rec(prefix, n, o, c, d - 1, out),
            }
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(n), n, opens, opens, defects, &mut out);
    out
}

/// Match parentheses reading `order` (positions, possibly wrapping);
/// `None` if some gap is unbalanced.
fn match_in_order(word: &[Mark], order: &[i64], n: i64) -> Option<Vec<Option<i64>>> {
    let mut partner = vec![None; n as usize];
    let mut stack: Vec<i64> = Vec::new();
    for &g in order {
        match word[g.rem_euclid(n) as usize] {
            Mark::Open => stack.push(g),
            Mark::Close => {
                let a = stack.pop()?;
                partner[a.rem_euclid(n) as usize] = Some(g - n * a.div_euclid(n));
                partner[g.rem_euclid(n) as usize] = Some(a - n * g.div_euclid(n));
            }
            Mark::Defect => {
                if !stack.is_empty() {
                    return None;
                }
            }
        }
    }
    if stack.is_empty() {
        Some(partner)
    } else {
        None
    }
}

impl LinkState {
    fn from_word(word: &[Mark], affine: bool) -> Option<LinkState> {
        let n = word.len() as i64;
        let defects: Vec<i64> = (0..n).filter(|&i| word[i as usize] == Mark::Defect).collect();
        let start = if !affine {
            0
        } else if let Some(&d) = defects.last() {
            d + 1
        } else {
            // rotation after the minimum of the running height
            let mut h = 0;
            let mut best = (0, 0);
            for i in 0..n {
                h += if word[i as usize] == Mark::Open { 1 } else { -1 };
                if h < best.0 {
                    best = (h, i + 1);
                }
            }
            best.1
        };
        let order: Vec<i64> = (start..start + n).collect();
        let partner = match_in_order(word, &order, n)?;
        Some(LinkState { n: n as u32, partner, defects })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn defects(&self) -> &[i64] {
        &self.defects
    }

    pub fn k(&self) -> u32 {
        self.defects.len() as u32
    }

    pub fn partner(&self, i: usize) -> Option<i64> {
        self.partner[i]
    }

    /// Number of arcs crossing the seam.
    pub fn seam_arcs(&self) -> u32 {
        self.partner.iter().filter(|p| matches!(p, Some(g) if *g >= self.n as i64)).count() as u32
    }

    pub fn is_regular(&self) -> bool {
        self.seam_arcs() == 0
    }

    /// Defect label for a periodic index: p_{i+k} = p_i + n.
    pub fn defect_at(&self, idx: i64) -> i64 {
        let k = self.defects.len() as i64;
        self.defects[idx.rem_euclid(k) as usize] + self.n as i64 * idx.div_euclid(k)
    }

    /// Monic (k, n)-diagram with right point j linked to defect p_{j+w};
    /// for k = 0, `w` is the number of non-contractible loops.
    pub fn to_diagram(&self, w: i64) -> Diagram {
        let k = self.defects.len();
        let mut links = Vec::with_capacity(self.n as usize + k);
        for (i, p) in self.partner.iter().enumerate() {
            links.push(match p {
                Some(g) => Boundary::new(Side::Left, *g),
                None => {
                    let m = self.defects.binary_search(&(i as i64)).unwrap() as i64;
                    Boundary::new(Side::Right, m - w)
                }
            });
        }
        for j in 0..k as i64 {
            links.push(Boundary::new(Side::Left, self.defect_at(j + w)));
        }
        let loops = if k == 0 { w.max(0) as u32 } else { 0 };
        Diagram::from_links_unchecked(self.n, k as u32, links, loops)
    }

    /// Inverse of [`LinkState::to_diagram`] on monic diagrams.
    pub fn from_diagram(d: &Diagram) -> Option<(LinkState, i64)> {
        if !d.is_monic() {
            return None;
        }
        let n = d.left() as i64;
        let k = d.right() as i64;
        let mut partner = vec![None; n as usize];
        let mut defects = Vec::new();
        for i in 0..n {
            let p = d.partner(Boundary::new(Side::Left, i));
            match p.side {
                Side::Left => partner[i as usize] = Some(p.pos),
                Side::Right => defects.push(i),
            }
        }
        let ls = LinkState { n: n as u32, partner, defects };
        if k == 0 {
            return Some((ls, d.nc_loops() as i64));
        }
        let g = d.partner(Boundary::new(Side::Right, 0)).pos;
        let m = ls.defects.binary_search(&g.rem_euclid(n)).ok()? as i64;
        Some((ls, m + k * g.div_euclid(n)))
    }

    /// Cut every seam arc into two defects; returns the regular state and
    /// the number of arcs cut.
    pub fn surgery(&self) -> (LinkState, u32) {
        let n = self.n as i64;
        let mut partner = self.partner.clone();
        let mut r = 0;
        for i in 0..n as usize {
            if let Some(g) = partner[i] {
                if g >= n || g < 0 {
                    partner[i] = None;
                    if g >= n {
                        r += 1;
                    }
                }
            }
        }
        let defects = (0..n).filter(|&i| partner[i as usize].is_none()).collect();
        (LinkState { n: self.n, partner, defects }, r)
    }

    /// Join the first r and last r defects of a regular state into nested
    /// arcs through the seam.
    pub fn unsurgery(&self, r: u32) -> Option<LinkState> {
        let d = self.defects.len();
        let r = r as usize;
        if 2 * r > d {
            return None;
        }
        let n = self.n as i64;
        let mut partner = self.partner.clone();
        for i in 0..r {
            let low = self.defects[i];
            let high = self.defects[d - 1 - i];
            partner[high as usize] = Some(low + n);
            partner[low as usize] = Some(high - n);
        }
        let defects = self.defects[r..d - r].to_vec();
        Some(LinkState { n: self.n, partner, defects })
    }
}

/// Full diagram from a left half (target side) and a right half (source
/// side) with the same number k of defects: right defect q_j is joined to
/// left defect p_{j+w}. For k = 0, `w` counts non-contractible loops.
pub fn join_halves(left: &LinkState, right: &LinkState, w: i64) -> Diagram {
    let k = left.defects.len();
    assert_eq!(k, right.defects.len(), "halves must have the same number of defects");
    let (m, n) = (left.n, right.n);
    let mut links = Vec::with_capacity((m + n) as usize);
    for (i, p) in left.partner.iter().enumerate() {
        links.push(match p {
            Some(g) => Boundary::new(Side::Left, *g),
            None => {
                let idx = left.defects.binary_search(&(i as i64)).unwrap() as i64;
                Boundary::new(Side::Right, right.defect_at(idx - w))
            }
        });
    }
    for (j, p) in right.partner.iter().enumerate() {
        links.push(match p {
            Some(g) => Boundary::new(Side::Right, *g),
            None => {
                let idx = right.defects.binary_search(&(j as i64)).unwrap() as i64;
                Boundary::new(Side::Left, left.defect_at(idx + w))
            }
        });
    }
    let loops = if k == 0 { w.max(0) as u32 } else { 0 };
    Diagram::from_links_unchecked(m, n, links, loops)
}

/// Inverse of [`join_halves`]: the left half, the right half and the
/// winding (loop count when there are no through lines).
pub fn split_halves(d: &Diagram) -> (LinkState, LinkState, i64) {
    let half = |side: Side, size: u32| {
        let mut partner = vec![None; size as usize];
        let mut defects = Vec::new();
        for i in 0..size as i64 {
            let p = d.partner(Boundary::new(side, i));
            if p.side == side {
                partner[i as usize] = Some(p.pos);
            } else {
                defects.push(i);
            }
        }
        LinkState { n: size, partner, defects }
    };
    let left = half(Side::Left, d.left());
    let right = half(Side::Right, d.right());
    let k = left.defects.len() as i64;
    if k == 0 {
        return (left, right, d.nc_loops() as i64);
    }
    // left defect p_0 sits on right defect q_{-w}
    let g = d.partner(Boundary::new(Side::Left, left.defects[0])).pos;
    let n = d.right() as i64;
    let m = right.defects.binary_search(&g.rem_euclid(n)).expect("through line ends on a defect") as i64;
    let w = -(m + k * g.div_euclid(n));
    (left, right, w)
}

/// Affine link states on n points with k defects; there are C(n, (n−k)/2).
pub fn affine_link_states(n: u32, k: u32) -> Vec<LinkState> {
    if k > n || (n - k) % 2 == 1 {
        return Vec::new();
    }
    let opens = ((n - k) / 2) as usize;
    let mut out: Vec<LinkState> =
        words(n as usize, opens, k as usize).iter().filter_map(|w| LinkState::from_word(w, true)).collect();
    out.sort();
    out.dedup();
    out
}

/// Regular link states: no arc crosses the seam.
pub fn regular_link_states(n: u32, k: u32) -> Vec<LinkState> {
    if k > n || (n - k) % 2 == 1 {
        return Vec::new();
    }
    let opens = ((n - k) / 2) as usize;
    let mut out: Vec<LinkState> =
        words(n as usize, opens, k as usize).iter().filter_map(|w| LinkState::from_word(w, false)).collect();
    out.sort();
    out
}
