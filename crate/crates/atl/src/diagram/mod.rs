//! Affine (m,n)-diagrams drawn on a cylinder, encoded through their lift to
//! the universal cover (an infinite strip).
//!
//! Points on each side carry a global position `g`; the base label is
//! `g mod count` and the sheet is `g div count`. Positions increase from
//! top to bottom and the seam sits between label `count` of one sheet and
//! label 1 of the next. The left side holds the target points, the right
//! side the source points, so a diagram with `left = m`, `right = n` is a
//! morphism n → m and `b ∘ a` glues the left side of `a` to the right side
//! of `b`.

mod enumerate;
mod text;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use enumerate::{affine_link_states, join_halves, regular_link_states, split_halves, LinkState};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// A boundary point of the universal cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Boundary {
    pub side: Side,
    pub pos: i64,
}

impl Boundary {
    pub fn new(side: Side, pos: i64) -> Self {
        Self { side, pos }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("matching is not an involution at {0:?}")]
    NotInvolution(Boundary),
    #[error("lines cross: {0:?}-{1:?} and {2:?}-{3:?}")]
    Crossing(Boundary, Boundary, Boundary, Boundary),
    #[error("m + n = {0} is odd")]
    OddPointCount(u32),
    #[error("a point is matched to itself: {0:?}")]
    FixedPoint(Boundary),
    #[error("non-contractible loops require a diagram without through lines")]
    LoopsWithThroughLines,
    #[error("sizes do not compose: {0} vs {1}")]
    SizeMismatch(u32, u32),
    #[error("tensor product needs rank-zero diagrams")]
    NotRegular,
    #[error("generator index {0} out of range for n = {1}")]
    GeneratorRange(i64, u32),
    #[error("cannot parse diagram: {0}")]
    Parse(String),
}

/// Canonical encoding of an affine diagram: for every base point (left
/// labels first, then right labels), the global position of its partner,
/// plus the number of non-contractible loops. Two diagrams are isotopic
/// exactly when these fields agree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    left: u32,
    right: u32,
    links: Vec<Boundary>,
    nc_loops: u32,
}

fn floor_div(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

impl Diagram {
    /// Validates involutivity, planarity and the loop rule.
    pub fn from_links(left: u32, right: u32, links: Vec<Boundary>, nc_loops: u32) -> Result<Self, DiagramError> {
        if (left + right) % 2 == 1 {
            return Err(DiagramError::OddPointCount(left + right));
        }
        assert_eq!(links.len(), (left + right) as usize, "one partner per base point");
        let d = Diagram { left, right, links, nc_loops };
        d.validate()?;
        Ok(d)
    }

    pub(crate) fn from_links_unchecked(left: u32, right: u32, links: Vec<Boundary>, nc_loops: u32) -> Self {
        let d = Diagram { left, right, links, nc_loops };
        debug_assert!(d.validate().is_ok(), "invalid diagram {d:?}");
        d
    }

    fn validate(&self) -> Result<(), DiagramError> {
        let bases: Vec<Boundary> = self.base_points().collect();
        for &b in &bases {
            let p = self.partner(b);
            if p == b {
                return Err(DiagramError::FixedPoint(b));
            }
            if self.partner(p) != b {
                return Err(DiagramError::NotInvolution(b));
            }
        }
        if self.nc_loops > 0 && self.through_lines() > 0 {
            return Err(DiagramError::LoopsWithThroughLines);
        }
        // chords from base points against all lifts within a window
        let reach = self
            .links
            .iter()
            .map(|l| floor_div(l.pos, self.count(l.side).max(1) as i64).abs())
            .max()
            .unwrap_or(0)
            + 2;
        let mut chords = Vec::new();
        for s in -reach..=reach {
            for &b in &bases {
                let lifted = self.shift(b, s);
                let p = self.partner(lifted);
                if key(lifted) < key(p) {
                    chords.push((lifted, p));
                }
            }
        }
        for (i, &(a1, a2)) in chords.iter().enumerate() {
            for &(b1, b2) in &chords[i + 1..] {
                let (x1, x2, y1, y2) = (key(a1), key(a2), key(b1), key(b2));
                if (x1 < y1 && y1 < x2 && x2 < y2) || (y1 < x1 && x1 < y2 && y2 < x2) {
                    return Err(DiagramError::Crossing(a1, a2, b1, b2));
                }
            }
        }
        Ok(())
    }

    pub fn left(&self) -> u32 {
        self.left
    }

    pub fn right(&self) -> u32 {
        self.right
    }

    pub fn count(&self, side: Side) -> u32 {
        match side {
            Side::Left => self.left,
            Side::Right => self.right,
        }
    }

    pub fn nc_loops(&self) -> u32 {
        self.nc_loops
    }

    pub fn links(&self) -> &[Boundary] {
        &self.links
    }

    pub fn base_points(&self) -> impl Iterator<Item = Boundary> + '_ {
        (0..self.left as i64)
            .map(|i| Boundary::new(Side::Left, i))
            .chain((0..self.right as i64).map(|j| Boundary::new(Side::Right, j)))
    }

    fn slot(&self, side: Side, base: i64) -> usize {
        match side {
            Side::Left => base as usize,
            Side::Right => self.left as usize + base as usize,
        }
    }

    /// Move a point by `s` full turns of the cylinder.
    pub fn shift(&self, b: Boundary, s: i64) -> Boundary {
        Boundary::new(b.side, b.pos + s * self.count(b.side) as i64)
    }

    pub fn sheet(&self, b: Boundary) -> i64 {
        floor_div(b.pos, self.count(b.side) as i64)
    }

    /// Partner of any lifted point.
    pub fn partner(&self, b: Boundary) -> Boundary {
        let c = self.count(b.side) as i64;
        let base = b.pos.rem_euclid(c);
        let sheet = floor_div(b.pos, c);
        let p = self.links[self.slot(b.side, base)];
        self.shift(p, sheet)
    }

    pub fn through_lines(&self) -> u32 {
        (0..self.left as usize).filter(|&i| self.links[i].side == Side::Right).count() as u32
    }

    /// Minimal number of seam crossings: every arc crosses as many seams as
    /// separate its ends, and each non-contractible loop crosses once.
    pub fn rank(&self) -> u32 {
        let twice: i64 = self.links.iter().map(|l| self.sheet(*l).abs()).sum();
        (twice / 2) as u32 + self.nc_loops
    }

    pub fn is_even(&self) -> bool {
        self.rank().is_multiple_of(2)
    }

    pub fn is_regular(&self) -> bool {
        self.rank() == 0
    }

    pub fn is_monic(&self) -> bool {
        self.through_lines() == self.right
    }

    pub fn is_epic(&self) -> bool {
        self.through_lines() == self.left
    }

    /// Mirror image through the vertical axis.
    pub fn involution(&self) -> Diagram {
        let mut links = vec![Boundary::new(Side::Left, 0); self.links.len()];
        for b in self.base_points() {
            let p = self.partner(b);
            let mb = Boundary::new(b.side.flip(), b.pos);
            let mp = Boundary::new(p.side.flip(), p.pos);
            let slot = match mb.side {
                Side::Left => mb.pos as usize,
                Side::Right => self.right as usize + mb.pos as usize,
            };
            links[slot] = mp;
        }
        Diagram { left: self.right, right: self.left, links, nc_loops: self.nc_loops }
    }

    pub fn identity(n: u32) -> Diagram {
        Self::tau_pow(n, 0)
    }

    /// τ_n^w: left point g is linked to right point g − w.
    pub fn tau_pow(n: u32, w: i64) -> Diagram {
        let mut links = Vec::with_capacity(2 * n as usize);
        for g in 0..n as i64 {
            links.push(Boundary::new(Side::Right, g - w));
        }
        for g in 0..n as i64 {
            links.push(Boundary::new(Side::Left, g + w));
        }
        Diagram { left: n, right: n, links, nc_loops: 0 }
    }

    pub fn tau(n: u32) -> Diagram {
        Self::tau_pow(n, 1)
    }

    pub fn tau_inv(n: u32) -> Diagram {
        Self::tau_pow(n, -1)
    }

    /// e_{n,i} for any integer i (n ≥ 2): labels i and i+1 are linked on
    /// both sides, all other points go straight across.
    pub fn e(n: u32, i: i64) -> Result<Diagram, DiagramError> {
        if n < 2 {
            return Err(DiagramError::GeneratorRange(i, n));
        }
        let nn = n as i64;
        let a = (i - 1).rem_euclid(nn);
        let mut links: Vec<Boundary> = (0..nn)
            .map(|g| Boundary::new(Side::Right, g))
            .chain((0..nn).map(|g| Boundary::new(Side::Left, g)))
            .collect();
        let b = a + 1;
        // base of the lower end
        let bb = b.rem_euclid(nn);
        let sb = floor_div(b, nn);
        links[a as usize] = Boundary::new(Side::Left, b);
        links[bb as usize] = Boundary::new(Side::Left, a - sb * nn);
        links[(nn + a) as usize] = Boundary::new(Side::Right, b);
        links[(nn + bb) as usize] = Boundary::new(Side::Right, a - sb * nn);
        Ok(Diagram { left: n, right: n, links, nc_loops: 0 })
    }

    /// Regular generator u_{n,i}, 1 ≤ i ≤ n−1.
    pub fn u(n: u32, i: u32) -> Result<Diagram, DiagramError> {
        if i < 1 || i + 1 > n {
            return Err(DiagramError::GeneratorRange(i as i64, n));
        }
        Self::e(n, i as i64)
    }

    /// Add `k` non-contractible loops (only for diagrams without through lines).
    pub fn with_loops(&self, k: u32) -> Result<Diagram, DiagramError> {
        if k > 0 && self.through_lines() > 0 {
            return Err(DiagramError::LoopsWithThroughLines);
        }
        let mut d = self.clone();
        d.nc_loops += k;
        Ok(d)
    }

    pub fn without_loops(&self) -> Diagram {
        let mut d = self.clone();
        d.nc_loops = 0;
        d
    }

    /// `b ∘ a`. Returns the diagram and the number of contractible loops
    /// removed, each of which is worth a factor β.
    pub fn compose(b: &Diagram, a: &Diagram) -> Result<(Diagram, u32), DiagramError> {
        if b.right != a.left {
            return Err(DiagramError::SizeMismatch(b.right, a.left));
        }
        let inner = a.left as i64;
        let mut visited = vec![false; inner as usize];
        let mark = |g: i64, visited: &mut Vec<bool>| visited[g.rem_euclid(inner) as usize] = true;
        let mut links = Vec::with_capacity((b.left + a.right) as usize);
        // start on the outer left (b's left side)
        for i in 0..b.left as i64 {
            let mut cur = b.partner(Boundary::new(Side::Left, i));
            let end = loop {
                if cur.side == Side::Left {
                    break cur;
                }
                mark(cur.pos, &mut visited);
                let p = a.partner(Boundary::new(Side::Left, cur.pos));
                if p.side == Side::Right {
                    break p;
                }
                mark(p.pos, &mut visited);
                cur = b.partner(Boundary::new(Side::Right, p.pos));
            };
            links.push(end);
        }
        // outer right (a's right side)
        for j in 0..a.right as i64 {
            let mut cur = a.partner(Boundary::new(Side::Right, j));
            let end = loop {
                if cur.side == Side::Right {
                    break cur;
                }
                mark(cur.pos, &mut visited);
                let p = b.partner(Boundary::new(Side::Right, cur.pos));
                if p.side == Side::Left {
                    break p;
                }
                mark(p.pos, &mut visited);
                cur = a.partner(Boundary::new(Side::Left, p.pos));
            };
            links.push(end);
        }
        let mut contractible = 0;
        let mut nc = a.nc_loops + b.nc_loops;
        for i0 in 0..inner {
            if visited[i0 as usize] {
                continue;
            }
            let mut g = i0;
            loop {
                mark(g, &mut visited);
                let p = a.partner(Boundary::new(Side::Left, g));
                debug_assert_eq!(p.side, Side::Left);
                mark(p.pos, &mut visited);
                let q = b.partner(Boundary::new(Side::Right, p.pos));
                debug_assert_eq!(q.side, Side::Right);
                g = q.pos;
                if g.rem_euclid(inner) == i0 {
                    if g == i0 {
                        contractible += 1;
                    } else {
                        nc += 1;
                    }
                    break;
                }
            }
        }
        Ok((Diagram::from_links_unchecked(b.left, a.right, links, nc), contractible))
    }

    /// `f ⊗ g` for rank-zero diagrams, f placed above g.
    pub fn tensor(f: &Diagram, g: &Diagram) -> Result<Diagram, DiagramError> {
        if !f.is_regular() || !g.is_regular() {
            return Err(DiagramError::NotRegular);
        }
        let (ml, mr) = (f.left as i64, f.right as i64);
        let left = f.left + g.left;
        let right = f.right + g.right;
        let mut links = vec![Boundary::new(Side::Left, 0); (left + right) as usize];
        let off = |side: Side| match side {
            Side::Left => ml,
            Side::Right => mr,
        };
        let slot = |side: Side, pos: i64| match side {
            Side::Left => pos as usize,
            Side::Right => left as usize + pos as usize,
        };
        for b in f.base_points() {
            links[slot(b.side, b.pos)] = f.partner(b);
        }
        for b in g.base_points() {
            let p = g.partner(b);
            links[slot(b.side, b.pos + off(b.side))] = Boundary::new(p.side, p.pos + off(p.side));
        }
        Ok(Diagram::from_links_unchecked(left, right, links, 0))
    }

    /// Partner labels of the left points (through lines only), in order.
    pub fn left_defects(&self) -> Vec<i64> {
        (0..self.left as i64)
            .filter(|&i| self.links[i as usize].side == Side::Right)
            .collect()
    }
}

/// Order along the boundary of the strip: down the left side, up the right.
fn key(b: Boundary) -> (u8, i64) {
    match b.side {
        Side::Left => (0, b.pos),
        Side::Right => (1, -b.pos),
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: u32, i: i64) -> Diagram {
        Diagram::e(n, i).unwrap()
    }

    #[test]
    fn generator_ranks() {
        assert_eq!(Diagram::tau(4).rank(), 1);
        assert_eq!(Diagram::identity(4).rank(), 0);
        assert_eq!(e(4, 1).rank(), 0);
        // e_0 links labels n and 1 across the seam, on both sides
        assert_eq!(e(4, 0).rank(), 2);
        for w in 0..=4 {
            assert_eq!(Diagram::tau_pow(4, w).rank(), w as u32);
        }
    }

    #[test]
    fn idempotent_up_to_beta() {
        for n in 2..6 {
            for i in 0..n as i64 {
                let (d, loops) = Diagram::compose(&e(n, i), &e(n, i)).unwrap();
                assert_eq!((d, loops), (e(n, i), 1));
            }
        }
    }

    #[test]
    fn tau_inverse_and_conjugation() {
        let n = 5;
        let (id, l) = Diagram::compose(&Diagram::tau(n), &Diagram::tau_inv(n)).unwrap();
        assert_eq!((id, l), (Diagram::identity(n), 0));
        for i in 0..n as i64 {
            let (x, _) = Diagram::compose(&Diagram::tau(n), &e(n, i)).unwrap();
            let (y, _) = Diagram::compose(&x, &Diagram::tau_inv(n)).unwrap();
            assert_eq!(y, e(n, i + 1));
        }
    }

    #[test]
    fn wrapping_caps_make_a_noncontractible_loop() {
        let (d, loops) = Diagram::compose(&e(2, 1), &e(2, 0)).unwrap();
        assert_eq!(loops, 0);
        assert_eq!(d.nc_loops(), 1);
        assert_eq!(d.through_lines(), 0);
    }

    #[test]
    fn crossing_rejected() {
        // L1 -> R2 and L2 -> R1 on a 2x2 rectangle
        let links = vec![
            Boundary::new(Side::Right, 1),
            Boundary::new(Side::Right, 0),
            Boundary::new(Side::Left, 1),
            Boundary::new(Side::Left, 0),
        ];
        assert!(matches!(Diagram::from_links(2, 2, links, 0), Err(DiagramError::Crossing(..))));
    }

    #[test]
    fn involution_swaps_tau() {
        assert_eq!(Diagram::tau(3).involution(), Diagram::tau_inv(3));
        assert_eq!(e(4, 0).involution(), e(4, 0));
    }
}
