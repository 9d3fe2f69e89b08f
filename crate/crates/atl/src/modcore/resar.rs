//! Restriction of W to TL_n, filtered by the number of seam arcs.

use std::collections::HashMap;

use serde::Serialize;

use crate::diagram::{affine_link_states, LinkState};
use crate::labels::ZSpec;
use crate::scalar::{Ring, XRole};

use super::cell::{build_s, build_w_cell, build_w_free};
use super::{Module, ModuleError};

#[derive(Clone, Debug, Serialize)]
pub struct ResarStratum {
    /// Number of arcs through the seam.
    pub r: u32,
    pub dim: usize,
    /// dim S_{n,k+2r}.
    pub s_dim: usize,
    /// Every generator maps this stratum into U_r.
    pub invariant: bool,
    /// The action on U_r / U_{r−1}, read through surgery, is S_{n,k+2r}.
    pub matches_s: bool,
}

/// U_r = span of link states with at most r seam arcs. For each r the
/// quotient U_r/U_{r−1} is compared with S_{n,k+2r} through surgery.
/// `twist = None` uses the free module W_{n,k}.
pub fn resar_filtration(ring: &Ring, n: u32, k: u32, twist: Option<ZSpec>) -> Result<Vec<ResarStratum>, ModuleError> {
    if !ring.is_generic_q() {
        return Err(ModuleError::Unsupported(
            "the seam-arc filtration splits into standard modules only for generic q".into(),
        ));
    }
    let w: Module = match twist {
        Some(z) => build_w_cell(ring, n, k, z)?,
        None if ring.x_role() == Some(XRole::Winding) => build_w_free(ring, n, k)?,
        None => return Err(ModuleError::RingKind("the free module needs the generic-t ring".into())),
    };
    let res = w.restrict_regular()?;
    let states = affine_link_states(n, k);
    let arcs: Vec<u32> = states.iter().map(LinkState::seam_arcs).collect();
    let max_r = arcs.iter().copied().max().unwrap_or(0);
    let mut out = Vec::new();
    for r in 0..=max_r {
        let idx: Vec<usize> = (0..states.len()).filter(|&i| arcs[i] == r).collect();
        let s = build_s(ring, n, k + 2 * r)?;
        let s_states = crate::diagram::regular_link_states(n, k + 2 * r);
        let s_index: HashMap<&LinkState, usize> = s_states.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let to_s: Vec<usize> = idx.iter().map(|&i| s_index[&states[i].surgery().0]).collect();
        let mut invariant = true;
        let mut matches_s = idx.len() == s.dim();
        for ((_, m), (_, ms)) in res.generators().iter().zip(s.generators()) {
            for (a, &j) in idx.iter().enumerate() {
                for i in 0..states.len() {
                    let x = m.get(i, j);
                    if arcs[i] > r && !x.is_zero() {
                        invariant = false;
                    }
                }
                if !matches_s {
                    continue;
                }
                for (b, &i) in idx.iter().enumerate() {
                    if m.get(i, j) != ms.get(to_s[b], to_s[a]) {
                        matches_s = false;
                    }
                }
            }
        }
        out.push(ResarStratum { r, dim: idx.len(), s_dim: s.dim(), invariant, matches_s });
    }
    Ok(out)
}
