//! Fusion of TL-modules and the affine pipelines built from it.

mod affine;
mod explicit;

pub use affine::{
    affine_fuse, affine_fuse_explicit, fuse_crosscheck, predicted_factors, tl_fuse_concrete, tl_fuse_symbolic, Crosscheck,
    FusionKind, Route,
};
pub use explicit::{tl_diagrams, tl_fuse_explicit, tl_fuse_standard, MAX_FREE};

use thiserror::Error;

use crate::modcore::ModuleError;
use crate::scalar::ScalarError;

#[derive(Debug, Error)]
pub enum FusionError {
    #[error("refused: {0}")]
    Refused(String),
    #[error("free module of rank {0} exceeds the bound {1}")]
    Bound(usize, usize),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Hom(#[from] crate::homsolver::HomError),
    #[error(transparent)]
    Diagram(#[from] crate::diagram::DiagramError),
}

#[cfg(test)]
mod tests;
