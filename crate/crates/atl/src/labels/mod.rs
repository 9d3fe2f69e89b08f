//! Parameter sets, dimensions, the weakest order and functor tables.

mod dim_l;
mod dims;
mod functor;
mod label;
mod order;
mod param;

pub use dim_l::{dim_l, dim_l_moebius, lambda_pairs, DimLReport};
pub use dims::{binomial, dim_i, dim_m, dim_p, dim_s, dim_w, dims, validate, Dim};
pub use order::{
    closure, composition_factors, order_ladder, precedes, successors, Cond, LadderEdge, LadderFamily, LadderNode,
    LadderShape, OrderLadder, Pair,
};
pub use functor::{functor_table, regular_hom_dim, DecompositionReport, Functor, Summand};
pub use label::{Family, ModuleLabel, ZSpec};
pub use param::{QParam, Unit};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabelError {
    #[error("cannot parse label `{0}`")]
    Parse(String),
    #[error("n = {0} and k = {1} must satisfy 0 ≤ k ≤ n with k ≡ n mod 2")]
    Parity(u32, u32),
    #[error("{0}: a twist is required exactly for Wcell and L labels")]
    Twist(String),
    #[error("{0} is outside the parameter set of its family")]
    Excluded(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("not covered by the available closed forms: {0}")]
    Uncovered(String),
    #[error("ring: {0}")]
    Ring(String),
}
