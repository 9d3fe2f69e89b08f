//! Exact computations with regular and affine Temperley-Lieb algebras.

pub mod scalar;
pub mod linalg;
pub mod diagram;
pub mod algebra;
pub mod labels;
pub mod modcore;
pub mod homsolver;
pub mod fusion;
pub mod functors;
