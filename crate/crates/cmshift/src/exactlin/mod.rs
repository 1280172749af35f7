//! Deterministic exact linear algebra over Q and prime fields.

pub mod mat;
pub mod poly;
pub mod scalar;

pub use mat::{CoordSolver, Mat};
pub use poly::{char_poly, coprime_split, min_poly, Poly};
pub use scalar::{FieldSpec, Scalar};
