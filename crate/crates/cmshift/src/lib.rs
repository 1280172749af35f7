//! Exact computation of homological invariants (global, injective and
//! dominant dimension, canonical degree) for bound quiver algebras, together
//! with the shifted tilting module T = K ⊕ Π, its endomorphism algebra, and
//! a symbolic tensor-order layer for bases of Krull dimension d ≥ 1.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod exactlin;
pub mod homology;
pub mod modcat;
pub mod order_layer;
pub mod quiver;
pub mod tilting;

pub use error::Error;
