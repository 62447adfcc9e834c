//! Exact homology of iterated loop spaces Ω^m X.
//!
//! The first page of the loop-space spectral sequence is a free Poisson
//! algebra with Dyer-Lashof operations on the desuspended homology of X; its
//! homology under the twisted differential is H_*(Ω^m X) for the stunted
//! projective spaces handled here. An Adams cobar computation serves as an
//! independent check for m = 1.

pub mod cli;
pub mod cobar;
pub mod dgal;
pub mod exactlin;
pub mod freepn;
pub mod golden;
pub mod graded;
pub mod oracle;
pub mod par;
pub mod spaces;

pub use exactlin::{FieldSpec, Scalar, SparseMatrix};
pub use graded::{DGWindow, GradedBasis};
