//! Exact linear algebra over Q, F_p and Z.

pub mod integer;
pub mod matrix;
pub mod rational;
pub mod scalar;
pub mod subspace;

pub use integer::{hermite_normal_form, integer_kernel, lattice_canonical, smith_normal_form, IntMatrix, SnfResult};
pub use matrix::{Matrix, Rref, Solution};
pub use rational::Rational;
pub use scalar::{Domain, Residue, Scalar};
pub use subspace::{Quotient, Subspace};
