//! Exact computation of injective torsion, 1-torsion, cotorsion and the
//! Auslander-Gruson-Jensen transforms over finite-dimensional algebras and
//! finitely generated abelian groups.

pub mod algebra;
pub mod error;
pub mod functor;
pub mod harness;
pub mod io;
pub mod linalg;
pub mod random;
pub mod stab;
pub mod zgroup;

pub use error::{Error, Result};
