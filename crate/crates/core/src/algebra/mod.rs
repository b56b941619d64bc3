//! Finite-dimensional algebras and their modules.

use std::fmt;

pub mod catalog;
pub mod envelope;
pub mod hom;
pub mod homological;
pub mod iso;
pub mod module;
pub mod ring;
pub mod structure;
pub mod tensor;

pub use envelope::{injective_envelope, projective_cover, projective_presentation, Envelope};
pub use hom::{hom, HomSpace};
pub use homological::{ext1, lambda_dual_and_evaluation, mu_map, tor1};
pub use iso::{is_isomorphic, IsoOutcome};
pub use module::{DirectSum, Module, ModuleMap, QuotientModule, Submodule, Subquotient};
pub use ring::Ring;
pub use structure::Algebra;
pub use tensor::{tensor, TensorSpace};

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
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

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}
