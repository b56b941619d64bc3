use thiserror::Error;

use crate::algebra::Side;

#[derive(Debug, Error)]
pub enum Error {
    #[error("associativity fails on basis triple ({i}, {j}, {k})")]
    AssociativityViolation { i: usize, j: usize, k: usize },
    #[error("unit law fails on basis element {i}")]
    UnitViolation { i: usize },
    #[error("the zero algebra is not allowed")]
    ZeroAlgebra,
    #[error("module action does not respect the product of basis elements {i} and {j}")]
    ActionViolation { i: usize, j: usize },
    #[error("unit does not act as the identity")]
    UnitActionViolation,
    #[error("matrix does not intertwine the action of basis element {i}")]
    NotIntertwiner { i: usize },
    #[error("expected a {expected} module, found a {found} module")]
    SideMismatch { expected: Side, found: Side },
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("mixed coefficient domains")]
    DomainMismatch,
    #[error("algebra is not elementary (semisimple quotient is not a product of copies of the field): {0}")]
    NotElementary(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("container module is not injective")]
    ContainerNotInjective,
    #[error("character module of an infinite group is not finitely generated")]
    InfiniteModule,
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("isomorphism test inconclusive")]
    IsomorphismInconclusive,
    #[error("unknown catalog algebra {0:?}")]
    UnknownAlgebra(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
