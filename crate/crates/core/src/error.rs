use thiserror::Error;

use crate::matroid::AxiomReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("ground set has {n} elements, limit is {max}")]
    GroundTooLarge { n: usize, max: usize },
    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown element label {0:?}")]
    UnknownLabel(String),
    #[error("mask {mask:#b} has bits outside a ground set of {n} elements")]
    MaskOutOfRange { mask: u32, n: usize },
    #[error("operands live on different ground sets")]
    GroundMismatch,
    #[error("second set is not contained in the first")]
    NotNested,
    #[error("sets are not disjoint")]
    NotDisjoint,
    #[error("starting set is not independent")]
    NotIndependent,
    #[error("rank {k} exceeds ground set size {n}")]
    RankTooLarge { k: usize, n: usize },
    #[error("edge {edge} has endpoint {endpoint} but the graph has {vertices} vertices")]
    EndpointOutOfRange {
        edge: usize,
        endpoint: usize,
        vertices: usize,
    },
    #[error("column {column} has length {len}, expected {expected}")]
    ColumnLength {
        column: usize,
        len: usize,
        expected: usize,
    },
    #[error("family violates the independence axioms ({} violations)", .0.violations.len())]
    Axioms(AxiomReport),
    #[error("precondition failed: {0}")]
    Precondition(String),
}
