use thiserror::Error;

use crate::linalg::{DualVector, LatticeVector};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero vector has no primitive generator")]
    ZeroVector,

    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: usize, found: usize },

    #[error("rows are linearly dependent")]
    DependentRows,

    #[error("basis does not span a saturated sublattice (index {index})")]
    NotSaturated { index: String },

    #[error("{}", not_pointed_message(*.cone))]
    NotPointed { cone: Option<usize> },

    #[error("ray {index} is zero")]
    ZeroRay { index: usize },

    #[error("rays {first} and {second} generate the same ray")]
    DuplicateRay { first: usize, second: usize },

    #[error("cone {cone} references ray index {index}, but only {count} rays are declared")]
    RayIndexOutOfRange {
        cone: usize,
        index: usize,
        count: usize,
    },

    #[error("ray {ray} is not an extreme ray of any declared cone containing it")]
    RedundantRay { ray: usize },

    #[error(
        "axiom 3 (intersections are common faces) fails: cones {first} and {second} meet in {intersection}, which is not a face of both"
    )]
    IntersectionNotFace {
        first: usize,
        second: usize,
        intersection: String,
    },

    #[error("ray {ray} lies neither in the subspace nor in a complement spanned by the remaining rays")]
    HypothesisViolated { ray: LatticeVector },

    #[error("fan is not complete")]
    NotComplete,

    #[error("root polyhedron of ray {ray} is unbounded")]
    UnboundedRootPolyhedron { ray: LatticeVector },

    #[error("{ray} is not a ray of the skeleton")]
    UnknownRay { ray: LatticeVector },

    #[error("{alpha} is not a root of the standard projective-space fan of rank {rank}")]
    NotARoot { alpha: DualVector, rank: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed fan file: {0}")]
    Parse(String),
}

fn not_pointed_message(cone: Option<usize>) -> String {
    match cone {
        Some(i) => format!("axiom 1 (pointedness) fails: cone {i} contains a line"),
        None => "cone contains a line".to_string(),
    }
}
