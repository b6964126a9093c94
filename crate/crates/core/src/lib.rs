//! Exact rational polyhedral fans over an integer lattice.
//!
//! The crate validates fans, decides completeness, computes Demazure roots,
//! splits a fan along a direct-sum decomposition of its 1-skeleton, and
//! recognizes complete fans that are products of projective-space fans.

pub mod cli;
pub mod cone;
mod dd;
pub mod decompose;
pub mod demazure;
pub mod error;
pub mod fan;
pub mod fanfile;
pub mod linalg;

pub use cone::Cone;
pub use decompose::{
    factorize, finest_ray_partition, lattice_split_index, Factorization, RayPartition,
};
pub use demazure::{
    candidate_rays, classify, demazure_roots, is_projective_skeleton, is_semisimple, roots_of_ray,
    Classification, DemazureRoot, RootSet, Verdict,
};
pub use error::{Error, Result};
pub use fan::{hirzebruch_fan, product_fan, projective_space_fan, Fan, Subspace};
pub use linalg::{DualVector, IntMatrix, LatticeVector, RationalVector};
