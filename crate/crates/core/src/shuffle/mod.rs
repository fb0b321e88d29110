//! Nichols algebras of braided vector spaces: quantum symmetrizers,
//! graded dimensions, relation degrees and Serre elements.

pub mod engine;
pub mod modp;
pub mod oracle;
pub mod pbw;
pub mod rank;
pub mod serre;
pub mod space;

pub use engine::{
    new_relation_degrees, nichols_dims, BlockDim, EngineConfig, GradedDims, RankMode,
};
pub use pbw::{pbw_hilbert, pbw_hilbert_standard, pbw_multigraded};
pub use serre::{serre_element, serre_expand, serre_in_kernel};
pub use space::{BraidedSpace, SpaceDescription, TensorEntry};
