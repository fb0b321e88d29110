//! Exact arithmetic for Nichols algebras of braided `U_q(g)`-modules:
//! root data, extended Cartan matrices, a finiteness criterion, the
//! classification of one-vertex extensions, quantum symmetrizer ranks and
//! the `U_q(sl2)` braiding `c^f`.

pub mod classifier;
pub mod error;
pub mod exactq;
pub mod extension;
pub mod gcm;
pub mod ratmat;
pub mod rootdata;
pub mod shuffle;
pub mod uqsl2;

pub use classifier::{
    enumerate_extensions, table_check, ClassificationRow, TableCheckReport, Value,
};
pub use error::{Error, ExactError, Result};
pub use exactq::{GammaPoly, LaurentScalar, Rational};
pub use extension::{
    braid_spec, braid_spec_with_phi, exponent_matrix, extended_cartan, gk_finite, relation_degrees,
    BraidSpec, ExponentMatrix, ExtendedCartan, GkVerdict, RelationDegree,
};
pub use gcm::{finite_type, positive_roots, validate_gcm, FiniteTypeLabel, Gcm};
pub use rootdata::{root_datum, Normalization, RootDatum, SimpleType, TypeLetter, Weight};
pub use shuffle::{
    new_relation_degrees, nichols_dims, pbw_hilbert, serre_expand, serre_in_kernel, BraidedSpace,
    EngineConfig, GradedDims, RankMode, SpaceDescription,
};
pub use uqsl2::{
    biproduct_factor_check, cf_braiding, quasi_r, r_ialpha_check, simple_module, ModuleData, QuasiR,
};
