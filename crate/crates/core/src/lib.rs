//! Finite geometry workbench.
//!
//! Exact arithmetic over small finite fields, the subspace lattice of
//! `F_q^v`, subspace designs and spreads, the generalized quadrangles
//! `W(q)` and `Q(4,q)`, and a certified exact-cover search engine that
//! decides whether their line/point sets partition into spreads/ovoids.
//!
//! Counting functions (Gaussian binomials, design λ values) are generic over
//! the integer type; [`Count`] and [`Lambda`] are the arbitrary-precision
//! instantiations used throughout the crate.

pub mod designs;
pub mod error;
pub mod gf;
pub mod gq;
pub mod num;
pub mod projspace;
pub mod search;

pub use error::{Error, Result};
pub use gf::{FieldElement, FieldReduction, FieldSpec};
pub use projspace::{BilinearForm, FormKind, PointId, ProjectiveSpace, Subspace};

/// Exact subspace counts.
pub type Count = num_bigint::BigUint;

/// Exact design parameters such as `λ_s` and `λ_{i,j}`.
pub type Lambda = num_rational::Ratio<num_bigint::BigInt>;

/// Version tag carried by every top-level JSON document.
pub const SCHEMA_VERSION: u32 = 1;
