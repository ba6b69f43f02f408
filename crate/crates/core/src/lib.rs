//! Exact computations with finite-dimensional anticommutative algebras:
//! identities, second cohomology and central extensions, automorphism
//! actions on cocycles, and degenerations through parametrized bases.
//!
//! All arithmetic is exact, over ℚ, ℚ(i) or 𝔽_p with p odd.

pub mod algcore;
pub mod catalog;
pub mod cohomology;
pub mod degeneration;
pub mod error;
pub mod exactfield;
pub mod linalg;

pub use algcore::{Algebra, Identity, IdentityCheck, LinearMap};
pub use cohomology::{CohomologySpace, Flavor, SkewForm};
pub use error::{Error, Result};
pub use exactfield::{Cardinality, FieldSpec, Scalar};
pub use linalg::{Matrix, Subspace};

/// Seed used by every randomized guard unless the caller supplies one.
pub const DEFAULT_SEED: u64 = 0x6e69_6c61_6c67;
