//! Exact algebra for Clifford algebras of hyperbolic quadratic spaces.
//!
//! ```
//! use cliffqp_core::canonical::{canonical_semitrace, CanonicalMap};
//! use cliffqp_core::clifford::CliffordAlgebra;
//! use cliffqp_core::ring::Gf3;
//!
//! let alg = CliffordAlgebra::<Gf3>::new(4)?;
//! let f = canonical_semitrace(&alg, &CanonicalMap::new(&alg))?;
//! assert_eq!(f.evaluate(&alg.identity()), Gf3::new(2)); // 2^3 mod 3
//! # Ok::<(), cliffqp_core::AlgebraError>(())
//! ```

pub mod canonical;
pub mod checks;
pub mod clifford;
pub mod error;
pub mod exterior;
pub mod forms;
pub mod group;
pub mod involution;
pub mod linalg;
pub mod report;
pub mod ring;

pub use error::{AlgebraError, Result};
