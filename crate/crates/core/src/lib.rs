//! Dirichlet energies of harmonic and monogenic extensions.
//!
//! The crate computes the energy of a harmonic extension by independent
//! routes (gradient volume integral, spectral sums, singular boundary double
//! integrals and Ahlfors boundary integrals of a monogenic field) on disks,
//! balls, half-spaces and their quaternionic variants.

pub mod clifford;
pub mod error;
pub mod energy;
pub mod extension;
pub mod quadrature;
pub mod scalar;
pub mod special_fn;

pub use error::{Error, Result};
pub use quadrature::Estimate;
pub use scalar::{Real, Scalar};

/// Double precision multivector.
pub type Multivector = clifford::Multivector<f64>;
/// Double precision quaternion.
pub type Quaternion = clifford::Quaternion<f64>;
/// Double precision quadrature rule.
pub type QuadratureRule = quadrature::QuadratureRule<f64>;
/// Double precision Gegenbauer cache.
pub type GegenbauerTable = special_fn::GegenbauerTable<f64>;
