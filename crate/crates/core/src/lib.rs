//! Single-measurement localization of electromagnetic scatterers from far-field data.
//!
//! The crate is organised bottom-up:
//!
//! * [`sphquad`]: Lebedev quadrature on the unit sphere and tangential far-field patterns
//!   with their `L²` inner product.
//! * [`vsh`]: scalar and vector spherical harmonics, first-order projections.
//! * [`forward`]: synthetic far-field data: Mie series for spheres, point-dipole models,
//!   translation, composition of sparse scenes and the measurement noise model.
//! * [`locate`]: the small-scatterer indicator `I_s`, the reference-matched indicator `I_r`,
//!   peak extraction and both locating pipelines.
//!
//! Lengths are measured in wavelengths by default (`λ = 1`, `ω = 2π`).

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod forward;
pub mod locate;
pub mod sphquad;
pub mod vsh;

pub use error::{Error, Result};

/// Library version.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Real 3-vector used for directions, positions and polarizations.
pub type Vec3 = nalgebra::Vector3<f64>;
/// Complex 3-vector used for field values.
pub type CVec3 = nalgebra::Vector3<num_complex::Complex64>;
