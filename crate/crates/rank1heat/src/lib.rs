//! Exact Minakshisundaram-Pleijel heat coefficients and spectral zeta data
//! for compact rank-1 locally symmetric spaces, verified numerically against
//! the Plancherel-density integral.
//!
//! The exact side works in arbitrary-precision rationals scaled by
//! half-integer powers of pi ([`exact::PiScaledRational`]); the numerical
//! side ([`oracle`]) integrates the heat identity term at configurable
//! precision and recovers the coefficients by Richardson peeling.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod exact;
pub mod heat;
pub mod oracle;
pub mod render;
pub mod zeta;

pub use catalog::{describe, Family, SpaceDescriptor};
pub use error::{Error, Result};
pub use exact::{PiScaledRational, Rational};
pub use heat::{coefficient_table, CoefficientTable};
pub use oracle::{verify, QuadratureConfig, VerificationReport};
pub use zeta::SpectralParams;
