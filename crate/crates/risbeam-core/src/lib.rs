//! Synthesis and evaluation of reflection coefficients for a planar
//! reconfigurable intelligent surface (RIS).
//!
//! The library turns a desired far-field beam-pattern magnitude, described as
//! a set of shaped beam spots over azimuth and elevation, into the complex
//! reflection coefficients of an `N_x × N_y` RIS. The design works in a
//! spatial-frequency (transform) domain where the beam pattern becomes the
//! response of a 2-D FIR filter with Hermitian-symmetric coefficients, so the
//! least-squares optimal coefficients have a closed form. A 2-D IFFT fast
//! path computes the same coefficients in `O(M_1 M_2 (log M_1 + log M_2))`.
//!
//! The crate is `no_std` (with `alloc`); file formats and the command-line
//! front end live in the companion `risbeam-cli` crate.
//!
//! Pipeline overview:
//!
//! 1. [`pattern::sample_to_grid`] samples the desired magnitude onto the
//!    `M_1 × M_2` frequency grid, zeroing the unreachable corner region.
//! 2. [`synthesis::design`] computes the filter coefficients (direct sum or
//!    IFFT fast path), completes the Hermitian half, and divides out the
//!    incident-wave phase factors to obtain reflection coefficients.
//! 3. [`evaluation`] recomputes beam patterns from the coefficients and
//!    scores them with the total squared error (TSE) on the design grid.
//! 4. [`quantization::quantize`] models finite amplitude/phase resolution.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod angle;
pub mod baseline;
pub mod error;
pub mod evaluation;
pub mod fft;
pub mod geometry;
pub mod matrix;
pub mod pattern;
pub mod quantization;
pub mod synthesis;

pub use angle::{build_grid, FrequencyGridSpec, OmegaPoint};
pub use error::{Error, Result};
pub use geometry::{Direction, RisConfig};
pub use matrix::{ComplexMatrix, RealMatrix};
pub use pattern::{BeamSpot, DesiredPattern, FrequencyGrid, SpotShape};
pub use quantization::QuantizationConfig;
pub use synthesis::{
    DesignOptions, DesignPath, DesignReport, FilterCoefficients, ReflectionCoefficients,
    SingularityPolicy,
};
