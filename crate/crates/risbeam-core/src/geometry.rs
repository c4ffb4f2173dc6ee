//! Array geometry: unit positions, directional vectors, and the per-unit
//! incident-wave phase factors.
//!
//! The RIS lies in the x-y plane with the (0,0) unit at the origin. Positions
//! are expressed in wavelengths, so a plane-wave phase difference is simply
//! `2π · uᵀr` with `u` a unit directional vector.

#[allow(unused_imports)]
use num_traits::Float;

use core::f64::consts::{FRAC_PI_2, TAU};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Planar RIS array description: unit counts along x and y, and the unit
/// spacing as a fraction of the carrier wavelength (`d/λ`).
///
/// Only the ratio `d/λ` enters any computation, so the wavelength itself is
/// never stored. The closed-form synthesis additionally requires `n_x` and
/// `n_y` to be even; that is enforced where the design runs, not here, so
/// that arbitrary coefficient matrices can still be evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RisConfig {
    n_x: usize,
    n_y: usize,
    spacing_over_lambda: f64,
}

impl RisConfig {
    pub fn new(n_x: usize, n_y: usize, spacing_over_lambda: f64) -> Result<Self> {
        if n_x == 0 {
            return Err(Error::ZeroDimension { name: "n_x" });
        }
        if n_y == 0 {
            return Err(Error::ZeroDimension { name: "n_y" });
        }
        if !(spacing_over_lambda > 0.0 && spacing_over_lambda.is_finite()) {
            return Err(Error::InvalidSpacing {
                value: spacing_over_lambda,
            });
        }
        Ok(Self {
            n_x,
            n_y,
            spacing_over_lambda,
        })
    }

    pub fn n_x(&self) -> usize {
        self.n_x
    }

    pub fn n_y(&self) -> usize {
        self.n_y
    }

    pub fn spacing_over_lambda(&self) -> f64 {
        self.spacing_over_lambda
    }

    /// Total number of reflection units.
    pub fn num_units(&self) -> usize {
        self.n_x * self.n_y
    }

    /// Checks the evenness requirement of the closed-form design.
    pub fn require_even(&self) -> Result<()> {
        if !self.n_x.is_multiple_of(2) {
            return Err(Error::OddDimension {
                name: "n_x",
                value: self.n_x,
            });
        }
        if !self.n_y.is_multiple_of(2) {
            return Err(Error::OddDimension {
                name: "n_y",
                value: self.n_y,
            });
        }
        Ok(())
    }
}

/// An azimuth/elevation direction. Azimuth lies in `[0, 2π)`, elevation in
/// `[0, π/2]` measured from the surface plane's normal projection, with the
/// closed upper boundary admitting grazing-free endfire directions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction {
    azimuth: f64,
    elevation: f64,
}

impl Direction {
    pub fn new(azimuth: f64, elevation: f64) -> Result<Self> {
        if !(0.0..TAU).contains(&azimuth) {
            return Err(Error::AngleOutOfRange {
                name: "azimuth",
                value: azimuth,
                min: 0.0,
                max: TAU,
            });
        }
        if !(azimuth.is_finite() && elevation.is_finite())
            || !(0.0..=FRAC_PI_2).contains(&elevation)
        {
            return Err(Error::AngleOutOfRange {
                name: "elevation",
                value: elevation,
                min: 0.0,
                max: FRAC_PI_2,
            });
        }
        Ok(Self { azimuth, elevation })
    }

    pub fn azimuth(&self) -> f64 {
        self.azimuth
    }

    pub fn elevation(&self) -> f64 {
        self.elevation
    }
}

/// Unit directional vector of an incident plane wave travelling toward the
/// surface: `[cos a sin e, sin a sin e, -cos e]`.
pub fn incident_unit_vector(dir: Direction) -> [f64; 3] {
    let (sin_a, cos_a) = dir.azimuth.sin_cos();
    let (sin_e, cos_e) = dir.elevation.sin_cos();
    [cos_a * sin_e, sin_a * sin_e, -cos_e]
}

/// Unit directional vector of the reflected (observed) wave:
/// `[cos a sin e, sin a sin e, +cos e]`. Differs from
/// [`incident_unit_vector`] only in the sign of the z component.
pub fn observation_unit_vector(dir: Direction) -> [f64; 3] {
    let (sin_a, cos_a) = dir.azimuth.sin_cos();
    let (sin_e, cos_e) = dir.elevation.sin_cos();
    [cos_a * sin_e, sin_a * sin_e, cos_e]
}

/// Position of unit `(n_x_idx, n_y_idx)` in wavelengths: `[n_x d/λ, n_y d/λ, 0]`.
/// The z component is identically zero; positions are kept as 3-vectors to
/// pair directly with the directional vectors.
///
/// Panics if an index is out of range for `cfg`.
pub fn unit_position(n_x_idx: usize, n_y_idx: usize, cfg: RisConfig) -> [f64; 3] {
    assert!(
        n_x_idx < cfg.n_x && n_y_idx < cfg.n_y,
        "unit index ({n_x_idx},{n_y_idx}) out of range for {}x{} array",
        cfg.n_x,
        cfg.n_y
    );
    let d = cfg.spacing_over_lambda;
    [n_x_idx as f64 * d, n_y_idx as f64 * d, 0.0]
}

/// Summed incident phase factor at one unit:
/// `Σ_i exp(j 2π u_inᵀ(i) r(n_x, n_y))` over all incident directions.
///
/// For a single incidence the result has unit modulus; multiple incidences
/// can interfere destructively and the sum may approach zero.
pub fn incident_phase_sum(
    incidents: &[Direction],
    n_x_idx: usize,
    n_y_idx: usize,
    cfg: RisConfig,
) -> Result<Complex64> {
    if incidents.is_empty() {
        return Err(Error::EmptyIncidents);
    }
    let r = unit_position(n_x_idx, n_y_idx, cfg);
    let mut sum = Complex64::new(0.0, 0.0);
    for inc in incidents {
        let u = incident_unit_vector(*inc);
        // r[2] == 0, so the z component never contributes.
        let phase = TAU * (u[0] * r[0] + u[1] * r[1]);
        sum += Complex64::from_polar(1.0, phase);
    }
    Ok(sum)
}
