//! Mapping between observation angles and transform-domain frequencies
//! `(ω_1, ω_2)`, plus the uniform sampling grid used by the design.
//!
//! With spacing `d/λ` the mapping is
//! `ω_1 = 2π(d/λ) cos a sin e`, `ω_2 = 2π(d/λ) sin a sin e`.
//! Real directions cover only the disk `|ω| ≤ 2π(d/λ)`; the corners of the
//! `[-π, π)²` grid outside that disk correspond to no physical direction and
//! are zeroed by the design. At the half-wavelength spacing assumed by the
//! closed-form pipeline the disk radius is exactly π.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::geometry::{Direction, RisConfig};

/// Relative slack for disk-membership tests, absorbing the rounding of
/// `cos² + sin²` away from 1. Boundary points (elevation exactly π/2) count
/// as inside.
const DISK_EDGE_SLACK: f64 = 1e-12;

/// Size of the uniform transform-domain sampling grid.
///
/// The axes are `ω_{1,k} = 2πk/m_1 - π` and `ω_{2,l} = 2πl/m_2 - π`. The
/// design additionally requires `m_1 ≥ n_x` and `m_2 ≥ n_y`, checked when a
/// grid meets a [`RisConfig`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrequencyGridSpec {
    m_1: usize,
    m_2: usize,
}

impl FrequencyGridSpec {
    pub fn new(m_1: usize, m_2: usize) -> Result<Self> {
        if m_1 == 0 {
            return Err(Error::ZeroDimension { name: "m_1" });
        }
        if m_2 == 0 {
            return Err(Error::ZeroDimension { name: "m_2" });
        }
        Ok(Self { m_1, m_2 })
    }

    pub fn m_1(&self) -> usize {
        self.m_1
    }

    pub fn m_2(&self) -> usize {
        self.m_2
    }

    /// Errors unless `m_1 ≥ n_x` and `m_2 ≥ n_y`.
    pub fn require_covers(&self, cfg: RisConfig) -> Result<()> {
        if self.m_1 < cfg.n_x() || self.m_2 < cfg.n_y() {
            return Err(Error::GridTooSmall {
                m_1: self.m_1,
                m_2: self.m_2,
                n_x: cfg.n_x(),
                n_y: cfg.n_y(),
            });
        }
        Ok(())
    }
}

/// A transform-domain point together with its disk membership.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OmegaPoint {
    pub omega1: f64,
    pub omega2: f64,
    /// True when `sqrt(ω_1² + ω_2²)` does not exceed the visible-disk radius
    /// `2π(d/λ)` of the configuration that produced this point.
    pub inside_disk: bool,
}

/// Radius of the visible disk in the `(ω_1, ω_2)` plane: `2π(d/λ)`.
pub fn visible_disk_radius(cfg: RisConfig) -> f64 {
    TAU * cfg.spacing_over_lambda()
}

/// Maps an observation direction to its transform-domain point.
pub fn angle_to_omega(dir: Direction, cfg: RisConfig) -> OmegaPoint {
    let scale = visible_disk_radius(cfg);
    let (sin_a, cos_a) = dir.azimuth().sin_cos();
    let sin_e = dir.elevation().sin();
    let omega1 = scale * cos_a * sin_e;
    let omega2 = scale * sin_a * sin_e;
    let r = omega1.hypot(omega2);
    OmegaPoint {
        omega1,
        omega2,
        inside_disk: r <= scale * (1.0 + DISK_EDGE_SLACK),
    }
}

/// Maps a transform-domain point back to a direction, or `None` when the
/// point lies outside the visible disk.
///
/// Azimuth is the phase angle of `ω_1 + jω_2` mapped to `[0, 2π)`; elevation
/// is `asin(|ω| / (2π d/λ))`. The origin `ω = (0, 0)` maps to azimuth 0 by
/// convention (azimuth is undefined on the array normal).
pub fn omega_to_angle(p: OmegaPoint, cfg: RisConfig) -> Option<Direction> {
    let radius = visible_disk_radius(cfg);
    let r = p.omega1.hypot(p.omega2);
    if r > radius * (1.0 + DISK_EDGE_SLACK) {
        return None;
    }
    let mut azimuth = p.omega2.atan2(p.omega1);
    if azimuth < 0.0 {
        azimuth += TAU;
    }
    if azimuth >= TAU {
        // atan2 output of -epsilon can round to 2*pi after the shift.
        azimuth = 0.0;
    }
    let ratio = if r >= radius { 1.0 } else { r / radius };
    let elevation = ratio.asin();
    Some(Direction::new(azimuth, elevation).expect("mapped angles are in range"))
}

/// One uniform grid axis: `ω_k = 2πk/m - π` for `k = 0..m-1`, all in `[-π, π)`.
pub fn omega_axis(m: usize) -> Vec<f64> {
    (0..m).map(|k| TAU * k as f64 / m as f64 - PI).collect()
}

/// Both grid axes of `spec`: `(ω_{1,k} for k in 0..m_1, ω_{2,l} for l in 0..m_2)`.
pub fn build_grid(spec: FrequencyGridSpec) -> (Vec<f64>, Vec<f64>) {
    (omega_axis(spec.m_1), omega_axis(spec.m_2))
}

/// Largest admissible `d/λ` for a single direction: half the reciprocal of
/// the larger of `|cos a sin e|` and `|sin a sin e|`. Infinite on the array
/// normal (elevation 0), where any spacing keeps the direction in range.
pub fn spacing_bound_at(dir: Direction) -> f64 {
    let (sin_a, cos_a) = dir.azimuth().sin_cos();
    let sin_e = dir.elevation().sin();
    let denom = sin_e * cos_a.abs().max(sin_a.abs());
    if denom <= 0.0 {
        f64::INFINITY
    } else {
        0.5 / denom
    }
}
