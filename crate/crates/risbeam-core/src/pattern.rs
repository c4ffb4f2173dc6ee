//! Declarative desired beam patterns: shaped spots over azimuth × elevation,
//! point evaluation, spacing validation, and sampling onto the frequency grid.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use crate::angle::{self, FrequencyGridSpec};
use crate::error::{Error, Result};
use crate::geometry::{Direction, RisConfig};
use crate::matrix::RealMatrix;

/// Azimuth/elevation resolution of the dense sweep used by
/// [`validate_spacing`]: half a degree.
const SWEEP_STEP: f64 = PI / 360.0;

/// A magnitude table sampled on a rectilinear azimuth × elevation grid.
/// Evaluation is bilinear inside the grid's hull and zero outside.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleTable {
    azimuths: Vec<f64>,
    elevations: Vec<f64>,
    values: RealMatrix,
}

impl AngleTable {
    /// `values` is indexed `(azimuth index, elevation index)`. Both axes must
    /// be strictly increasing.
    pub fn new(azimuths: Vec<f64>, elevations: Vec<f64>, values: RealMatrix) -> Result<Self> {
        if azimuths.is_empty() || elevations.is_empty() {
            return Err(Error::InvalidTable {
                reason: "empty axis",
            });
        }
        if values.shape() != (azimuths.len(), elevations.len()) {
            return Err(Error::InvalidTable {
                reason: "value matrix shape does not match the axes",
            });
        }
        for axis in [&azimuths, &elevations] {
            if axis.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidTable {
                    reason: "non-finite axis value",
                });
            }
            if axis.windows(2).any(|w| w[1] <= w[0]) {
                return Err(Error::InvalidTable {
                    reason: "axes must be strictly increasing",
                });
            }
        }
        if values.as_slice().iter().any(|v| v.is_nan() || *v < 0.0) {
            return Err(Error::InvalidTable {
                reason: "magnitudes must be non-negative",
            });
        }
        Ok(Self {
            azimuths,
            elevations,
            values,
        })
    }

    fn sample(&self, az: f64, el: f64) -> f64 {
        let (a0, a1, ta) = match interp_index(&self.azimuths, az) {
            Some(x) => x,
            None => return 0.0,
        };
        let (e0, e1, te) = match interp_index(&self.elevations, el) {
            Some(x) => x,
            None => return 0.0,
        };
        let v00 = self.values[(a0, e0)];
        let v01 = self.values[(a0, e1)];
        let v10 = self.values[(a1, e0)];
        let v11 = self.values[(a1, e1)];
        let lo = v00 + (v10 - v00) * ta;
        let hi = v01 + (v11 - v01) * ta;
        lo + (hi - lo) * te
    }
}

/// Bracketing indices and interpolation weight for `x` in a sorted axis,
/// or `None` outside the axis range.
fn interp_index(axis: &[f64], x: f64) -> Option<(usize, usize, f64)> {
    let n = axis.len();
    if x < axis[0] || x > axis[n - 1] {
        return None;
    }
    if n == 1 {
        return Some((0, 0, 0.0));
    }
    let hi = axis.partition_point(|v| *v <= x).min(n - 1);
    let lo = hi - 1;
    let span = axis[hi] - axis[lo];
    let t = if span > 0.0 { (x - axis[lo]) / span } else { 0.0 };
    Some((lo, hi, t))
}

/// Geometric footprint of one beam spot in the (azimuth, elevation) plane.
#[derive(Debug, Clone, PartialEq)]
pub enum SpotShape {
    Rectangle {
        center: Direction,
        width_azimuth: f64,
        width_elevation: f64,
    },
    Circle {
        center: Direction,
        diameter: f64,
    },
    Custom(AngleTable),
}

/// One shaped beam spot with a magnitude level and an optional raised-cosine
/// edge of width `transition_width` (radians) straddling the hard edge;
/// zero width keeps the edge hard. The transition is ignored for custom
/// tables, which carry their own profile.
#[derive(Debug, Clone, PartialEq)]
pub struct BeamSpot {
    shape: SpotShape,
    magnitude: f64,
    transition_width: f64,
}

impl BeamSpot {
    pub fn new(shape: SpotShape, magnitude: f64, transition_width: f64) -> Result<Self> {
        if !(magnitude >= 0.0 && magnitude.is_finite()) {
            return Err(Error::NegativeQuantity {
                name: "magnitude",
                value: magnitude,
            });
        }
        if !(transition_width >= 0.0 && transition_width.is_finite()) {
            return Err(Error::NegativeQuantity {
                name: "transition_width",
                value: transition_width,
            });
        }
        match &shape {
            SpotShape::Rectangle {
                width_azimuth,
                width_elevation,
                ..
            } => {
                for (name, v) in [
                    ("width_azimuth", *width_azimuth),
                    ("width_elevation", *width_elevation),
                ] {
                    if !(v >= 0.0 && v.is_finite()) {
                        return Err(Error::NegativeQuantity { name, value: v });
                    }
                }
            }
            SpotShape::Circle { diameter, .. } => {
                if !(*diameter >= 0.0 && diameter.is_finite()) {
                    return Err(Error::NegativeQuantity {
                        name: "diameter",
                        value: *diameter,
                    });
                }
            }
            SpotShape::Custom(_) => {}
        }
        Ok(Self {
            shape,
            magnitude,
            transition_width,
        })
    }

    /// Spot magnitude at a direction.
    pub fn magnitude_at(&self, dir: Direction) -> f64 {
        let w = self.transition_width;
        match &self.shape {
            SpotShape::Rectangle {
                center,
                width_azimuth,
                width_elevation,
            } => {
                let da = wrap_delta(dir.azimuth(), center.azimuth()).abs();
                let de = (dir.elevation() - center.elevation()).abs();
                self.magnitude
                    * edge_ramp(da, width_azimuth / 2.0, w)
                    * edge_ramp(de, width_elevation / 2.0, w)
            }
            SpotShape::Circle { center, diameter } => {
                let da = wrap_delta(dir.azimuth(), center.azimuth());
                let de = dir.elevation() - center.elevation();
                let r = da.hypot(de);
                self.magnitude * edge_ramp(r, diameter / 2.0, w)
            }
            SpotShape::Custom(table) => {
                self.magnitude * table.sample(dir.azimuth(), dir.elevation())
            }
        }
    }
}

/// Azimuth difference wrapped to `[-π, π)`, so shapes straddling the 0/2π
/// seam evaluate correctly.
fn wrap_delta(a: f64, center: f64) -> f64 {
    let mut d = a - center;
    if d >= PI {
        d -= TAU;
    } else if d < -PI {
        d += TAU;
    }
    d
}

/// 1 inside the plateau, 0 outside, raised-cosine over the band of width `w`
/// straddling `half_extent`.
fn edge_ramp(x: f64, half_extent: f64, w: f64) -> f64 {
    if w <= 0.0 {
        return if x <= half_extent { 1.0 } else { 0.0 };
    }
    let lo = half_extent - w / 2.0;
    let hi = half_extent + w / 2.0;
    if x <= lo {
        1.0
    } else if x >= hi {
        0.0
    } else {
        0.5 * (1.0 + (PI * (x - lo) / w).cos())
    }
}

/// The desired beam-pattern magnitude: overlapping spots combine by taking
/// the pointwise maximum, which preserves each spot's specified level.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct DesiredPattern {
    spots: Vec<BeamSpot>,
}

impl DesiredPattern {
    pub fn new(spots: Vec<BeamSpot>) -> Self {
        Self { spots }
    }

    pub fn spots(&self) -> &[BeamSpot] {
        &self.spots
    }

    /// Desired magnitude at a direction: maximum over spots, zero outside all.
    pub fn magnitude_at(&self, dir: Direction) -> f64 {
        self.spots
            .iter()
            .map(|s| s.magnitude_at(dir))
            .fold(0.0, f64::max)
    }

    /// Scales every spot magnitude by `c >= 0`.
    pub fn scaled(&self, c: f64) -> Self {
        let spots = self
            .spots
            .iter()
            .map(|s| BeamSpot {
                shape: s.shape.clone(),
                magnitude: s.magnitude * c,
                transition_width: s.transition_width,
            })
            .collect();
        Self { spots }
    }
}

/// Result of checking the unit-spacing bound over a pattern's support.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpacingCheck {
    /// Whether `cfg.spacing_over_lambda` respects the bound.
    pub admissible: bool,
    /// Tightest admissible `d/λ` over the support; infinite for an empty
    /// support. Half-wavelength spacing is always admissible.
    pub max_spacing_over_lambda: f64,
}

/// Evaluates the spacing bound over the pattern's support by a half-degree
/// dense sweep of the angle domain.
pub fn validate_spacing(pattern: &DesiredPattern, cfg: RisConfig) -> SpacingCheck {
    let mut bound = f64::INFINITY;
    let n_az = (TAU / SWEEP_STEP) as usize;
    let n_el = (PI / 2.0 / SWEEP_STEP) as usize;
    for ia in 0..n_az {
        for ie in 0..=n_el {
            let d = Direction::new(
                ia as f64 * SWEEP_STEP,
                (ie as f64 * SWEEP_STEP).min(PI / 2.0),
            )
            .expect("sweep angles are in range");
            if pattern.magnitude_at(d) > 0.0 {
                bound = bound.min(angle::spacing_bound_at(d));
            }
        }
    }
    SpacingCheck {
        admissible: cfg.spacing_over_lambda() <= bound,
        max_spacing_over_lambda: bound,
    }
}

/// The desired magnitude sampled on the `M_1 × M_2` frequency grid, zero at
/// grid points outside the visible disk.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGrid {
    spec: FrequencyGridSpec,
    /// Disk radius `2π(d/λ)` of the configuration the grid was sampled for.
    disk_radius: f64,
    values: RealMatrix,
}

impl FrequencyGrid {
    /// Wraps precomputed samples. `values` must be `m_1 × m_2` and non-negative.
    pub fn new(spec: FrequencyGridSpec, disk_radius: f64, values: RealMatrix) -> Result<Self> {
        if values.shape() != (spec.m_1(), spec.m_2()) {
            return Err(Error::ShapeMismatch {
                expected: (spec.m_1(), spec.m_2()),
                actual: values.shape(),
            });
        }
        if let Some(v) = values.as_slice().iter().find(|v| v.is_nan() || **v < 0.0) {
            return Err(Error::NegativeQuantity {
                name: "grid value",
                value: *v,
            });
        }
        Ok(Self {
            spec,
            disk_radius,
            values,
        })
    }

    pub fn spec(&self) -> FrequencyGridSpec {
        self.spec
    }

    pub fn disk_radius(&self) -> f64 {
        self.disk_radius
    }

    pub fn values(&self) -> &RealMatrix {
        &self.values
    }

    /// Sum of squared samples, the normalizer of the normalized TSE.
    pub fn sum_sq(&self) -> f64 {
        self.values.sum_sq()
    }
}

/// Samples the desired magnitude onto the frequency grid: each in-disk grid
/// point maps back to a direction and takes the pattern's magnitude there;
/// points outside the disk are zero.
///
/// Errors when the spacing bound over the pattern's support is violated.
pub fn sample_to_grid(
    pattern: &DesiredPattern,
    spec: FrequencyGridSpec,
    cfg: RisConfig,
) -> Result<FrequencyGrid> {
    let check = validate_spacing(pattern, cfg);
    if !check.admissible {
        return Err(Error::SpacingExceedsBound {
            spacing: cfg.spacing_over_lambda(),
            bound: check.max_spacing_over_lambda,
        });
    }
    let (axis1, axis2) = angle::build_grid(spec);
    let radius = angle::visible_disk_radius(cfg);
    let values = RealMatrix::from_fn(spec.m_1(), spec.m_2(), |k, l| {
        let p = crate::angle::OmegaPoint {
            omega1: axis1[k],
            omega2: axis2[l],
            inside_disk: true,
        };
        match angle::omega_to_angle(p, cfg) {
            Some(dir) => pattern.magnitude_at(dir),
            None => 0.0,
        }
    });
    Ok(FrequencyGrid {
        spec,
        disk_radius: radius,
        values,
    })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use core::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6};

    fn dir(az: f64, el: f64) -> Direction {
        Direction::new(az, el).unwrap()
    }

    /// Two-spot setup used across the crate's tests: a π/3 × π/6 rectangle of
    /// magnitude 1 at (π/2, π/4) and a circle of diameter π/6 and magnitude
    /// 0.5 at (3π/2, π/4).
    pub fn two_spot_pattern(transition_width: f64) -> DesiredPattern {
        DesiredPattern::new(alloc::vec![
            BeamSpot::new(
                SpotShape::Rectangle {
                    center: dir(FRAC_PI_2, FRAC_PI_4),
                    width_azimuth: FRAC_PI_3,
                    width_elevation: FRAC_PI_6,
                },
                1.0,
                transition_width,
            )
            .unwrap(),
            BeamSpot::new(
                SpotShape::Circle {
                    center: dir(3.0 * FRAC_PI_2, FRAC_PI_4),
                    diameter: FRAC_PI_6,
                },
                0.5,
                transition_width,
            )
            .unwrap(),
        ])
    }

    #[test]
    fn evaluates_spot_centers_and_background() {
        let p = two_spot_pattern(0.0);
        assert_eq!(p.magnitude_at(dir(FRAC_PI_2, FRAC_PI_4)), 1.0);
        assert_eq!(p.magnitude_at(dir(3.0 * FRAC_PI_2, FRAC_PI_4)), 0.5);
        assert_eq!(p.magnitude_at(dir(PI, FRAC_PI_4)), 0.0);
        assert_eq!(p.magnitude_at(dir(0.0, 0.0)), 0.0);
    }

    #[test]
    fn rectangle_edges_are_inclusive() {
        // Exact edge distance counts as inside the hard-edged spot.
        assert_eq!(edge_ramp(0.5, 0.5, 0.0), 1.0);
        let p = two_spot_pattern(0.0);
        assert_eq!(
            p.magnitude_at(dir(FRAC_PI_2 + FRAC_PI_6 - 1e-9, FRAC_PI_4)),
            1.0
        );
        assert_eq!(
            p.magnitude_at(dir(FRAC_PI_2 + FRAC_PI_6 + 1e-9, FRAC_PI_4)),
            0.0
        );
    }

    #[test]
    fn azimuth_wraps_across_zero() {
        let spot = BeamSpot::new(
            SpotShape::Rectangle {
                center: dir(0.1, FRAC_PI_4),
                width_azimuth: 0.5,
                width_elevation: 0.5,
            },
            2.0,
            0.0,
        )
        .unwrap();
        let p = DesiredPattern::new(alloc::vec![spot]);
        assert_eq!(p.magnitude_at(dir(TAU - 0.05, FRAC_PI_4)), 2.0);
        assert_eq!(p.magnitude_at(dir(TAU - 0.2, FRAC_PI_4)), 0.0);
    }

    #[test]
    fn overlapping_spots_take_the_maximum() {
        let mk = |mag: f64| {
            BeamSpot::new(
                SpotShape::Circle {
                    center: dir(1.0, 0.5),
                    diameter: 0.4,
                },
                mag,
                0.0,
            )
            .unwrap()
        };
        let p = DesiredPattern::new(alloc::vec![mk(0.3), mk(0.9)]);
        assert_eq!(p.magnitude_at(dir(1.0, 0.5)), 0.9);
    }

    #[test]
    fn raised_cosine_transition_is_bounded_and_monotone() {
        let p = two_spot_pattern(0.05);
        let hard = two_spot_pattern(0.0);
        let hard_max = 1.0;
        let mut seen_between = false;
        for ia in 0..720 {
            for ie in 0..=180 {
                let d = dir(
                    ia as f64 * PI / 360.0,
                    (ie as f64 * PI / 360.0).min(FRAC_PI_2),
                );
                let v = p.magnitude_at(d);
                assert!(v >= 0.0);
                assert!(v <= hard_max + 1e-15);
                if v > 0.0 && v < 0.5 && hard.magnitude_at(d) == 0.0 {
                    seen_between = true;
                }
            }
        }
        // The transition band actually produced intermediate values.
        assert!(seen_between);
    }

    #[test]
    fn custom_table_bilinear_interpolation() {
        let table = AngleTable::new(
            alloc::vec![0.0, 1.0],
            alloc::vec![0.0, 1.0],
            RealMatrix::from_vec(2, 2, alloc::vec![0.0, 1.0, 2.0, 3.0]),
        )
        .unwrap();
        let spot = BeamSpot::new(SpotShape::Custom(table), 1.0, 0.0).unwrap();
        assert!((spot.magnitude_at(dir(0.5, 0.5)) - 1.5).abs() < 1e-12);
        assert!((spot.magnitude_at(dir(0.0, 1.0)) - 1.0).abs() < 1e-12);
        // Outside the table's hull.
        assert_eq!(spot.magnitude_at(dir(2.0, 0.5)), 0.0);
    }

    #[test]
    fn custom_table_validation() {
        assert!(AngleTable::new(
            alloc::vec![1.0, 0.5],
            alloc::vec![0.0, 1.0],
            RealMatrix::zeros(2, 2)
        )
        .is_err());
        assert!(AngleTable::new(
            alloc::vec![0.0, 1.0],
            alloc::vec![0.0, 1.0],
            RealMatrix::zeros(3, 2)
        )
        .is_err());
    }

    #[test]
    fn spacing_validation_examples() {
        let cfg_half = RisConfig::new(32, 32, 0.5).unwrap();
        let p = two_spot_pattern(0.0);
        let check = validate_spacing(&p, cfg_half);
        assert!(check.admissible);

        // Support confined to elevation <= pi/6 admits d/lambda up to 1.
        let low = DesiredPattern::new(alloc::vec![BeamSpot::new(
            SpotShape::Rectangle {
                center: dir(PI, FRAC_PI_6 / 2.0),
                width_azimuth: TAU,
                width_elevation: FRAC_PI_6,
            },
            1.0,
            0.0,
        )
        .unwrap()]);
        let cfg_wide = RisConfig::new(32, 32, 0.9).unwrap();
        let check = validate_spacing(&low, cfg_wide);
        assert!(check.admissible);
        assert!(
            (check.max_spacing_over_lambda - 1.0).abs() < 1e-9,
            "bound = {}",
            check.max_spacing_over_lambda
        );

        // Support touching (0, pi/2) caps the bound at one half.
        let grazing = DesiredPattern::new(alloc::vec![BeamSpot::new(
            SpotShape::Circle {
                center: dir(0.0, FRAC_PI_2),
                diameter: 0.2,
            },
            1.0,
            0.0,
        )
        .unwrap()]);
        let cfg_06 = RisConfig::new(32, 32, 0.6).unwrap();
        let check = validate_spacing(&grazing, cfg_06);
        assert!(!check.admissible);
        assert!((check.max_spacing_over_lambda - 0.5).abs() < 1e-9);
    }

    #[test]
    fn empty_pattern_admits_any_spacing() {
        let p = DesiredPattern::default();
        let check = validate_spacing(&p, RisConfig::new(4, 4, 25.0).unwrap());
        assert!(check.admissible);
        assert!(check.max_spacing_over_lambda.is_infinite());
    }

    #[test]
    fn zero_pattern_samples_to_zero_grid() {
        let spec = FrequencyGridSpec::new(16, 16).unwrap();
        let cfg = RisConfig::new(8, 8, 0.5).unwrap();
        let g = sample_to_grid(&DesiredPattern::default(), spec, cfg).unwrap();
        assert!(g.values().as_slice().iter().all(|v| *v == 0.0));
    }

    #[test]
    fn corner_grid_points_are_zero() {
        let spec = FrequencyGridSpec::new(64, 64).unwrap();
        let cfg = RisConfig::new(16, 16, 0.5).unwrap();
        let g = sample_to_grid(&two_spot_pattern(0.0), spec, cfg).unwrap();
        // (k, l) = (0, 0) is omega = (-pi, -pi), radius pi*sqrt(2) > pi.
        assert_eq!(g.values()[(0, 0)], 0.0);
        let (axis1, axis2) = angle::build_grid(spec);
        for k in 0..64 {
            for l in 0..64 {
                if axis1[k].hypot(axis2[l]) > PI * (1.0 + 1e-12) {
                    assert_eq!(g.values()[(k, l)], 0.0, "corner ({k},{l}) not zero");
                }
            }
        }
    }

    #[test]
    fn paper_setup_grid_value_near_rectangle_center() {
        let spec = FrequencyGridSpec::new(128, 128).unwrap();
        let cfg = RisConfig::new(32, 32, 0.5).unwrap();
        let pattern = two_spot_pattern(0.0);
        let g = sample_to_grid(&pattern, spec, cfg).unwrap();

        // Grid point nearest to the omega image of the rectangle center.
        let center = angle::angle_to_omega(dir(FRAC_PI_2, FRAC_PI_4), cfg);
        let k = ((center.omega1 + PI) * 128.0 / TAU).round() as usize;
        let l = ((center.omega2 + PI) * 128.0 / TAU).round() as usize;

        // Independent oracle: evaluate the pattern at that grid point's angles.
        let (axis1, axis2) = angle::build_grid(spec);
        let p = crate::angle::OmegaPoint {
            omega1: axis1[k],
            omega2: axis2[l],
            inside_disk: true,
        };
        let expected = pattern.magnitude_at(angle::omega_to_angle(p, cfg).unwrap());
        assert_eq!(g.values()[(k, l)], expected);
        assert_eq!(expected, 1.0);
    }

    #[test]
    fn sampling_is_deterministic() {
        let spec = FrequencyGridSpec::new(32, 32).unwrap();
        let cfg = RisConfig::new(8, 8, 0.5).unwrap();
        let a = sample_to_grid(&two_spot_pattern(0.02), spec, cfg).unwrap();
        let b = sample_to_grid(&two_spot_pattern(0.02), spec, cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sampling_rejects_excessive_spacing() {
        let spec = FrequencyGridSpec::new(32, 32).unwrap();
        let cfg = RisConfig::new(8, 8, 0.6).unwrap();
        let err = sample_to_grid(&two_spot_pattern(0.0), spec, cfg).unwrap_err();
        assert!(matches!(err, Error::SpacingExceedsBound { .. }));
    }
}
