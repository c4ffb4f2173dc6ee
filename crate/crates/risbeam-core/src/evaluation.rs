//! Forward beam-pattern computation and quality metrics.
//!
//! Two algebraically equivalent evaluation routes exist and are kept
//! deliberately independent: [`beam_pattern`] sums the per-unit reflected
//! phasors through the array geometry, while the filter route evaluates the
//! coefficients' frequency response at the mapped `(ω_1, ω_2)` points
//! ([`filter_response_at`] pointwise, [`grid_response`] on the whole design
//! grid via a forward FFT). Agreement between the two is part of the crate's
//! acceptance checks.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec::Vec;
use core::f64::consts::TAU;
use num_complex::Complex64;

use crate::angle::{self, FrequencyGridSpec};
use crate::error::{Error, Result};
use crate::fft;
use crate::geometry::{incident_phase_sum, observation_unit_vector, Direction, RisConfig};
use crate::matrix::{ComplexMatrix, RealMatrix};
use crate::pattern::FrequencyGrid;
use crate::synthesis::{FilterCoefficients, ReflectionCoefficients};

/// Complex response sampled on the design grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridPattern {
    spec: FrequencyGridSpec,
    disk_radius: f64,
    response: ComplexMatrix,
}

impl GridPattern {
    /// Wraps a precomputed response; `response` must be `m_1 × m_2`.
    pub fn from_parts(
        spec: FrequencyGridSpec,
        disk_radius: f64,
        response: ComplexMatrix,
    ) -> Result<Self> {
        if response.shape() != (spec.m_1(), spec.m_2()) {
            return Err(Error::ShapeMismatch {
                expected: (spec.m_1(), spec.m_2()),
                actual: response.shape(),
            });
        }
        Ok(Self {
            spec,
            disk_radius,
            response,
        })
    }

    pub fn spec(&self) -> FrequencyGridSpec {
        self.spec
    }

    pub fn disk_radius(&self) -> f64 {
        self.disk_radius
    }

    pub fn response(&self) -> &ComplexMatrix {
        &self.response
    }

    /// `|g|` with grid points outside the visible disk set to zero, the
    /// designed-side magnitude entering the TSE.
    pub fn masked_magnitudes(&self) -> RealMatrix {
        let (axis1, axis2) = angle::build_grid(self.spec);
        RealMatrix::from_fn(self.spec.m_1(), self.spec.m_2(), |k, l| {
            if axis1[k].hypot(axis2[l]) <= self.disk_radius * (1.0 + 1e-12) {
                self.response[(k, l)].norm()
            } else {
                0.0
            }
        })
    }
}

/// Complex response at an arbitrary list of directions.
#[derive(Debug, Clone, PartialEq)]
pub struct AnglePattern {
    directions: Vec<Direction>,
    response: Vec<Complex64>,
}

impl AnglePattern {
    pub fn directions(&self) -> &[Direction] {
        &self.directions
    }

    pub fn response(&self) -> &[Complex64] {
        &self.response
    }

    pub fn magnitudes(&self) -> Vec<f64> {
        self.response.iter().map(|z| z.norm()).collect()
    }
}

/// Per-unit incident phase sums as a matrix.
fn incident_sums(
    incidents: &[Direction],
    cfg: RisConfig,
) -> Result<ComplexMatrix> {
    if incidents.is_empty() {
        return Err(Error::EmptyIncidents);
    }
    let mut sums = ComplexMatrix::zeros(cfg.n_x(), cfg.n_y());
    for nx in 0..cfg.n_x() {
        for ny in 0..cfg.n_y() {
            sums[(nx, ny)] = incident_phase_sum(incidents, nx, ny, cfg)?;
        }
    }
    Ok(sums)
}

fn check_shape(v: &ReflectionCoefficients, cfg: RisConfig) -> Result<()> {
    if v.matrix().shape() != (cfg.n_x(), cfg.n_y()) {
        return Err(Error::ShapeMismatch {
            expected: (cfg.n_x(), cfg.n_y()),
            actual: v.matrix().shape(),
        });
    }
    Ok(())
}

/// Aggregate reflected response at each requested direction, summed through
/// the array geometry:
/// `g(dir) = Σ_{n_x,n_y} [Σ_i e^{j2π u_inᵀr}] v(n_x,n_y) e^{-j2π u(dir)ᵀr}`.
pub fn beam_pattern(
    v: &ReflectionCoefficients,
    incidents: &[Direction],
    cfg: RisConfig,
    directions: &[Direction],
) -> Result<AnglePattern> {
    check_shape(v, cfg)?;
    let sums = incident_sums(incidents, cfg)?;
    let d = cfg.spacing_over_lambda();
    let response = directions
        .iter()
        .map(|dir| {
            let u = observation_unit_vector(*dir);
            let mut g = Complex64::new(0.0, 0.0);
            for nx in 0..cfg.n_x() {
                let x = nx as f64 * d;
                for ny in 0..cfg.n_y() {
                    let y = ny as f64 * d;
                    let phase = -TAU * (u[0] * x + u[1] * y);
                    g += sums[(nx, ny)] * v.matrix()[(nx, ny)] * Complex64::from_polar(1.0, phase);
                }
            }
            g
        })
        .collect();
    Ok(AnglePattern {
        directions: directions.to_vec(),
        response,
    })
}

/// Frequency response of a coefficient matrix at one transform-domain point:
/// `Σ_{n_x,n_y} h(n_x,n_y) e^{-j(n_x ω_1 + n_y ω_2)}`, evaluated by the
/// direct double sum.
pub fn filter_response_at(h: &ComplexMatrix, omega1: f64, omega2: f64) -> Complex64 {
    let mut g = Complex64::new(0.0, 0.0);
    for nx in 0..h.rows() {
        for ny in 0..h.cols() {
            let phase = -(nx as f64 * omega1 + ny as f64 * omega2);
            g += h[(nx, ny)] * Complex64::from_polar(1.0, phase);
        }
    }
    g
}

/// Frequency response of a coefficient matrix at every design-grid point,
/// computed with one zero-padded forward FFT.
///
/// On the grid `ω_k = 2πk/M - π` the response factors as the unnormalized
/// forward transform of the `(-1)^{n_x+n_y}`-modulated, zero-padded
/// coefficients.
fn grid_filter_response(h: &ComplexMatrix, spec: FrequencyGridSpec) -> ComplexMatrix {
    let mut padded = ComplexMatrix::zeros(spec.m_1(), spec.m_2());
    for nx in 0..h.rows() {
        for ny in 0..h.cols() {
            let sign = if (nx + ny) % 2 == 0 { 1.0 } else { -1.0 };
            padded[(nx, ny)] = h[(nx, ny)] * sign;
        }
    }
    fft::fft2(&padded)
}

/// Response of the reflection coefficients on the design grid. The effective
/// filter is the elementwise product of the incident phase sums with `v`.
pub fn grid_response(
    v: &ReflectionCoefficients,
    incidents: &[Direction],
    cfg: RisConfig,
    spec: FrequencyGridSpec,
) -> Result<GridPattern> {
    check_shape(v, cfg)?;
    spec.require_covers(cfg)?;
    let sums = incident_sums(incidents, cfg)?;
    let h_eff = ComplexMatrix::from_fn(cfg.n_x(), cfg.n_y(), |nx, ny| {
        sums[(nx, ny)] * v.matrix()[(nx, ny)]
    });
    Ok(GridPattern {
        spec,
        disk_radius: angle::visible_disk_radius(cfg),
        response: grid_filter_response(&h_eff, spec),
    })
}

/// Zero-phase response of Hermitian filter coefficients on the design grid:
/// `e^{j[(N_x-1)/2 ω_1 + (N_y-1)/2 ω_2]} H(e^{jω_1}, e^{jω_2})`. Purely real
/// up to rounding; the imaginary part is returned for verification.
pub fn zero_phase_response(
    h: &FilterCoefficients,
    spec: FrequencyGridSpec,
) -> Result<ComplexMatrix> {
    if spec.m_1() < h.n_x() || spec.m_2() < h.n_y() {
        return Err(Error::GridTooSmall {
            m_1: spec.m_1(),
            m_2: spec.m_2(),
            n_x: h.n_x(),
            n_y: h.n_y(),
        });
    }
    let response = grid_filter_response(h.matrix(), spec);
    let (axis1, axis2) = angle::build_grid(spec);
    let a1 = (h.n_x() as f64 - 1.0) / 2.0;
    let a2 = (h.n_y() as f64 - 1.0) / 2.0;
    Ok(ComplexMatrix::from_fn(spec.m_1(), spec.m_2(), |k, l| {
        response[(k, l)] * Complex64::from_polar(1.0, a1 * axis1[k] + a2 * axis2[l])
    }))
}

/// Total squared error between the designed magnitude (zero outside the
/// visible disk) and the desired samples, summed over the whole grid.
pub fn tse(designed: &GridPattern, desired: &FrequencyGrid) -> Result<f64> {
    if designed.spec() != desired.spec() {
        return Err(Error::ShapeMismatch {
            expected: (desired.spec().m_1(), desired.spec().m_2()),
            actual: (designed.spec().m_1(), designed.spec().m_2()),
        });
    }
    let h = designed.masked_magnitudes();
    let err: f64 = h
        .as_slice()
        .iter()
        .zip(desired.values().as_slice())
        .map(|(a, b)| (a - b) * (a - b))
        .sum();
    Ok(err)
}

/// TSE of the real zero-phase response against the desired samples over the
/// whole grid. This is the quadratic functional the closed-form design
/// minimizes, used by the optimality checks.
pub fn zero_phase_tse(h: &FilterCoefficients, desired: &FrequencyGrid) -> Result<f64> {
    let z = zero_phase_response(h, desired.spec())?;
    Ok(z.as_slice()
        .iter()
        .zip(desired.values().as_slice())
        .map(|(zv, dv)| {
            let e = zv.re - dv;
            e * e
        })
        .sum())
}

/// TSE divided by the desired grid's total squared magnitude. Errors on an
/// all-zero desired grid.
pub fn normalized_tse(designed: &GridPattern, desired: &FrequencyGrid) -> Result<f64> {
    let denom = desired.sum_sq();
    if denom <= 0.0 {
        return Err(Error::ZeroDesiredGrid);
    }
    Ok(tse(designed, desired)? / denom)
}

/// Default azimuth sample count of [`cross_section`]; over-resolves the
/// lobes of any array this crate is practically used with.
pub const DEFAULT_CROSS_SECTION_SAMPLES: usize = 1024;

/// `|g|` at `n_azimuth_samples` uniformly spaced azimuths in `[0, 2π)` at a
/// fixed elevation.
pub fn cross_section(
    v: &ReflectionCoefficients,
    incidents: &[Direction],
    cfg: RisConfig,
    elevation: f64,
    n_azimuth_samples: usize,
) -> Result<Vec<(f64, f64)>> {
    let directions: Vec<Direction> = (0..n_azimuth_samples)
        .map(|i| Direction::new(i as f64 * TAU / n_azimuth_samples as f64, elevation))
        .collect::<Result<_>>()?;
    let pattern = beam_pattern(v, incidents, cfg, &directions)?;
    Ok(directions
        .iter()
        .zip(pattern.magnitudes())
        .map(|(d, m)| (d.azimuth(), m))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::{angle_to_omega, build_grid};
    use crate::matrix::RealMatrix;
    use alloc::vec;
    use core::f64::consts::{FRAC_PI_2, PI};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn dir(az: f64, el: f64) -> Direction {
        Direction::new(az, el).unwrap()
    }

    fn random_coeffs(rows: usize, cols: usize, seed: u64) -> ReflectionCoefficients {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        ReflectionCoefficients::from_matrix(ComplexMatrix::from_fn(rows, cols, |_, _| {
            Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
        }))
    }

    #[test]
    fn zero_coefficients_give_zero_pattern() {
        let cfg = RisConfig::new(4, 4, 0.5).unwrap();
        let v = ReflectionCoefficients::from_matrix(ComplexMatrix::zeros(4, 4));
        let dirs = [dir(0.0, 0.0), dir(1.0, 0.7), dir(4.0, FRAC_PI_2)];
        let p = beam_pattern(&v, &[dir(0.0, 0.0)], cfg, &dirs).unwrap();
        assert!(p.magnitudes().iter().all(|m| *m == 0.0));
    }

    #[test]
    fn single_unit_array_is_isotropic() {
        // One unit at the origin: no phase differences anywhere.
        let cfg = RisConfig::new(1, 1, 0.5).unwrap();
        let v = ReflectionCoefficients::from_matrix(ComplexMatrix::from_vec(
            1,
            1,
            vec![Complex64::new(1.0, 0.0)],
        ));
        let dirs = [dir(0.0, 0.0), dir(2.0, 0.3), dir(5.5, FRAC_PI_2)];
        let p = beam_pattern(&v, &[dir(0.3, 0.9)], cfg, &dirs).unwrap();
        for g in p.response() {
            assert!((g - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn grid_response_matches_pointwise_filter_evaluation() {
        let cfg = RisConfig::new(4, 6, 0.5).unwrap();
        let spec = FrequencyGridSpec::new(8, 12).unwrap();
        let v = random_coeffs(4, 6, 21);
        let incidents = [dir(0.7, 0.4), dir(3.0, 1.0)];
        let grid = grid_response(&v, &incidents, cfg, spec).unwrap();

        let sums = incident_sums(&incidents, cfg).unwrap();
        let h_eff = ComplexMatrix::from_fn(4, 6, |nx, ny| sums[(nx, ny)] * v.matrix()[(nx, ny)]);
        let (axis1, axis2) = build_grid(spec);
        for k in [0usize, 3, 7] {
            for l in [0usize, 5, 11] {
                let direct = filter_response_at(&h_eff, axis1[k], axis2[l]);
                assert!(
                    (grid.response()[(k, l)] - direct).norm() < 1e-10,
                    "({k},{l})"
                );
            }
        }
    }

    #[test]
    fn tse_examples() {
        let spec = FrequencyGridSpec::new(8, 8).unwrap();
        let values = RealMatrix::from_fn(8, 8, |k, l| {
            let (axis1, axis2) = build_grid(spec);
            if axis1[k].hypot(axis2[l]) <= PI {
                0.25
            } else {
                0.0
            }
        });
        let desired = FrequencyGrid::new(spec, PI, values.clone()).unwrap();

        // Designed == desired gives zero error. Build the designed response
        // directly from the desired magnitudes.
        let response = ComplexMatrix::from_fn(8, 8, |k, l| Complex64::new(values[(k, l)], 0.0));
        let designed = GridPattern::from_parts(spec, PI, response).unwrap();
        assert_eq!(tse(&designed, &desired).unwrap(), 0.0);

        // A unit mismatch at exactly one in-disk grid point adds exactly one.
        let mut bumped = values.clone();
        bumped[(4, 4)] += 1.0;
        let response = ComplexMatrix::from_fn(8, 8, |k, l| Complex64::new(bumped[(k, l)], 0.0));
        let designed = GridPattern::from_parts(spec, PI, response).unwrap();
        assert!((tse(&designed, &desired).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn tse_is_symmetric_in_its_operands() {
        let spec = FrequencyGridSpec::new(6, 6).unwrap();
        let (axis1, axis2) = build_grid(spec);
        let in_disk = |k: usize, l: usize| axis1[k].hypot(axis2[l]) <= PI;
        let a = RealMatrix::from_fn(6, 6, |k, l| {
            if in_disk(k, l) {
                ((k * 3 + l) % 5) as f64 / 5.0
            } else {
                0.0
            }
        });
        let b = RealMatrix::from_fn(6, 6, |k, l| {
            if in_disk(k, l) {
                ((k + 2 * l) % 7) as f64 / 7.0
            } else {
                0.0
            }
        });
        let as_pattern = |m: &RealMatrix| {
            GridPattern::from_parts(
                spec,
                PI,
                ComplexMatrix::from_fn(6, 6, |k, l| Complex64::new(m[(k, l)], 0.0)),
            )
            .unwrap()
        };
        let as_grid = |m: &RealMatrix| FrequencyGrid::new(spec, PI, m.clone()).unwrap();
        let forward = tse(&as_pattern(&a), &as_grid(&b)).unwrap();
        let backward = tse(&as_pattern(&b), &as_grid(&a)).unwrap();
        assert!((forward - backward).abs() < 1e-12);
    }

    #[test]
    fn normalized_tse_examples() {
        let spec = FrequencyGridSpec::new(4, 4).unwrap();
        let values = RealMatrix::from_fn(4, 4, |k, l| if k == 2 && l == 2 { 2.0 } else { 0.0 });
        let desired = FrequencyGrid::new(spec, PI, values.clone()).unwrap();

        let exact = GridPattern::from_parts(
            spec,
            PI,
            ComplexMatrix::from_fn(4, 4, |k, l| Complex64::new(values[(k, l)], 0.0)),
        )
        .unwrap();
        assert_eq!(normalized_tse(&exact, &desired).unwrap(), 0.0);

        // All-zero designed response scores exactly one.
        let zero = GridPattern::from_parts(spec, PI, ComplexMatrix::zeros(4, 4)).unwrap();
        assert!((normalized_tse(&zero, &desired).unwrap() - 1.0).abs() < 1e-15);

        let empty = FrequencyGrid::new(spec, PI, RealMatrix::zeros(4, 4)).unwrap();
        assert_eq!(
            normalized_tse(&zero, &empty).unwrap_err(),
            Error::ZeroDesiredGrid
        );
    }

    #[test]
    fn normalized_tse_is_scale_invariant() {
        let spec = FrequencyGridSpec::new(4, 4).unwrap();
        let base = RealMatrix::from_fn(4, 4, |k, l| ((k + l) % 3) as f64 * 0.3);
        for c in [2.0f64, 7.3] {
            let desired = FrequencyGrid::new(spec, PI, base.clone()).unwrap();
            let scaled_desired = FrequencyGrid::new(
                spec,
                PI,
                RealMatrix::from_fn(4, 4, |k, l| base[(k, l)] * c),
            )
            .unwrap();
            let response = |scale: f64| {
                GridPattern::from_parts(
                    spec,
                    PI,
                    ComplexMatrix::from_fn(4, 4, |k, l| {
                        Complex64::new((base[(k, l)] + 0.1) * scale, 0.0)
                    }),
                )
                .unwrap()
            };
            let plain = normalized_tse(&response(1.0), &desired).unwrap();
            let scaled = normalized_tse(&response(c), &scaled_desired).unwrap();
            assert!(
                (plain - scaled).abs() < 1e-12,
                "c = {c}: {plain} vs {scaled}"
            );
        }
    }

    #[test]
    fn cross_section_of_zero_coefficients() {
        let cfg = RisConfig::new(2, 2, 0.5).unwrap();
        let v = ReflectionCoefficients::from_matrix(ComplexMatrix::zeros(2, 2));
        let cs = cross_section(&v, &[dir(0.0, 0.0)], cfg, 0.5, 64).unwrap();
        assert_eq!(cs.len(), 64);
        assert!(cs.iter().all(|(_, m)| *m == 0.0));
        assert_eq!(cs[0].0, 0.0);
        assert!(cs.iter().all(|(a, _)| (0.0..TAU).contains(a)));
    }

    #[test]
    fn cross_section_rejects_bad_elevation() {
        let cfg = RisConfig::new(2, 2, 0.5).unwrap();
        let v = ReflectionCoefficients::from_matrix(ComplexMatrix::zeros(2, 2));
        assert!(cross_section(&v, &[dir(0.0, 0.0)], cfg, 2.0, 8).is_err());
    }

    proptest! {
        /// The geometry route and the filter route agree pointwise.
        #[test]
        fn geometry_and_filter_routes_agree(
            seed in 0u64..1000,
            az in 0.0..TAU,
            el in 0.0..=FRAC_PI_2,
            inc_az in 0.0..TAU,
            inc_el in 0.0..=FRAC_PI_2,
        ) {
            let cfg = RisConfig::new(4, 6, 0.5).unwrap();
            let v = random_coeffs(4, 6, seed);
            let incidents = [dir(inc_az, inc_el)];
            let d = dir(az, el);
            let geometric = beam_pattern(&v, &incidents, cfg, &[d]).unwrap().response()[0];

            let sums = incident_sums(&incidents, cfg).unwrap();
            let h_eff =
                ComplexMatrix::from_fn(4, 6, |nx, ny| sums[(nx, ny)] * v.matrix()[(nx, ny)]);
            let p = angle_to_omega(d, cfg);
            let filtered = filter_response_at(&h_eff, p.omega1, p.omega2);
            prop_assert!(
                (geometric - filtered).norm() < 1e-10,
                "{geometric} vs {filtered}"
            );
        }
    }
}
