//! Closed-form synthesis of the reflection coefficients.
//!
//! The least-squares optimal filter coefficients for a sampled desired
//! magnitude have the closed form
//!
//! ```text
//! h(m,n) = 1/(M₁M₂) Σ_k Σ_l Ĥ(ω₁ₖ, ω₂ₗ) e^{j[(m-(Nₓ-1)/2)ω₁ₖ + (n-(N_y-1)/2)ω₂ₗ]}
//! ```
//!
//! for the lower half `m = 0..Nₓ/2-1`, `n = 0..N_y-1`; the upper half follows
//! from the Hermitian symmetry `h(m,n) = h*(Nₓ-1-m, N_y-1-n)`, which makes
//! the zero-phase response purely real. [`design_direct`] evaluates the sum
//! literally in `O(NₓN_yM₁M₂)` and serves as the oracle for
//! [`design_fast`], which factors the same sum into a linear-phase
//! modulation, one 2-D IFFT, and a `(-1)^{m+n}` derotation.
//!
//! Dividing the filter coefficients by the per-unit incident phase sum then
//! yields the reflection coefficients.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::angle::{build_grid, FrequencyGridSpec};
use crate::error::{Error, Result};
use crate::evaluation;
use crate::fft;
use crate::geometry::{incident_phase_sum, Direction, RisConfig};
use crate::matrix::ComplexMatrix;
use crate::pattern::{self, DesiredPattern, FrequencyGrid};
use crate::quantization::{self, QuantizationConfig};

/// Filter coefficients `h` with Hermitian point symmetry.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterCoefficients {
    matrix: ComplexMatrix,
}

impl FilterCoefficients {
    /// Wraps a matrix after verifying the Hermitian symmetry within 1e-12.
    pub fn from_matrix(matrix: ComplexMatrix) -> Result<Self> {
        if !is_hermitian(&matrix, 1e-12) {
            return Err(Error::ShapeMismatch {
                expected: matrix.shape(),
                actual: matrix.shape(),
            });
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn n_x(&self) -> usize {
        self.matrix.rows()
    }

    pub fn n_y(&self) -> usize {
        self.matrix.cols()
    }
}

/// Reflection coefficients `v`, one complex value per unit.
#[derive(Debug, Clone, PartialEq)]
pub struct ReflectionCoefficients {
    matrix: ComplexMatrix,
}

impl ReflectionCoefficients {
    pub fn from_matrix(matrix: ComplexMatrix) -> Self {
        Self { matrix }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn n_x(&self) -> usize {
        self.matrix.rows()
    }

    pub fn n_y(&self) -> usize {
        self.matrix.cols()
    }
}

/// True when `m(r,c) = conj(m(rows-1-r, cols-1-c))` everywhere within `tol`.
pub fn is_hermitian(m: &ComplexMatrix, tol: f64) -> bool {
    let (rows, cols) = m.shape();
    for r in 0..rows {
        for c in 0..cols {
            let mirror = m[(rows - 1 - r, cols - 1 - c)].conj();
            if (m[(r, c)] - mirror).norm() > tol {
                return false;
            }
        }
    }
    true
}

fn check_design_inputs(grid: &FrequencyGrid, cfg: RisConfig) -> Result<()> {
    cfg.require_even()?;
    grid.spec().require_covers(cfg)
}

/// Literal evaluation of the closed-form coefficient sum, lower half plus
/// Hermitian completion. Complexity `O(NₓN_yM₁M₂)`; this path is the
/// reference the IFFT pipeline is checked against.
pub fn design_direct(grid: &FrequencyGrid, cfg: RisConfig) -> Result<FilterCoefficients> {
    check_design_inputs(grid, cfg)?;
    let (n_x, n_y) = (cfg.n_x(), cfg.n_y());
    let spec = grid.spec();
    let (m_1, m_2) = (spec.m_1(), spec.m_2());
    let (axis1, axis2) = build_grid(spec);
    let a1 = (n_x as f64 - 1.0) / 2.0;
    let a2 = (n_y as f64 - 1.0) / 2.0;

    // Per-axis exponential tables; the summand factors exactly as
    // e1[m][k] * e2[n][l].
    let e1: Vec<Complex64> = (0..n_x / 2)
        .flat_map(|m| {
            axis1
                .iter()
                .map(move |w| (m as f64 - a1) * w)
                .collect::<Vec<_>>()
        })
        .map(|ang| Complex64::from_polar(1.0, ang))
        .collect();
    let e2: Vec<Complex64> = (0..n_y)
        .flat_map(|n| {
            axis2
                .iter()
                .map(move |w| (n as f64 - a2) * w)
                .collect::<Vec<_>>()
        })
        .map(|ang| Complex64::from_polar(1.0, ang))
        .collect();

    let scale = 1.0 / (m_1 * m_2) as f64;
    let mut half = ComplexMatrix::zeros(n_x / 2, n_y);
    for m in 0..n_x / 2 {
        let e1_row = &e1[m * m_1..(m + 1) * m_1];
        for n in 0..n_y {
            let e2_row = &e2[n * m_2..(n + 1) * m_2];
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, e1_val) in e1_row.iter().enumerate() {
                let desired_row = grid.values().row(k);
                let mut inner = Complex64::new(0.0, 0.0);
                for (desired, e2_val) in desired_row.iter().zip(e2_row) {
                    inner += desired * e2_val;
                }
                acc += e1_val * inner;
            }
            half[(m, n)] = acc * scale;
        }
    }
    Ok(hermitian_complete(&half))
}

/// Multiplies the sampled magnitude by the linear-phase factor
/// `e^{-j[(Nₓ-1)/2 ω₁ₖ + (N_y-1)/2 ω₂ₗ]}`, preparing it for the IFFT.
pub fn modulate_linear_phase(grid: &FrequencyGrid, cfg: RisConfig) -> ComplexMatrix {
    let spec = grid.spec();
    let (axis1, axis2) = build_grid(spec);
    let a1 = (cfg.n_x() as f64 - 1.0) / 2.0;
    let a2 = (cfg.n_y() as f64 - 1.0) / 2.0;
    ComplexMatrix::from_fn(spec.m_1(), spec.m_2(), |k, l| {
        Complex64::from_polar(grid.values()[(k, l)], -(a1 * axis1[k] + a2 * axis2[l]))
    })
}

/// Applies the exact derotation `h(m,n) = (-1)^{m+n} h̃(m,n)` and keeps the
/// lower coefficient half `m = 0..Nₓ/2-1`, `n = 0..N_y-1`.
pub fn derotate_and_truncate(h_tilde: &ComplexMatrix, cfg: RisConfig) -> Result<ComplexMatrix> {
    cfg.require_even()?;
    let (rows, cols) = h_tilde.shape();
    if rows < cfg.n_x() || cols < cfg.n_y() {
        return Err(Error::GridTooSmall {
            m_1: rows,
            m_2: cols,
            n_x: cfg.n_x(),
            n_y: cfg.n_y(),
        });
    }
    Ok(ComplexMatrix::from_fn(cfg.n_x() / 2, cfg.n_y(), |m, n| {
        if (m + n) % 2 == 0 {
            h_tilde[(m, n)]
        } else {
            -h_tilde[(m, n)]
        }
    }))
}

/// Fills the upper coefficient half by conjugate point reflection of the
/// lower half, producing an exactly Hermitian matrix.
pub fn hermitian_complete(half: &ComplexMatrix) -> FilterCoefficients {
    let (half_rows, n_y) = half.shape();
    let n_x = 2 * half_rows;
    let matrix = ComplexMatrix::from_fn(n_x, n_y, |m, n| {
        if m < half_rows {
            half[(m, n)]
        } else {
            half[(n_x - 1 - m, n_y - 1 - n)].conj()
        }
    });
    FilterCoefficients { matrix }
}

/// IFFT fast path: linear-phase modulation, 2-D inverse transform,
/// derotation, truncation, Hermitian completion. Matches [`design_direct`]
/// up to rounding at `O(M₁M₂(log M₁ + log M₂))` cost.
pub fn design_fast(grid: &FrequencyGrid, cfg: RisConfig) -> Result<FilterCoefficients> {
    check_design_inputs(grid, cfg)?;
    let modulated = modulate_linear_phase(grid, cfg);
    let h_tilde = fft::ifft2(&modulated);
    let half = derotate_and_truncate(&h_tilde, cfg)?;
    Ok(hermitian_complete(&half))
}

/// How to treat near-zero incident phase sums in [`extract_reflection`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SingularityPolicy {
    /// Error out listing every unit whose summed phase factor has modulus
    /// below `epsilon`.
    Fail { epsilon: f64 },
    /// Regularized division `v = h·conj(s) / (|s|² + ε²)` at every unit.
    Tikhonov { epsilon: f64 },
}

impl Default for SingularityPolicy {
    fn default() -> Self {
        SingularityPolicy::Fail { epsilon: 1e-6 }
    }
}

/// Divides the filter coefficients by the per-unit incident phase sum,
/// yielding the reflection coefficients. For a single incidence the divisor
/// has unit modulus, so `|v| = |h|`.
pub fn extract_reflection(
    h: &ComplexMatrix,
    incidents: &[Direction],
    cfg: RisConfig,
    policy: SingularityPolicy,
) -> Result<ReflectionCoefficients> {
    if incidents.is_empty() {
        return Err(Error::EmptyIncidents);
    }
    if h.shape() != (cfg.n_x(), cfg.n_y()) {
        return Err(Error::ShapeMismatch {
            expected: (cfg.n_x(), cfg.n_y()),
            actual: h.shape(),
        });
    }
    let mut sums = ComplexMatrix::zeros(cfg.n_x(), cfg.n_y());
    let mut singular = Vec::new();
    let epsilon = match policy {
        SingularityPolicy::Fail { epsilon } | SingularityPolicy::Tikhonov { epsilon } => epsilon,
    };
    for nx in 0..cfg.n_x() {
        for ny in 0..cfg.n_y() {
            let s = incident_phase_sum(incidents, nx, ny, cfg)?;
            if s.norm() < epsilon {
                singular.push((nx, ny));
            }
            sums[(nx, ny)] = s;
        }
    }
    let matrix = match policy {
        SingularityPolicy::Fail { .. } => {
            if !singular.is_empty() {
                return Err(Error::SingularIncidentSum { units: singular });
            }
            ComplexMatrix::from_fn(cfg.n_x(), cfg.n_y(), |nx, ny| h[(nx, ny)] / sums[(nx, ny)])
        }
        SingularityPolicy::Tikhonov { epsilon } => {
            ComplexMatrix::from_fn(cfg.n_x(), cfg.n_y(), |nx, ny| {
                let s = sums[(nx, ny)];
                h[(nx, ny)] * s.conj() / (s.norm_sqr() + epsilon * epsilon)
            })
        }
    };
    Ok(ReflectionCoefficients { matrix })
}

/// Which coefficient computation the design pipeline runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DesignPath {
    #[default]
    Fast,
    Direct,
}

impl DesignPath {
    pub fn as_str(&self) -> &'static str {
        match self {
            DesignPath::Fast => "fast",
            DesignPath::Direct => "direct",
        }
    }
}

/// Options of the end-to-end [`design`] pipeline.
#[derive(Debug, Clone, Copy, Default)]
pub struct DesignOptions {
    pub path: DesignPath,
    pub quantization: Option<QuantizationConfig>,
    pub singularity: SingularityPolicy,
}

/// Quality metrics and input echo of one design run. The wall time is not
/// measured here (the core is clock-free); callers that time the run fill
/// `design_wall_time` in seconds.
#[derive(Debug, Clone)]
pub struct DesignReport {
    pub tse: f64,
    pub normalized_tse: f64,
    pub design_wall_time: f64,
    pub path: DesignPath,
    pub config: RisConfig,
    pub grid_spec: FrequencyGridSpec,
    pub incidents: Vec<Direction>,
    pub quantization: Option<QuantizationConfig>,
}

pub(crate) fn build_report(
    v: &ReflectionCoefficients,
    grid: &FrequencyGrid,
    incidents: &[Direction],
    cfg: RisConfig,
    path: DesignPath,
    quant: Option<QuantizationConfig>,
) -> Result<DesignReport> {
    let response = evaluation::grid_response(v, incidents, cfg, grid.spec())?;
    let tse = evaluation::tse(&response, grid)?;
    let denom = grid.sum_sq();
    let normalized_tse = if denom > 0.0 { tse / denom } else { 0.0 };
    Ok(DesignReport {
        tse,
        normalized_tse,
        design_wall_time: 0.0,
        path,
        config: cfg,
        grid_spec: grid.spec(),
        incidents: incidents.to_vec(),
        quantization: quant,
    })
}

/// End-to-end design: samples the pattern onto the grid, computes the filter
/// coefficients on the selected path, extracts the reflection coefficients,
/// optionally quantizes them, and scores the result on the design grid.
pub fn design(
    pattern: &DesiredPattern,
    cfg: RisConfig,
    spec: FrequencyGridSpec,
    incidents: &[Direction],
    options: &DesignOptions,
) -> Result<(ReflectionCoefficients, DesignReport)> {
    cfg.require_even()?;
    spec.require_covers(cfg)?;
    if incidents.is_empty() {
        return Err(Error::EmptyIncidents);
    }
    let grid = pattern::sample_to_grid(pattern, spec, cfg)?;
    let h = match options.path {
        DesignPath::Fast => design_fast(&grid, cfg)?,
        DesignPath::Direct => design_direct(&grid, cfg)?,
    };
    let mut v = extract_reflection(h.matrix(), incidents, cfg, options.singularity)?;
    if let Some(q) = options.quantization {
        v = quantization::quantize(&v, q);
    }
    let report = build_report(&v, &grid, incidents, cfg, options.path, options.quantization)?;
    Ok((v, report))
}
