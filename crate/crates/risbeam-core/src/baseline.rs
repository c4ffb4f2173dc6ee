//! Surrogate of the comparison method: the sampled desired magnitude is
//! inverse-transformed directly and hard-truncated to the array size, with
//! no linear-phase modulation and no Hermitian structure.
//!
//! The published method this stands in for designates the transform-domain
//! response directly without joint optimization; its exact procedure is not
//! reproducible from the description, so this surrogate is frozen as:
//! inverse transform of the desired samples (with the `(-1)^{p+q}` change of
//! variables that accounts for the grid's `-π` offset, so beams land at the
//! designated angles), circular re-centering so the `N_x × N_y` block
//! captures the largest energy, truncation, and division by the incident
//! phase sums. Reports label it `baseline_surrogate`.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec;
use num_complex::Complex64;

use crate::error::Result;
use crate::fft;
use crate::geometry::{Direction, RisConfig};
use crate::matrix::ComplexMatrix;
use crate::pattern::FrequencyGrid;
use crate::synthesis::{
    self, extract_reflection, DesignPath, DesignReport, ReflectionCoefficients,
    SingularityPolicy,
};

/// Start indices `(p0, q0)` of the circular `n_x × n_y` block of `x` with
/// the largest energy; ties resolve to the scan-order first (row-major).
fn best_block_start(x: &ComplexMatrix, n_x: usize, n_y: usize) -> (usize, usize) {
    let (m_1, m_2) = x.shape();
    let energy = |p: usize, q: usize| x[(p, q)].norm_sqr();

    // Circular column sums over n_x consecutive rows, for every start row.
    let mut row_sums = vec![0.0f64; m_1 * m_2];
    for q in 0..m_2 {
        let mut window: f64 = (0..n_x).map(|i| energy(i % m_1, q)).sum();
        for p0 in 0..m_1 {
            row_sums[p0 * m_2 + q] = window;
            window -= energy(p0 % m_1, q);
            window += energy((p0 + n_x) % m_1, q);
        }
    }

    let mut best = (0usize, 0usize);
    let mut best_energy = f64::NEG_INFINITY;
    for p0 in 0..m_1 {
        let row = &row_sums[p0 * m_2..(p0 + 1) * m_2];
        let mut window: f64 = (0..n_y).map(|j| row[j % m_2]).sum();
        for q0 in 0..m_2 {
            if window > best_energy {
                best_energy = window;
                best = (p0, q0);
            }
            window -= row[q0 % m_2];
            window += row[(q0 + n_y) % m_2];
        }
    }
    best
}

/// Designs reflection coefficients with the surrogate baseline and scores
/// them on the same grid and metric as the proposed method.
pub fn design_baseline(
    grid: &FrequencyGrid,
    cfg: RisConfig,
    incidents: &[Direction],
    policy: SingularityPolicy,
) -> Result<(ReflectionCoefficients, DesignReport)> {
    cfg.require_even()?;
    grid.spec().require_covers(cfg)?;

    let spectrum = ComplexMatrix::from_fn(grid.spec().m_1(), grid.spec().m_2(), |k, l| {
        Complex64::new(grid.values()[(k, l)], 0.0)
    });
    let x = fft::ifft2(&spectrum);

    let (n_x, n_y) = (cfg.n_x(), cfg.n_y());
    let (m_1, m_2) = x.shape();
    let (p0, q0) = best_block_start(&x, n_x, n_y);
    // (-1)^{p+q} with the pre-shift parity: the samples live on the grid
    // omega_k = 2*pi*k/M - pi, and the offset lands on the coefficients as
    // this checkerboard. It does not change magnitudes, so the energy search
    // above is unaffected.
    let h = ComplexMatrix::from_fn(n_x, n_y, |p, q| {
        let (sp, sq) = ((p0 + p) % m_1, (q0 + q) % m_2);
        if (sp + sq) % 2 == 0 {
            x[(sp, sq)]
        } else {
            -x[(sp, sq)]
        }
    });

    let v = extract_reflection(&h, incidents, cfg, policy)?;
    let report = synthesis::build_report(&v, grid, incidents, cfg, DesignPath::Fast, None)?;
    Ok((v, report))
}
