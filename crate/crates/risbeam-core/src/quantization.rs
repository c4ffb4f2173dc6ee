//! Finite-resolution quantization of reflection coefficients, modeling the
//! amplitude/phase resolution of real reflection units.

#[allow(unused_imports)]
use num_traits::Float;

use core::f64::consts::TAU;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::synthesis::ReflectionCoefficients;

/// Amplitude and phase bit widths, each in 1..=16.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuantizationConfig {
    b1: u32,
    b2: u32,
}

impl QuantizationConfig {
    pub fn new(b1: u32, b2: u32) -> Result<Self> {
        if !(1..=16).contains(&b1) {
            return Err(Error::InvalidBits {
                name: "b1",
                value: b1,
            });
        }
        if !(1..=16).contains(&b2) {
            return Err(Error::InvalidBits {
                name: "b2",
                value: b2,
            });
        }
        Ok(Self { b1, b2 })
    }

    /// Amplitude bits.
    pub fn b1(&self) -> u32 {
        self.b1
    }

    /// Phase bits.
    pub fn b2(&self) -> u32 {
        self.b2
    }

    pub fn amplitude_levels(&self) -> u32 {
        1 << self.b1
    }

    pub fn phase_levels(&self) -> u32 {
        1 << self.b2
    }
}

/// Nearest-level rounding with ties toward the lower level.
fn round_ties_down(t: f64) -> f64 {
    let f = t.floor();
    if t - f > 0.5 {
        f + 1.0
    } else {
        f
    }
}

/// Quantizes amplitude to `2^b1` uniform levels spanning `[0, max |v|]`
/// (both endpoints are levels) and phase to the `2^b2` points `2πi/2^b2`.
///
/// An all-zero input is returned unchanged (there is no amplitude range to
/// span). Inputs already on the quantization lattice pass through unchanged,
/// which makes repeated quantization exact.
pub fn quantize(v: &ReflectionCoefficients, q: QuantizationConfig) -> ReflectionCoefficients {
    let m = v.matrix();
    let max_amp = m.as_slice().iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max_amp == 0.0 {
        return v.clone();
    }
    let amp_steps = (q.amplitude_levels() - 1) as f64;
    let phase_levels = q.phase_levels();
    let phase_step = TAU / phase_levels as f64;

    let out = ComplexMatrix::from_fn(m.rows(), m.cols(), |r, c| {
        let z = m[(r, c)];
        let level = round_ties_down(z.norm() / max_amp * amp_steps);
        let amp = level / amp_steps * max_amp;
        let mut phase = z.arg();
        if phase < 0.0 {
            phase += TAU;
        }
        let idx = (round_ties_down(phase / phase_step) as u32) % phase_levels;
        Complex64::from_polar(amp, idx as f64 * phase_step)
    });

    // Fixed-point short circuit: reconstruction of already-quantized values
    // lands within rounding of the input, far inside half a level step.
    let tol = 1e-12 * max_amp;
    let unchanged = out
        .as_slice()
        .iter()
        .zip(m.as_slice())
        .all(|(a, b)| (a - b).norm() <= tol);
    if unchanged {
        return v.clone();
    }
    ReflectionCoefficients::from_matrix(out)
}
