//! 2-D discrete Fourier transforms with an explicitly pinned convention.
//!
//! The inverse transform is defined as
//!
//! ```text
//! x(p,q) = 1/(M N) · Σ_m Σ_n X(m,n) · e^{+j 2π m p / M} · e^{+j 2π n q / N}
//! ```
//!
//! with the `1/(MN)` factor part of the definition; the forward transform is
//! the unnormalized conjugate-sign sum. Every downstream phase factor in the
//! synthesis pipeline depends on this exact convention.
//!
//! Sizes that are powers of two run on an iterative radix-2 kernel; all other
//! sizes go through Bluestein's chirp-z reduction to a power-of-two
//! convolution, keeping every size at `O(n log n)`.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};
use num_complex::Complex64;

use crate::matrix::ComplexMatrix;

/// A prepared 1-D transform of fixed length and direction.
struct Dft {
    n: usize,
    inverse: bool,
    kind: Kind,
}

enum Kind {
    Radix2 {
        twiddles: Vec<Complex64>,
    },
    Bluestein {
        chirp: Vec<Complex64>,
        b_spectrum: Vec<Complex64>,
        inner_len: usize,
        fwd: Box<Dft>,
        inv: Box<Dft>,
    },
}

impl Dft {
    fn new(n: usize, inverse: bool) -> Self {
        let kind = if n.is_power_of_two() {
            Kind::Radix2 {
                twiddles: twiddles(n, inverse),
            }
        } else {
            let l = (2 * n - 1).next_power_of_two();
            let sign = if inverse { 1.0 } else { -1.0 };
            let chirp: Vec<Complex64> = (0..n)
                .map(|t| {
                    // t^2 mod 2n keeps the chirp angle small before the
                    // division by n; e^{jπ t²/n} has period 2n in t².
                    let sq = (t * t) % (2 * n);
                    Complex64::from_polar(1.0, sign * PI * sq as f64 / n as f64)
                })
                .collect();
            let fwd = Box::new(Dft::new(l, false));
            let inv = Box::new(Dft::new(l, true));
            // Conjugate chirp laid out for circular convolution: lag t at
            // index t, lag -t wrapped to index l - t.
            let mut b = vec![Complex64::new(0.0, 0.0); l];
            b[0] = chirp[0].conj();
            for t in 1..n {
                let v = chirp[t].conj();
                b[t] = v;
                b[l - t] = v;
            }
            fwd.process_unscaled(&mut b);
            Kind::Bluestein {
                chirp,
                b_spectrum: b,
                inner_len: l,
                fwd,
                inv,
            }
        };
        Self { n, inverse, kind }
    }

    /// Transforms `data` in place, including the `1/n` factor when inverse.
    fn process(&self, data: &mut [Complex64]) {
        self.process_unscaled(data);
        if self.inverse {
            let scale = 1.0 / self.n as f64;
            for v in data.iter_mut() {
                *v *= scale;
            }
        }
    }

    fn process_unscaled(&self, data: &mut [Complex64]) {
        assert_eq!(data.len(), self.n, "length mismatch");
        match &self.kind {
            Kind::Radix2 { twiddles } => radix2_in_place(data, twiddles),
            Kind::Bluestein {
                chirp,
                b_spectrum,
                inner_len,
                fwd,
                inv,
            } => {
                let mut a = vec![Complex64::new(0.0, 0.0); *inner_len];
                for (i, x) in data.iter().enumerate() {
                    a[i] = x * chirp[i];
                }
                fwd.process_unscaled(&mut a);
                for (v, b) in a.iter_mut().zip(b_spectrum.iter()) {
                    *v *= b;
                }
                inv.process(&mut a);
                for (k, x) in data.iter_mut().enumerate() {
                    *x = chirp[k] * a[k];
                }
            }
        }
    }
}

/// Twiddle table `e^{±j 2π t / n}` for `t = 0..n/2`.
fn twiddles(n: usize, inverse: bool) -> Vec<Complex64> {
    let sign = if inverse { 1.0 } else { -1.0 };
    (0..n / 2)
        .map(|t| Complex64::from_polar(1.0, sign * TAU * t as f64 / n as f64))
        .collect()
}

fn bit_reverse(data: &mut [Complex64]) {
    let n = data.len();
    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            data.swap(i, j);
        }
    }
}

fn radix2_in_place(data: &mut [Complex64], twiddles: &[Complex64]) {
    let n = data.len();
    bit_reverse(data);
    let mut len = 2;
    while len <= n {
        let half = len / 2;
        let stride = n / len;
        for start in (0..n).step_by(len) {
            for k in 0..half {
                let w = twiddles[k * stride];
                let a = data[start + k];
                let b = data[start + k + half] * w;
                data[start + k] = a + b;
                data[start + k + half] = a - b;
            }
        }
        len <<= 1;
    }
}

fn transform2(x: &ComplexMatrix, inverse: bool) -> ComplexMatrix {
    let (rows, cols) = x.shape();
    let mut out = x.clone();
    let row_dft = Dft::new(cols, inverse);
    for r in 0..rows {
        row_dft.process(out.row_mut(r));
    }
    let col_dft = Dft::new(rows, inverse);
    let mut scratch = vec![Complex64::new(0.0, 0.0); rows];
    for c in 0..cols {
        for r in 0..rows {
            scratch[r] = out[(r, c)];
        }
        col_dft.process(&mut scratch);
        for r in 0..rows {
            out[(r, c)] = scratch[r];
        }
    }
    out
}

/// 2-D inverse transform with the `1/(MN)` scaling and `e^{+j}` kernel.
pub fn ifft2(x: &ComplexMatrix) -> ComplexMatrix {
    transform2(x, true)
}

/// 2-D forward transform: unnormalized, `e^{-j}` kernel. Inverse of
/// [`ifft2`] up to rounding.
pub fn fft2(x: &ComplexMatrix) -> ComplexMatrix {
    transform2(x, false)
}
