//! Error type shared by all design and evaluation operations.

use alloc::vec::Vec;
use core::fmt;

/// Convenience alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;

/// Errors produced by configuration validation and the design pipeline.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An array dimension is zero.
    ZeroDimension { name: &'static str },
    /// An array dimension must be even for the closed-form design.
    OddDimension { name: &'static str, value: usize },
    /// Unit spacing is not a positive finite number.
    InvalidSpacing { value: f64 },
    /// An angle lies outside its admissible range.
    AngleOutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },
    /// A magnitude or width that must be non-negative is negative (or NaN).
    NegativeQuantity { name: &'static str, value: f64 },
    /// No incident wave direction was supplied.
    EmptyIncidents,
    /// The frequency grid is smaller than the coefficient matrix.
    GridTooSmall {
        m_1: usize,
        m_2: usize,
        n_x: usize,
        n_y: usize,
    },
    /// Unit spacing exceeds the admissible bound for the pattern's support.
    SpacingExceedsBound { spacing: f64, bound: f64 },
    /// Two matrices or grids that must agree in shape do not.
    ShapeMismatch {
        expected: (usize, usize),
        actual: (usize, usize),
    },
    /// The summed incident phase factor is near zero at the listed units,
    /// so the reflection coefficients there are not recoverable by division.
    SingularIncidentSum { units: Vec<(usize, usize)> },
    /// The desired grid is identically zero, so the normalized TSE is undefined.
    ZeroDesiredGrid,
    /// Quantization bit width outside 1..=16.
    InvalidBits { name: &'static str, value: u32 },
    /// A custom magnitude table is malformed (not a full rectilinear grid).
    InvalidTable { reason: &'static str },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroDimension { name } => write!(f, "{name} must be positive"),
            Error::OddDimension { name, value } => {
                write!(f, "{name} must be even, got {value}")
            }
            Error::InvalidSpacing { value } => {
                write!(f, "spacing_over_lambda must be positive and finite, got {value}")
            }
            Error::AngleOutOfRange {
                name,
                value,
                min,
                max,
            } => write!(f, "{name} must lie in [{min}, {max}), got {value}"),
            Error::NegativeQuantity { name, value } => {
                write!(f, "{name} must be non-negative, got {value}")
            }
            Error::EmptyIncidents => write!(f, "at least one incident direction is required"),
            Error::GridTooSmall { m_1, m_2, n_x, n_y } => write!(
                f,
                "frequency grid {m_1}x{m_2} is smaller than the array {n_x}x{n_y}; \
                 m_1 >= n_x and m_2 >= n_y required"
            ),
            Error::SpacingExceedsBound { spacing, bound } => write!(
                f,
                "spacing_over_lambda {spacing} exceeds the admissible bound {bound} \
                 for the pattern's support"
            ),
            Error::ShapeMismatch { expected, actual } => write!(
                f,
                "shape mismatch: expected {}x{}, got {}x{}",
                expected.0, expected.1, actual.0, actual.1
            ),
            Error::SingularIncidentSum { units } => {
                write!(f, "incident phase sum is singular at {} unit(s):", units.len())?;
                for (i, (nx, ny)) in units.iter().take(8).enumerate() {
                    write!(f, "{} ({nx},{ny})", if i == 0 { "" } else { "," })?;
                }
                if units.len() > 8 {
                    write!(f, ", ...")?;
                }
                Ok(())
            }
            Error::ZeroDesiredGrid => {
                write!(f, "desired grid is identically zero; normalized TSE is undefined")
            }
            Error::InvalidBits { name, value } => {
                write!(f, "{name} must lie in 1..=16, got {value}")
            }
            Error::InvalidTable { reason } => write!(f, "invalid magnitude table: {reason}"),
        }
    }
}

impl core::error::Error for Error {}
