//! One-variable holomorphic function layer.
//!
//! Everything here works in double precision on the closed unit disc:
//! truncated power series ([`ComplexSeries`]), closed-form function trees
//! ([`HoloFn`]), vector-valued analytic discs ([`AnalyticDisc`]), sampled
//! boundary data ([`BoundaryGrid`]) and Cauchy-integral Taylor extraction.

mod cauchy;
mod disc;
mod fourier;
mod func;
mod maps;
mod series;

pub use cauchy::{cauchy_derivative, cauchy_taylor, CAUCHY_NODES};
pub use disc::{AnalyticDisc, Disc};
pub use fourier::{BoundaryGrid, FourierCoefficients};
pub use func::{zero_free_root, HoloFn};
pub use maps::{blaschke, blaschke_derivative, cayley, mobius_shift};
pub use series::{ComplexSeries, VanishingOrder, VANISHING_TOLERANCE};

use num_complex::Complex64;

/// Complex double.
pub type C64 = Complex64;

/// Shorthand constructor for a complex number.
#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HoloError {
    #[error("derivative order {order} exceeds series degree {degree}")]
    OutOfRange { order: usize, degree: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("pole at {0}")]
    Pole(C64),
    #[error("branch failure near {at}: base modulus {modulus:e} below threshold")]
    Branch { at: C64, modulus: f64 },
    #[error("anchor {anchor} raised to {q} does not match f(0) = {value}")]
    Anchor { anchor: C64, q: u32, value: C64 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
}

/// `n!` as a float.
pub fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, j| acc * j as f64)
}
