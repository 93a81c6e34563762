use std::f64::consts::TAU;

use rustfft::FftPlanner;

use super::{factorial, HoloError, C64};

/// Default number of quadrature nodes on the Cauchy circle.
pub const CAUCHY_NODES: usize = 1024;

/// Taylor coefficients of `f` at `center` from the trapezoidal rule on the
/// circle of the given radius.
///
/// Returns `a_0..=a_order` with `f(center + h) = Σ a_j h^j`.
pub fn cauchy_taylor<F>(f: F, center: C64, radius: f64, nodes: usize, order: usize) -> Result<Vec<C64>, HoloError>
where
    F: Fn(C64) -> Result<C64, HoloError>,
{
    if !(radius > 0.0) {
        return Err(HoloError::InvalidParameter(format!("Cauchy radius {radius} must be positive")));
    }
    if order >= nodes / 2 {
        return Err(HoloError::OutOfRange { order, degree: nodes / 2 - 1 });
    }
    let mut buf = (0..nodes)
        .map(|j| f(center + C64::from_polar(radius, TAU * j as f64 / nodes as f64)))
        .collect::<Result<Vec<_>, _>>()?;
    FftPlanner::new().plan_fft_forward(nodes).process(&mut buf);
    let scale = 1.0 / nodes as f64;
    let mut rpow = 1.0;
    Ok(buf
        .into_iter()
        .take(order + 1)
        .map(|c| {
            let a = c * scale / rpow;
            rpow *= radius;
            a
        })
        .collect())
}

/// `f^{(k)}(z0)` for `|z0| < 1` using a circle of radius `min(0.3, (1-|z0|)/2)`.
pub fn cauchy_derivative<F>(f: F, z0: C64, k: usize) -> Result<C64, HoloError>
where
    F: Fn(C64) -> Result<C64, HoloError>,
{
    if z0.norm() >= 1.0 {
        return Err(HoloError::InvalidParameter(format!("base point |z0| = {} must be < 1", z0.norm())));
    }
    let radius = (0.3f64).min((1.0 - z0.norm()) / 2.0);
    let coeffs = cauchy_taylor(f, z0, radius, CAUCHY_NODES, k)?;
    Ok(coeffs[k] * factorial(k))
}
