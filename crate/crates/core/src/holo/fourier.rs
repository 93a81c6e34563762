use std::f64::consts::TAU;

use rustfft::FftPlanner;

use super::{HoloError, C64};

/// Samples on the circle `|ζ| = radius` at `M` equispaced angles.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryGrid {
    radius: f64,
    samples: Vec<C64>,
}

fn check_size(size: usize) -> Result<(), HoloError> {
    if size < 2 || !size.is_power_of_two() {
        return Err(HoloError::InvalidParameter(format!("grid size {size} must be a power of two >= 2")));
    }
    Ok(())
}

impl BoundaryGrid {
    /// Lattice points `radius · e^{2πij/M}`.
    pub fn nodes(size: usize, radius: f64) -> Vec<C64> {
        (0..size).map(|j| C64::from_polar(radius, TAU * j as f64 / size as f64)).collect()
    }

    pub fn sample<F>(size: usize, radius: f64, f: F) -> Result<Self, HoloError>
    where
        F: Fn(C64) -> Result<C64, HoloError>,
    {
        check_size(size)?;
        let samples = Self::nodes(size, radius).into_iter().map(f).collect::<Result<_, _>>()?;
        Ok(Self { radius, samples })
    }

    pub fn from_samples(radius: f64, samples: Vec<C64>) -> Result<Self, HoloError> {
        check_size(samples.len())?;
        Ok(Self { radius, samples })
    }

    pub fn size(&self) -> usize {
        self.samples.len()
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn samples(&self) -> &[C64] {
        &self.samples
    }

    pub fn fourier_coefficients(&self) -> FourierCoefficients {
        let m = self.size();
        let mut buf = self.samples.clone();
        FftPlanner::new().plan_fft_forward(m).process(&mut buf);
        let scale = 1.0 / m as f64;
        buf.iter_mut().for_each(|c| *c *= scale);
        FourierCoefficients { raw: buf }
    }
}

/// Normalized DFT coefficients for frequencies `-M/2 ..= M/2 - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierCoefficients {
    raw: Vec<C64>,
}

impl FourierCoefficients {
    pub fn size(&self) -> usize {
        self.raw.len()
    }

    fn index(&self, n: i64) -> usize {
        let m = self.raw.len() as i64;
        assert!(n >= -m / 2 && n < m / 2, "frequency {n} outside [-{}, {})", m / 2, m / 2);
        n.rem_euclid(m) as usize
    }

    pub fn get(&self, n: i64) -> C64 {
        self.raw[self.index(n)]
    }

    pub fn set(&mut self, n: i64, value: C64) {
        let i = self.index(n);
        self.raw[i] = value;
    }

    /// `(frequency, coefficient)` pairs in increasing frequency.
    pub fn iter(&self) -> impl Iterator<Item = (i64, C64)> + '_ {
        let half = (self.raw.len() / 2) as i64;
        (-half..half).map(move |n| (n, self.get(n)))
    }

    /// ℓ² norm of the coefficients with frequency in `[-limit, -1]`.
    pub fn negative_norm(&self, limit: usize) -> f64 {
        let limit = limit.min(self.raw.len() / 2) as i64;
        (1..=limit).map(|n| self.get(-n).norm_sqr()).sum::<f64>().sqrt()
    }

    /// Samples reconstructed by the inverse transform.
    pub fn inverse(&self) -> Vec<C64> {
        let mut buf = self.raw.clone();
        FftPlanner::new().plan_fft_inverse(buf.len()).process(&mut buf);
        buf
    }

    /// Taylor coefficients `0..=order` of the holomorphic part, undoing the
    /// `radius^n` scaling of samples taken on `|ζ| = radius`.
    pub fn taylor(&self, radius: f64, order: usize) -> Vec<C64> {
        let order = order.min(self.raw.len() / 2 - 1);
        (0..=order).map(|n| self.raw[n] / radius.powi(n as i32)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::holo::c64;

    #[test]
    fn monomial_and_conjugate_spectra() {
        let g = BoundaryGrid::sample(16, 1.0, |z| Ok(z * z)).unwrap();
        let f = g.fourier_coefficients();
        for (n, c) in f.iter() {
            let e = if n == 2 { 1.0 } else { 0.0 };
            assert!((c - e).norm() < 1e-15);
        }
        let f = BoundaryGrid::sample(16, 1.0, |z| Ok(z.conj())).unwrap().fourier_coefficients();
        assert!((f.get(-1) - 1.0).norm() < 1e-15);
        assert!(f.get(1).norm() < 1e-15);
        let f = BoundaryGrid::sample(8, 1.0, |_| Ok(c64(3.0, 0.0))).unwrap().fourier_coefficients();
        assert!((f.get(0) - 3.0).norm() < 1e-15);
    }

    #[test]
    fn inversion_and_rescaling() {
        let g = BoundaryGrid::sample(64, 0.5, |z| Ok(1.0 + 2.0 * z + c64(0.0, 3.0) * z * z * z)).unwrap();
        let f = g.fourier_coefficients();
        let back = f.inverse();
        for (a, b) in back.iter().zip(g.samples()) {
            assert!((a - b).norm() < 1e-14);
        }
        let t = f.taylor(0.5, 4);
        assert!((t[1] - 2.0).norm() < 1e-13 && (t[3] - c64(0.0, 3.0)).norm() < 1e-13 && t[4].norm() < 1e-13);
        assert!(f.negative_norm(32) < 1e-14);
    }

    #[test]
    fn rejects_non_power_of_two() {
        assert!(BoundaryGrid::sample(12, 1.0, |z| Ok(z)).is_err());
    }
}
