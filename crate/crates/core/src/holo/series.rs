use std::fmt;

use super::{factorial, HoloError, C64};

/// Relative threshold below which a coefficient counts as zero when
/// measuring vanishing order: `|c_j| < 1e-10 * max(1, max_i |c_i|)`.
pub const VANISHING_TOLERANCE: f64 = 1e-10;

/// Vanishing order of `f - f(0)`; `Infinite` for constants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VanishingOrder {
    Finite(usize),
    Infinite,
}

impl VanishingOrder {
    /// `ν ≥ k`.
    pub fn at_least(self, k: usize) -> bool {
        match self {
            VanishingOrder::Finite(n) => n >= k,
            VanishingOrder::Infinite => true,
        }
    }
}

impl fmt::Display for VanishingOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VanishingOrder::Finite(n) => write!(f, "{n}"),
            VanishingOrder::Infinite => write!(f, "inf"),
        }
    }
}

/// Truncated power series `c_0 + c_1 ζ + ... + c_N ζ^N`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSeries {
    coeffs: Vec<C64>,
}

impl ComplexSeries {
    pub fn new(coeffs: Vec<C64>) -> Self {
        if coeffs.is_empty() {
            return Self::zero(0);
        }
        Self { coeffs }
    }

    /// Zero series of the given degree.
    pub fn zero(degree: usize) -> Self {
        Self { coeffs: vec![C64::new(0.0, 0.0); degree + 1] }
    }

    pub fn constant(c: C64) -> Self {
        Self { coeffs: vec![c] }
    }

    /// `c ζ^k`.
    pub fn monomial(k: usize, c: C64) -> Self {
        let mut s = Self::zero(k);
        s.coeffs[k] = c;
        s
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C64> {
        self.coeffs
    }

    /// Coefficient of `ζ^j`, zero beyond the stored degree.
    pub fn coeff(&self, j: usize) -> C64 {
        self.coeffs.get(j).copied().unwrap_or_default()
    }

    /// Copy padded with zeros or truncated to exactly `degree`.
    pub fn resized(&self, degree: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.resize(degree + 1, C64::new(0.0, 0.0));
        Self { coeffs: c }
    }

    /// Horner evaluation.
    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// `f^{(k)}(0) = k! c_k`.
    pub fn derivative_at_zero(&self, k: usize) -> Result<C64, HoloError> {
        if k > self.degree() {
            return Err(HoloError::OutOfRange { order: k, degree: self.degree() });
        }
        Ok(self.coeffs[k] * factorial(k))
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn l1_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }

    /// Vanishing order of `f - f(0)` under [`VANISHING_TOLERANCE`].
    pub fn vanishing_order(&self) -> VanishingOrder {
        let floor = VANISHING_TOLERANCE * self.max_abs().max(1.0);
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, c)| c.norm() >= floor)
            .map_or(VanishingOrder::Infinite, |(j, _)| VanishingOrder::Finite(j))
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|&c| c * s).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self { coeffs: (0..n).map(|j| self.coeff(j) + other.coeff(j)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    /// Full polynomial product.
    pub fn mul(&self, other: &Self) -> Self {
        self.mul_truncated(other, self.degree() + other.degree())
    }

    /// Cauchy product truncated at `order`.
    pub fn mul_truncated(&self, other: &Self, order: usize) -> Self {
        let mut out = vec![C64::new(0.0, 0.0); order + 1];
        for (i, &a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a == C64::new(0.0, 0.0) {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Self { coeffs: out }
    }

    /// `self / other` to `order`; requires `other(0) != 0`.
    pub fn div_truncated(&self, other: &Self, order: usize) -> Result<Self, HoloError> {
        let b0 = other.coeff(0);
        if b0.norm() == 0.0 {
            return Err(HoloError::Pole(C64::new(0.0, 0.0)));
        }
        let mut q = vec![C64::new(0.0, 0.0); order + 1];
        for n in 0..=order {
            let mut acc = self.coeff(n);
            for j in 1..=n.min(other.degree()) {
                acc -= other.coeffs[j] * q[n - j];
            }
            q[n] = acc / b0;
        }
        Ok(Self { coeffs: q })
    }

    /// `self^exponent` to `order` on the branch with value `anchor` at 0.
    ///
    /// Uses the recurrence `n f_0 g_n = Σ_{j=1}^n ((α+1) j - n) f_j g_{n-j}`.
    pub fn pow_truncated(&self, exponent: f64, anchor: C64, order: usize) -> Result<Self, HoloError> {
        let f0 = self.coeff(0);
        if f0.norm() == 0.0 {
            return Err(HoloError::Branch { at: C64::new(0.0, 0.0), modulus: 0.0 });
        }
        let mut g = vec![C64::new(0.0, 0.0); order + 1];
        g[0] = anchor;
        for n in 1..=order {
            let mut acc = C64::new(0.0, 0.0);
            for j in 1..=n.min(self.degree()) {
                acc += self.coeffs[j] * g[n - j] * ((exponent + 1.0) * j as f64 - n as f64);
            }
            g[n] = acc / (f0 * n as f64);
        }
        Ok(Self { coeffs: g })
    }

    /// `exp(self)` to `order`.
    pub fn exp_truncated(&self, order: usize) -> Self {
        let mut e = vec![C64::new(0.0, 0.0); order + 1];
        e[0] = self.coeff(0).exp();
        for n in 1..=order {
            let mut acc = C64::new(0.0, 0.0);
            for j in 1..=n.min(self.degree()) {
                acc += self.coeffs[j] * e[n - j] * j as f64;
            }
            e[n] = acc / n as f64;
        }
        Self { coeffs: e }
    }

    /// `f(ζ^k)`: coefficient reindexing.
    pub fn compose_power(&self, k: usize) -> Self {
        assert!(k >= 1, "compose_power needs k >= 1");
        let mut out = vec![C64::new(0.0, 0.0); self.degree() * k + 1];
        for (j, &c) in self.coeffs.iter().enumerate() {
            out[j * k] = c;
        }
        Self { coeffs: out }
    }

    /// `ζ^k f(ζ)`.
    pub fn shift(&self, k: usize) -> Self {
        let mut out = vec![C64::new(0.0, 0.0); k];
        out.extend_from_slice(&self.coeffs);
        Self { coeffs: out }
    }

    /// Expand `∏ (ζ - r)` as a polynomial.
    pub fn from_roots(roots: &[C64]) -> Self {
        roots.iter().fold(Self::constant(C64::new(1.0, 0.0)), |acc, &r| {
            acc.mul(&Self::new(vec![-r, C64::new(1.0, 0.0)]))
        })
    }
}
