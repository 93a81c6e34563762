use std::f64::consts::{PI, TAU};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::CatalogError;
use crate::holo::{c64, zero_free_root, AnalyticDisc, BoundaryGrid, HoloFn, C64};
use crate::metrics::JetTarget;

/// Slack allowed in the logarithmic shape condition, which the optimal
/// parameters satisfy with equality.
const SHAPE_TOL: f64 = 1e-12;

/// Shape of `φ(ζ) = α (e^{βζ} - 1)/ζ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct YuDiscParams {
    pub alpha: f64,
    pub beta: f64,
}

impl YuDiscParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self, CatalogError> {
        let p = Self { alpha, beta };
        p.validate()?;
        Ok(p)
    }

    /// `α = β = 1`, giving the first component `ζ⁴e^ζ`.
    pub fn simple() -> Self {
        Self { alpha: 1.0, beta: 1.0 }
    }

    /// `α = 2/(1 - e^{-2π})`, `β = 2π`.
    pub fn optimal() -> Self {
        Self { alpha: 2.0 / (1.0 - (-TAU).exp()), beta: TAU }
    }

    pub fn validate(&self) -> Result<(), CatalogError> {
        let (a, b) = (self.alpha, self.beta);
        if !(a > 0.0 && b > 0.0) {
            return Err(CatalogError::InvalidParameter(format!("α = {a} and β = {b} must be positive")));
        }
        if b > TAU {
            return Err(CatalogError::InvalidParameter(format!("β = {b} exceeds 2π")));
        }
        if a > 2.0 && ((a - 2.0) / a).ln() > -b + SHAPE_TOL {
            return Err(CatalogError::InvalidParameter(format!(
                "log((α-2)/α) = {} exceeds -β = {}",
                ((a - 2.0) / a).ln(),
                -b
            )));
        }
        Ok(())
    }

    /// `r = h₂(0) = (2αβ)^{1/3}`.
    pub fn r(&self) -> f64 {
        (2.0 * self.alpha * self.beta).cbrt()
    }
}

/// A disc into the Yu domain with its third-order jet coefficient.
#[derive(Debug, Clone)]
pub struct YuDisc {
    pub params: YuDiscParams,
    pub disc: AnalyticDisc,
    /// `f'''(0) = 3! r (0, 1, 0)`
    pub r: f64,
    /// Cube root `h₂` of the key function.
    pub h2: HoloFn,
    /// `φ(2 + ζφ)`
    pub key: HoloFn,
}

impl YuDisc {
    /// Target `((0,0,-1), (0,1,0), 3)` certified by this disc.
    pub fn target() -> JetTarget {
        let z = c64(0.0, 0.0);
        JetTarget::new(vec![z, z, c64(-1.0, 0.0)], vec![z, c64(1.0, 0.0), z], 3).expect("static target")
    }

    /// `sup |φ(2+ζφ) - h₂³| / max(1, |φ(2+ζφ)|)` over the given circles.
    ///
    /// The key function reaches about `10⁶` in modulus near the unit circle
    /// for the optimal shape, so the residual is measured relative to it.
    pub fn key_residual(&self, grid: usize, radii: &[f64]) -> Result<f64, CatalogError> {
        let mut worst: f64 = 0.0;
        for &r in radii {
            for z in BoundaryGrid::nodes(grid, r) {
                let k = self.key.eval(z)?;
                let h = self.h2.eval(z)?;
                worst = worst.max((k - h * h * h).norm() / k.norm().max(1.0));
            }
        }
        Ok(worst)
    }
}

fn phi(p: &YuDiscParams) -> HoloFn {
    HoloFn::ExpQuotient { scale: c64(p.alpha, 0.0), rate: c64(p.beta, 0.0) }
}

/// `(ζ⁴(1 + ζφ), ζ³h₂, -1)` with `h₂³ = φ(2 + ζφ)`.
pub fn yu_parametric_disc(p: YuDiscParams) -> Result<YuDisc, CatalogError> {
    p.validate()?;
    let phi = phi(&p);
    let key = phi.clone().times(HoloFn::Sum(vec![HoloFn::constant(c64(2.0, 0.0)), phi.times_monomial(1)]));
    let r = p.r();
    let h2 = zero_free_root(key.clone(), 3, c64(r, 0.0))?;
    // 1 + ζφ = 1 - α + α e^{βζ}
    let f1 = HoloFn::Sum(vec![
        HoloFn::constant(c64(1.0 - p.alpha, 0.0)),
        HoloFn::Exp { rate: c64(p.beta, 0.0) }.scaled(c64(p.alpha, 0.0)),
    ])
    .times_monomial(4);
    let f2 = h2.clone().times_monomial(3);
    let disc = AnalyticDisc::new(format!("yu-param:{},{}", p.alpha, p.beta), vec![
        f1,
        f2,
        HoloFn::constant(c64(-1.0, 0.0)),
    ]);
    Ok(YuDisc { params: p, disc, r, h2, key })
}

/// `(ζ⁴e^ζ, ζ³h₂, -1)`, `h₂(0) = 2^{1/3}`.
pub fn yu_simple_disc() -> YuDisc {
    let mut d = yu_parametric_disc(YuDiscParams::simple()).expect("α = β = 1 is admissible");
    d.disc = d.disc.with_label("yu-simple");
    d
}

/// `(8π/(1 - e^{-2π}))^{-1/3}`, the bound from the optimal shape.
pub fn yu_optimal_bound() -> f64 {
    (8.0 * PI / (1.0 - (-TAU).exp())).powf(-1.0 / 3.0)
}

/// `g = (ζ³f₁, ζ²f₂, f₃)`: raises the odd jet order by two at the same `r`.
pub fn odd_order_lift(f: &AnalyticDisc) -> Result<AnalyticDisc, CatalogError> {
    if f.components().len() != 3 {
        return Err(CatalogError::InvalidParameter(format!(
            "odd-order lift needs a disc in C³, got dimension {}",
            f.components().len()
        )));
    }
    let c = f.components();
    Ok(AnalyticDisc::new(format!("lift({})", f.label()), vec![
        c[0].clone().times_monomial(3),
        c[1].clone().times_monomial(2),
        c[2].clone(),
    ]))
}

/// Point `z_t = (0,0,-t)` and direction `X = (a,b,0)` with `|a|²+|b|² = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExactKobayashiParams {
    pub t: f64,
    pub a: C64,
    pub b: C64,
}

impl ExactKobayashiParams {
    pub fn new(t: f64, a: C64, b: C64) -> Result<Self, CatalogError> {
        if !(t > 0.0 && t < 1.0) {
            return Err(CatalogError::InvalidParameter(format!("t = {t} must lie in (0, 1)")));
        }
        if a.norm() == 0.0 {
            return Err(CatalogError::InvalidParameter("a must be nonzero".into()));
        }
        if (a.norm_sqr() + b.norm_sqr() - 1.0).abs() > 1e-12 {
            return Err(CatalogError::InvalidParameter(format!("|a|²+|b|² = {} must equal 1", a.norm_sqr() + b.norm_sqr())));
        }
        Ok(Self { t, a, b })
    }

    /// `(2/√t)·min{2π, log(1 + 2t^{1/4})}`
    pub fn ratio_bound(t: f64) -> f64 {
        2.0 / t.sqrt() * TAU.min((1.0 + 2.0 * t.powf(0.25)).ln())
    }

    /// `|b|³/|a|³`
    pub fn ratio(&self) -> f64 {
        (self.b.norm() / self.a.norm()).powi(3)
    }

    pub fn is_feasible(&self) -> bool {
        self.ratio() <= Self::ratio_bound(self.t)
    }

    /// `|a| t^{-1/4}`
    pub fn value(&self) -> f64 {
        self.a.norm() * self.t.powf(-0.25)
    }

    pub fn target(&self) -> JetTarget {
        let z = c64(0.0, 0.0);
        JetTarget::new(vec![z, z, c64(-self.t, 0.0)], vec![self.a, self.b, z], 1).expect("a ≠ 0")
    }

    /// Seeded triple, feasible or strictly infeasible on request.
    pub fn sample(seed: u64, feasible: bool) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = rng.random_range(0.02..0.98);
        let bound = Self::ratio_bound(t).cbrt();
        let ratio = if feasible { bound * rng.random_range(0.0..0.999) } else { bound * rng.random_range(1.02..3.0) };
        let abs_a = 1.0 / (1.0 + ratio * ratio).sqrt();
        let a = C64::from_polar(abs_a, rng.random_range(0.0..TAU));
        let b = C64::from_polar(ratio * abs_a, rng.random_range(0.0..TAU));
        Self { t, a, b }
    }
}

#[derive(Debug, Clone)]
pub struct ExactKobayashiDisc {
    pub params: ExactKobayashiParams,
    pub disc: AnalyticDisc,
    /// `|a| t^{-1/4}`
    pub value: f64,
}

/// `(ζ(c + ζφ), ζh₂, -t)` with `c = (a/|a|)t^{1/4}`, `φ = (e^{λζ}-1)/ζ`,
/// `λ = b³√t/(2a|a|²)` and `h₂³ = φ(2c + ζφ)`; `ρ∘f = -t + t|ζ|⁴`.
pub fn exact_kobayashi_disc(p: ExactKobayashiParams) -> Result<ExactKobayashiDisc, CatalogError> {
    let p = ExactKobayashiParams::new(p.t, p.a, p.b)?;
    if !p.is_feasible() {
        return Err(CatalogError::Infeasible(format!(
            "|b|³/|a|³ = {} exceeds {} at t = {}",
            p.ratio(),
            ExactKobayashiParams::ratio_bound(p.t),
            p.t
        )));
    }
    let (t, a, b) = (p.t, p.a, p.b);
    let abs_a = a.norm();
    let t4 = t.powf(0.25);
    let c = a / abs_a * t4;
    let one = c64(1.0, 0.0);
    let (f1, f2) = if b.norm() == 0.0 {
        (HoloFn::monomial(1, c), HoloFn::constant(c64(0.0, 0.0)))
    } else {
        let lambda = b * b * b * t.sqrt() / (2.0 * a * abs_a * abs_a);
        let phi = HoloFn::ExpQuotient { scale: one, rate: lambda };
        let key = phi.clone().times(HoloFn::Sum(vec![HoloFn::constant(2.0 * c), phi.clone().times_monomial(1)]));
        let h2 = zero_free_root(key, 3, b * t4 / abs_a)?;
        (HoloFn::Sum(vec![HoloFn::constant(c), phi.times_monomial(1)]).times_monomial(1), h2.times_monomial(1))
    };
    let disc = AnalyticDisc::new(format!("exact-kob:{},{},{}", t, fmt_c(a), fmt_c(b)), vec![
        f1,
        f2,
        HoloFn::constant(c64(-t, 0.0)),
    ]);
    Ok(ExactKobayashiDisc { params: p, disc, value: p.value() })
}

pub(crate) fn fmt_c(z: C64) -> String {
    if z.im >= 0.0 || z.im.is_nan() {
        format!("{}+{}i", z.re, z.im)
    } else {
        format!("{}{}i", z.re, z.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::holo::Disc;

    #[test]
    fn parameter_checks() {
        assert!(YuDiscParams::new(YuDiscParams::optimal().alpha, TAU).is_ok());
        assert!(YuDiscParams::new(YuDiscParams::optimal().alpha, TAU + 0.1).is_err());
        assert!(YuDiscParams::new(3.0, 2.0).is_err());
        assert!(YuDiscParams::new(1.5, 6.0).is_ok());
    }

    #[test]
    fn optimal_bound_value() {
        assert!((1.0 / YuDiscParams::optimal().r() - 0.3412).abs() < 5e-5);
        assert!((yu_optimal_bound() - 1.0 / YuDiscParams::optimal().r()).abs() < 1e-15);
    }

    #[test]
    fn simple_disc_examples() {
        let d = yu_simple_disc();
        let z = c64(0.5, 0.0);
        let w = d.disc.eval(z).unwrap();
        assert!((w[0] - 0.0625 * 0.5f64.exp()).norm() < 1e-15);
        assert!((d.h2.eval(c64(0.0, 0.0)).unwrap().re - 2f64.cbrt()).abs() < 1e-15);
        assert!(d.key_residual(512, &[0.9, 0.999, 1.0]).unwrap() < 1e-10);
    }

    #[test]
    fn exact_disc_degenerate_case() {
        let p = ExactKobayashiParams::new(1.0 / 16.0, c64(1.0, 0.0), c64(0.0, 0.0)).unwrap();
        let d = exact_kobayashi_disc(p).unwrap();
        assert!((d.value - 2.0).abs() < 1e-15);
        let w = d.disc.eval(c64(0.4, 0.0)).unwrap();
        assert!((w[0] - 0.2).norm() < 1e-15 && w[1].norm() == 0.0);
    }

    #[test]
    fn exact_disc_feasibility() {
        let s = 0.5f64.sqrt();
        let p = ExactKobayashiParams::new(1.0 / 16.0, c64(s, 0.0), c64(s, 0.0)).unwrap();
        assert!((ExactKobayashiParams::ratio_bound(1.0 / 16.0) - 8.0 * 2f64.ln()).abs() < 1e-14);
        assert!(p.is_feasible());
        assert!((exact_kobayashi_disc(p).unwrap().value - 2f64.sqrt()).abs() < 1e-14);
        let small = 0.05;
        let p = ExactKobayashiParams::new(0.9, c64(small, 0.0), c64((1.0 - small * small).sqrt(), 0.0)).unwrap();
        assert!(matches!(exact_kobayashi_disc(p), Err(CatalogError::Infeasible(_))));
    }

    #[test]
    fn samplers_respect_request() {
        for s in 0..50 {
            assert!(ExactKobayashiParams::sample(s, true).is_feasible());
            assert!(!ExactKobayashiParams::sample(s, false).is_feasible());
        }
    }
}
