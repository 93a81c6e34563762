use std::f64::consts::{PI, TAU};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::CatalogError;
use crate::holo::{blaschke, c64, AnalyticDisc, ComplexSeries, HoloError, HoloFn, C64};

/// Tolerance on the two scalar constraints of the first family.
pub const KIND1_TOL: f64 = 1e-10;
/// Coefficient-wise tolerance on the polynomial identity of the second family.
pub const KIND2_TOL: f64 = 1e-10;

/// Extremal maps `E(1,m)` of the first family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllipsoidKind1Params {
    pub a1: C64,
    pub a2: C64,
    pub alpha0: C64,
    pub alpha1: C64,
    pub alpha2: C64,
    pub r1: bool,
    pub r2: bool,
    pub m: f64,
}

fn check_m(m: f64) -> Result<(), CatalogError> {
    if !(m > 0.0 && m < 1.0) {
        return Err(CatalogError::InvalidParameter(format!("m = {m} must lie in (0, 1)")));
    }
    Ok(())
}

fn check_alpha(name: &str, alpha: C64, blaschke: bool) -> Result<(), CatalogError> {
    let n = alpha.norm();
    if n > 1.0 || (blaschke && n >= 1.0) {
        return Err(CatalogError::InvalidParameter(format!("|{name}| = {n} outside the admissible disc")));
    }
    Ok(())
}

/// `(1 + |α|²)`, `(ζ-α)(1-ᾱζ) = -α + (1+|α|²)ζ - ᾱζ²`
fn quadratic(alpha: C64) -> ComplexSeries {
    ComplexSeries::new(vec![-alpha, c64(1.0 + alpha.norm_sqr(), 0.0), -alpha.conj()])
}

impl EllipsoidKind1Params {
    /// `|a₁|²`, `|a₂|^{2m}`
    pub fn weights(&self) -> (f64, f64) {
        (self.a1.norm_sqr(), self.a2.norm_sqr().powf(self.m))
    }

    /// Residuals of `α₀ = s₁α₁ + s₂α₂` and `1+|α₀|² = s₁(1+|α₁|²) + s₂(1+|α₂|²)`.
    pub fn constraint_residuals(&self) -> (f64, f64) {
        let (s1, s2) = self.weights();
        let lin = (self.alpha0 - s1 * self.alpha1 - s2 * self.alpha2).norm();
        let quad = (1.0 + self.alpha0.norm_sqr()
            - s1 * (1.0 + self.alpha1.norm_sqr())
            - s2 * (1.0 + self.alpha2.norm_sqr()))
        .abs();
        (lin, quad)
    }

    pub fn validate(&self) -> Result<(), CatalogError> {
        check_m(self.m)?;
        if self.a1.norm() == 0.0 || self.a2.norm() == 0.0 {
            return Err(CatalogError::InvalidParameter("a₁ and a₂ must be nonzero".into()));
        }
        if self.alpha0.norm() >= 1.0 {
            return Err(CatalogError::InvalidParameter(format!("|α₀| = {} must be < 1", self.alpha0.norm())));
        }
        check_alpha("α₁", self.alpha1, self.r1)?;
        check_alpha("α₂", self.alpha2, self.r2)?;
        let (lin, quad) = self.constraint_residuals();
        if lin > KIND1_TOL {
            return Err(CatalogError::InvalidParameter(format!("α₀ constraint residual {lin:e}")));
        }
        if quad > KIND1_TOL {
            return Err(CatalogError::InvalidParameter(format!("modulus constraint residual {quad:e}")));
        }
        Ok(())
    }

    /// All `α = 0`, `r₁ = r₂ = 1`, `|a₁|² = |a₂|^{2m} = 1/2`: the map `(a₁ζ, a₂ζ)`.
    pub fn centered(m: f64) -> Self {
        Self {
            a1: c64(0.5f64.sqrt(), 0.0),
            a2: c64(0.5f64.powf(0.5 / m), 0.0),
            alpha0: c64(0.0, 0.0),
            alpha1: c64(0.0, 0.0),
            alpha2: c64(0.0, 0.0),
            r1: true,
            r2: true,
            m,
        }
    }

    /// Seeded feasible parameters.
    ///
    /// Draws `α₁, α₂` in the disc of radius 0.6, `|a₂|`, the phases and the
    /// Blaschke exponents, then solves the quadratic modulus constraint for
    /// `s₁ = |a₁|²` (smaller root) and sets `α₀` from the linear one.
    /// Draws are rejected until `|α₀| ≤ 0.6` and `s₁ > 0`.
    pub fn sample(seed: u64, m: f64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6b69_6e64_315f_6d61);
        let disc_point = |rng: &mut ChaCha8Rng| C64::from_polar(0.6 * rng.random::<f64>().sqrt(), rng.random_range(0.0..TAU));
        loop {
            let alpha1 = disc_point(&mut rng);
            let alpha2 = disc_point(&mut rng);
            let s2: f64 = rng.random_range(0.05..0.95);
            let (p1, p2) = (rng.random_range(0.0..TAU), rng.random_range(0.0..TAU));
            let (r1, r2) = (rng.random_bool(0.75), rng.random_bool(0.75));
            let qa = alpha1.norm_sqr();
            let qb = 2.0 * s2 * (alpha1 * alpha2.conj()).re - (1.0 + alpha1.norm_sqr());
            let qc = (1.0 - s2) * (1.0 - s2 * alpha2.norm_sqr());
            let s1 = if qa < 1e-14 {
                -qc / qb
            } else {
                let disc = qb * qb - 4.0 * qa * qc;
                if disc < 0.0 {
                    continue;
                }
                // smaller root, written to avoid cancellation
                2.0 * qc / (-qb + disc.sqrt())
            };
            if !(s1 > 1e-3) {
                continue;
            }
            let alpha0 = s1 * alpha1 + s2 * alpha2;
            if alpha0.norm() > 0.6 {
                continue;
            }
            let p = Self {
                a1: C64::from_polar(s1.sqrt(), p1),
                a2: C64::from_polar(s2.powf(0.5 / m), p2),
                alpha0,
                alpha1,
                alpha2,
                r1,
                r2,
                m,
            };
            if p.validate().is_ok() {
                return p;
            }
        }
    }

    /// Number of Blaschke factors in the map.
    pub fn blaschke_degree(&self) -> usize {
        self.r1 as usize + self.r2 as usize
    }
}

/// First family:
/// `(a₁B_{α₁}^{r₁}(1-ᾱ₁ζ)/(1-ᾱ₀ζ), a₂B_{α₂}^{r₂}((1-ᾱ₂ζ)/(1-ᾱ₀ζ))^{1/m})`.
///
/// The exponent `1/m` is the one for which `|φ₁|² + |φ₂|^{2m} = 1` on the
/// unit circle under the two scalar constraints.
pub fn ellipsoid_kind1(p: &EllipsoidKind1Params) -> Result<AnalyticDisc, CatalogError> {
    p.validate()?;
    let label = format!("ellipsoid-k1:m={}", p.m);
    Ok(AnalyticDisc::new(label, kind1_components(p, false)?))
}

fn kind1_components(p: &EllipsoidKind1Params, perturb: bool) -> Result<Vec<HoloFn>, HoloError> {
    let mut f1 = vec![HoloFn::constant(p.a1)];
    if perturb {
        f1.push(HoloFn::monomial(2, c64(1.0, 0.0)));
    } else if p.r1 {
        f1.push(HoloFn::blaschke(p.alpha1)?);
    }
    f1.push(HoloFn::ratio_one_minus_conj(p.alpha1, p.alpha0));
    let mut f2 = vec![HoloFn::constant(p.a2)];
    if p.r2 {
        f2.push(HoloFn::blaschke(p.alpha2)?);
    }
    f2.push(HoloFn::RatioPower { num: p.alpha2, den: p.alpha0, exponent: 1.0 / p.m });
    Ok(vec![HoloFn::Product(f1), HoloFn::Product(f2)])
}

/// First-family map with the first Blaschke factor replaced by `ζ²`.
/// Still attached to the boundary, but not stationary.
pub fn perturbed_kind1(p: &EllipsoidKind1Params) -> Result<AnalyticDisc, CatalogError> {
    p.validate()?;
    Ok(AnalyticDisc::new(format!("ellipsoid-k1-perturbed:m={}", p.m), kind1_components(p, true)?))
}

/// Extremal maps of the second family, indexed `ℓ = 1..k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EllipsoidKind2Params {
    pub a1: C64,
    pub a2: C64,
    pub alpha0: Vec<C64>,
    pub alpha1: Vec<C64>,
    pub alpha2: Vec<C64>,
    pub r1: Vec<bool>,
    pub r2: Vec<bool>,
    pub m: f64,
}

impl EllipsoidKind2Params {
    pub fn k(&self) -> usize {
        self.alpha0.len()
    }

    /// Coefficient-wise max of
    /// `|a₁|²∏(ζ-α_{ℓ1})(1-ᾱ_{ℓ1}ζ) + |a₂|^{2m}∏(ζ-α_{ℓ2})(1-ᾱ_{ℓ2}ζ) - ∏(ζ-α_{ℓ0})(1-ᾱ_{ℓ0}ζ)`.
    pub fn identity_residual(&self) -> f64 {
        let prod = |alphas: &[C64]| {
            alphas.iter().fold(ComplexSeries::constant(c64(1.0, 0.0)), |acc, &a| acc.mul(&quadratic(a)))
        };
        let s1 = self.a1.norm_sqr();
        let s2 = self.a2.norm_sqr().powf(self.m);
        let lhs = prod(&self.alpha1).scale(c64(s1, 0.0)).add(&prod(&self.alpha2).scale(c64(s2, 0.0)));
        lhs.sub(&prod(&self.alpha0)).max_abs()
    }

    pub fn validate(&self) -> Result<(), CatalogError> {
        check_m(self.m)?;
        let k = self.k();
        if k == 0 {
            return Err(CatalogError::InvalidParameter("second family needs k >= 1".into()));
        }
        if [self.alpha1.len(), self.alpha2.len(), self.r1.len(), self.r2.len()].iter().any(|&l| l != k) {
            return Err(CatalogError::InvalidParameter("parameter lists must all have length k".into()));
        }
        if self.a1.norm() == 0.0 || self.a2.norm() == 0.0 {
            return Err(CatalogError::InvalidParameter("a₁ and a₂ must be nonzero".into()));
        }
        for l in 0..k {
            check_alpha("α_{ℓ0}", self.alpha0[l], false)?;
            check_alpha("α_{ℓ1}", self.alpha1[l], self.r1[l])?;
            check_alpha("α_{ℓ2}", self.alpha2[l], self.r2[l])?;
        }
        let res = self.identity_residual();
        if res > KIND2_TOL {
            return Err(CatalogError::InvalidParameter(format!("polynomial identity residual {res:e}")));
        }
        Ok(())
    }
}

/// Second family: products over `ℓ` of the first-family factors, with the
/// `1/m` power taken factor by factor.
pub fn ellipsoid_kind2(p: &EllipsoidKind2Params) -> Result<AnalyticDisc, CatalogError> {
    p.validate()?;
    let mut f1 = vec![HoloFn::constant(p.a1)];
    let mut f2 = vec![HoloFn::constant(p.a2)];
    for l in 0..p.k() {
        if p.r1[l] {
            f1.push(HoloFn::blaschke(p.alpha1[l])?);
        }
        f1.push(HoloFn::ratio_one_minus_conj(p.alpha1[l], p.alpha0[l]));
        if p.r2[l] {
            f2.push(HoloFn::blaschke(p.alpha2[l])?);
        }
        f2.push(HoloFn::RatioPower { num: p.alpha2[l], den: p.alpha0[l], exponent: 1.0 / p.m });
    }
    Ok(AnalyticDisc::new(format!("ellipsoid-k2:m={},k={}", p.m, p.k()), vec![
        HoloFn::Product(f1),
        HoloFn::Product(f2),
    ]))
}

/// The `k` distinct `k`-th roots of `alpha`, sorted by principal argument.
pub fn kth_roots(alpha: C64, k: usize) -> Vec<C64> {
    if alpha.norm() == 0.0 {
        return vec![c64(0.0, 0.0); k];
    }
    let (r, theta) = alpha.to_polar();
    let mut roots: Vec<C64> = (0..k).map(|l| C64::from_polar(r.powf(1.0 / k as f64), (theta + TAU * l as f64) / k as f64)).collect();
    roots.sort_by(|a, b| a.arg().total_cmp(&b.arg()));
    roots
}

/// Second-family parameters of `φ(ζ^k)`: each `α_j` is replaced by its
/// `k` roots and the Blaschke exponents are repeated.
pub fn lift_kind1(p: &EllipsoidKind1Params, k: usize) -> Result<EllipsoidKind2Params, CatalogError> {
    p.validate()?;
    if k == 0 {
        return Err(CatalogError::InvalidParameter("lift order must be positive".into()));
    }
    Ok(EllipsoidKind2Params {
        a1: p.a1,
        a2: p.a2,
        alpha0: kth_roots(p.alpha0, k),
        alpha1: kth_roots(p.alpha1, k),
        alpha2: kth_roots(p.alpha2, k),
        r1: vec![p.r1; k],
        r2: vec![p.r2; k],
        m: p.m,
    })
}

/// `F_{a,θ}(z) = (B_a(z₁), e^{iθ}(1-|a|²)^{1/(2m)} z₂ / (1-āz₁)^{1/m})`.
pub fn ellipsoid_automorphism(a: C64, theta: f64, m: f64, z: [C64; 2]) -> Result<[C64; 2], CatalogError> {
    check_m(m)?;
    let w1 = blaschke(a, z[0])?;
    let d = 1.0 - a.conj() * z[0];
    if d.norm() == 0.0 {
        return Err(HoloError::Pole(z[0]).into());
    }
    let w2 = C64::from_polar((1.0 - a.norm_sqr()).powf(0.5 / m), theta) * z[1] / d.powf(1.0 / m);
    Ok([w1, w2])
}

/// `F_{a,θ} ∘ f` for a disc into `E(1,m)`.
pub fn automorphism_disc(a: C64, theta: f64, m: f64, f: &AnalyticDisc) -> Result<AnalyticDisc, CatalogError> {
    check_m(m)?;
    if f.components().len() != 2 {
        return Err(CatalogError::InvalidParameter("automorphism acts on discs in C²".into()));
    }
    let c = f.components();
    let first = c[0].clone().then_blaschke(a)?;
    let base = HoloFn::Sum(vec![HoloFn::constant(c64(1.0, 0.0)), c[0].clone().scaled(-a.conj())]);
    let second = c[1]
        .clone()
        .times(base.fractional_power(-1.0 / m)?)
        .scaled(C64::from_polar((1.0 - a.norm_sqr()).powf(0.5 / m), theta));
    Ok(AnalyticDisc::new(format!("F[{},{theta}]∘{}", super::yu::fmt_c(a), f.label()), vec![first, second]))
}

/// A random point of `E(1,m)` (uniform angle, radii drawn inside the body).
pub fn sample_ellipsoid_point(rng: &mut impl Rng, m: f64) -> [C64; 2] {
    let u: f64 = rng.random_range(0.0..0.999);
    let s: f64 = rng.random_range(0.0..1.0);
    let r1 = (u * s).sqrt();
    let r2 = (u * (1.0 - s)).powf(0.5 / m);
    [C64::from_polar(r1, rng.random_range(-PI..PI)), C64::from_polar(r2, rng.random_range(-PI..PI))]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::holo::{BoundaryGrid, Disc};

    fn sup_gap(f: &AnalyticDisc, g: &AnalyticDisc, grid: usize, r: f64) -> f64 {
        BoundaryGrid::nodes(grid, r)
            .into_iter()
            .map(|z| {
                let (a, b) = (f.eval(z).unwrap(), g.eval(z).unwrap());
                a.iter().zip(&b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn centered_map_is_linear() {
        let p = EllipsoidKind1Params::centered(0.35);
        let f = ellipsoid_kind1(&p).unwrap();
        let z = c64(0.3, -0.2);
        let w = f.eval(z).unwrap();
        assert!((w[0] - p.a1 * z).norm() < 1e-15 && (w[1] - p.a2 * z).norm() < 1e-15);
    }

    #[test]
    fn sampled_maps_are_attached() {
        for seed in 0..10 {
            let p = EllipsoidKind1Params::sample(seed, 0.35);
            let f = ellipsoid_kind1(&p).unwrap();
            for z in BoundaryGrid::nodes(256, 1.0) {
                let w = f.eval(z).unwrap();
                let rho = w[0].norm_sqr() + w[1].norm_sqr().powf(p.m) - 1.0;
                assert!(rho.abs() < 1e-12, "seed {seed}: ρ = {rho}");
            }
        }
    }

    #[test]
    fn constraint_violation_rejected() {
        let mut p = EllipsoidKind1Params::centered(0.3);
        p.a1 *= 1.01;
        assert!(ellipsoid_kind1(&p).is_err());
    }

    #[test]
    fn kind2_reduces_to_kind1() {
        let p = EllipsoidKind1Params::sample(3, 0.2);
        let q = lift_kind1(&p, 1).unwrap();
        let gap = sup_gap(&ellipsoid_kind1(&p).unwrap(), &ellipsoid_kind2(&q).unwrap(), 256, 1.0);
        assert!(gap < 1e-14);
    }

    #[test]
    fn root_lift_identity() {
        let mut p = EllipsoidKind1Params::centered(0.45);
        p.alpha0 = c64(0.5, 0.0);
        let roots = kth_roots(p.alpha0, 2);
        assert!((roots[0] + 0.5f64.sqrt()).norm() < 1e-15 || (roots[0] - 0.5f64.sqrt()).norm() < 1e-15);
        assert!((roots[0] + roots[1]).norm() < 1e-15);
        let all_zero = lift_kind1(&EllipsoidKind1Params::centered(0.3), 3).unwrap();
        assert!(all_zero.alpha1.iter().all(|a| a.norm() == 0.0));
        let f = ellipsoid_kind2(&all_zero).unwrap();
        let z = c64(0.4, 0.5);
        assert!((f.eval(z).unwrap()[0] - all_zero.a1 * z.powu(3)).norm() < 1e-15);
    }

    #[test]
    fn perturbed_identity_rejected() {
        let p = EllipsoidKind1Params::sample(11, 0.35);
        let mut q = lift_kind1(&p, 2).unwrap();
        assert!(q.identity_residual() < 1e-12);
        q.alpha0[0] += 1e-3;
        assert!(ellipsoid_kind2(&q).is_err());
    }

    #[test]
    fn automorphism_examples() {
        let m = 0.3;
        let z = [c64(0.2, 0.1), c64(0.3, -0.2)];
        let id = ellipsoid_automorphism(c64(0.0, 0.0), 0.0, m, z).unwrap();
        assert!((id[0] - z[0]).norm() < 1e-15 && (id[1] - z[1]).norm() < 1e-15);
        let a = c64(0.4, -0.3);
        let w = ellipsoid_automorphism(a, 1.1, m, [a, c64(0.2, 0.0)]).unwrap();
        assert!(w[0].norm() < 1e-15);
    }
}
