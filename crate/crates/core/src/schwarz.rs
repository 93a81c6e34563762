//! Higher-order Schwarz inequalities on the unit disc, with samplers and
//! two-tier equality detection.
//!
//! Three inequalities are covered:
//!
//! * `|f(ζ)| ≤ |ζ|^k` and `|f^{(k)}(0)| ≤ k!` for self-maps vanishing to
//!   order `k` at the origin ([`check_higher_schwarz`]);
//! * the Schwarz–Pick version at an interior base point `ζ₀`
//!   ([`check_schwarz_pick_higher`]);
//! * `|f^{(k)}(0)| ≤ -2k!|f(0)| log|f(0)|` for maps into the punctured disc
//!   ([`check_punctured`]).
//!
//! Local derivatives are read off a Cauchy integral so that equality
//! detection is not polluted by finite-difference noise.

use std::f64::consts::TAU;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::holo::{blaschke, c64, cauchy_taylor, ComplexSeries, HoloError, HoloFn, CAUCHY_NODES, C64};

/// Ratio gap below which a sample is treated as a candidate equality case.
pub const EQUALITY_DETECT: f64 = 1e-8;
/// Sup-norm distance to the closed form required to confirm equality.
pub const EQUALITY_CONFIRM: f64 = 1e-7;
/// Required slack of `|f|` below 1 on the test grid.
pub const SELF_MAP_MARGIN: f64 = 1e-9;
/// Tolerance on the vanishing hypotheses, relative to `k!`.
const HYPOTHESIS_TOL: f64 = 1e-9;

const GRID_RADII: usize = 10;
const GRID_ANGLES: usize = 100;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SchwarzError {
    #[error("invalid sample: {0}")]
    InvalidSample(String),
    #[error(transparent)]
    Holo(#[from] HoloError),
}

/// Which inequality a report refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Lemma {
    Basic,
    Pick,
    Punctured,
}

impl std::str::FromStr for Lemma {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "basic" => Ok(Lemma::Basic),
            "pick" => Ok(Lemma::Pick),
            "punctured" => Ok(Lemma::Punctured),
            _ => Err(format!("unknown lemma '{s}' (expected basic, pick or punctured)")),
        }
    }
}

/// Inner map `h: D → D` with `ν(h) ≥ k` and `h(0) = 0` that every sample is
/// built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InnerFamily {
    /// `ζ^k ∏ B_{a_i}`
    Blaschke,
    /// `ζ^k p(ζ) / (1 + ‖p‖)`
    Polynomial,
    /// `e^{iθ} ζ^k`, the equality case.
    Extremal,
}

/// Where the sample maps and how it is normalized.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SampleTarget {
    /// `f = h`
    Disc,
    /// `f = B_{-c} ∘ h ∘ B_{ζ₀}`, so `f(ζ₀) = c` and `f' … f^{(k-1)}` vanish at `ζ₀`.
    Pick { base: C64 },
    /// `f = e^{iα} exp(log|f(0)| (1+h)/(1-h))`
    Punctured,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleProfile {
    pub k: usize,
    /// Blaschke factors or polynomial degree of the inner map.
    pub factors: usize,
    pub family: InnerFamily,
    pub target: SampleTarget,
}

impl SampleProfile {
    pub fn disc(k: usize, factors: usize, family: InnerFamily) -> Self {
        Self { k, factors, family, target: SampleTarget::Disc }
    }
}

/// A seeded holomorphic self-map with prescribed vanishing.
#[derive(Debug, Clone, PartialEq)]
pub struct SelfMapSample {
    pub seed: u64,
    pub profile: SampleProfile,
    pub func: HoloFn,
    /// Rotation of the inner map when it was built as an equality case.
    pub theta: Option<f64>,
    /// `f(ζ₀)` for Pick samples, `f(0)` for punctured ones.
    pub value_at_base: C64,
}

impl SelfMapSample {
    pub fn k(&self) -> usize {
        self.profile.k
    }

    pub fn base(&self) -> C64 {
        match self.profile.target {
            SampleTarget::Pick { base } => base,
            _ => c64(0.0, 0.0),
        }
    }

    pub fn is_extremal(&self) -> bool {
        self.profile.family == InnerFamily::Extremal
    }
}

fn disc_point(rng: &mut ChaCha8Rng, radius: f64) -> C64 {
    C64::from_polar(radius * rng.random::<f64>().sqrt(), rng.random_range(0.0..TAU))
}

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    // Box–Muller
    let u: f64 = 1.0 - rng.random::<f64>();
    (-2.0 * u.ln()).sqrt() * (TAU * rng.random::<f64>()).cos()
}

/// Deterministic-per-seed sample.
pub fn sample_self_map(seed: u64, profile: SampleProfile) -> Result<SelfMapSample, SchwarzError> {
    let k = profile.k;
    if k == 0 {
        return Err(SchwarzError::InvalidSample("vanishing order k must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7363_6877_6172_7a00);
    let mut theta = None;
    let inner = match profile.family {
        InnerFamily::Blaschke => {
            let mut f = HoloFn::monomial(k, c64(1.0, 0.0));
            for _ in 0..profile.factors {
                f = f.times(HoloFn::blaschke(disc_point(&mut rng, 0.95))?);
            }
            f
        }
        InnerFamily::Polynomial => {
            let p = ComplexSeries::new(
                (0..=profile.factors).map(|_| c64(gaussian(&mut rng), gaussian(&mut rng))).collect(),
            );
            let sup = crate::holo::BoundaryGrid::nodes(1024, 1.0).into_iter().map(|z| p.eval(z).norm()).fold(0.0, f64::max);
            HoloFn::Series(p.scale(c64(1.0 / (1.0 + sup), 0.0)).shift(k))
        }
        InnerFamily::Extremal => {
            let t = rng.random_range(0.0..TAU);
            theta = Some(t);
            HoloFn::monomial(k, C64::from_polar(1.0, t))
        }
    };
    let (func, value_at_base) = match profile.target {
        SampleTarget::Disc => (inner, c64(0.0, 0.0)),
        SampleTarget::Pick { base } => {
            if base.norm() >= 1.0 {
                return Err(SchwarzError::InvalidSample(format!("base point |ζ₀| = {} must be < 1", base.norm())));
            }
            let c = disc_point(&mut rng, 0.9);
            (inner.after_blaschke(base)?.then_blaschke(-c)?, c)
        }
        SampleTarget::Punctured => {
            let modulus = rng.random_range(0.05..0.95f64);
            let alpha = rng.random_range(0.0..TAU);
            let f = HoloFn::ExpOf(Box::new(HoloFn::Herglotz { scale: modulus.ln(), inner: Box::new(inner) }))
                .scaled(C64::from_polar(1.0, alpha));
            (f, C64::from_polar(modulus, alpha))
        }
    };
    Ok(SelfMapSample { seed, profile, func, theta, value_at_base })
}

/// Outcome of the equality branch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Equality {
    Strict,
    /// Ratio within [`EQUALITY_DETECT`] of the bound but the closed form is
    /// farther than [`EQUALITY_CONFIRM`] away.
    NearUnconfirmed { theta: f64, reconstruction_error: f64 },
    Confirmed { theta: f64, reconstruction_error: f64 },
}

impl Equality {
    pub fn theta(&self) -> Option<f64> {
        match self {
            Equality::Strict => None,
            Equality::NearUnconfirmed { theta, .. } | Equality::Confirmed { theta, .. } => Some(*theta),
        }
    }

    pub fn is_confirmed(&self) -> bool {
        matches!(self, Equality::Confirmed { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchwarzReport {
    pub lemma: Lemma,
    pub k: usize,
    pub base: C64,
    /// Largest `lhs - rhs` over all checked inequalities, floored at 0.
    pub max_violation: f64,
    /// `|f^{(k)}|` divided by its bound.
    pub derivative_ratio: f64,
    /// `1 - derivative_ratio`.
    pub equality_gap: f64,
    pub equality: Equality,
    pub points: usize,
}

/// Polar test grid: 10 radii up to 0.999, 100 staggered angles each.
pub fn test_points() -> Vec<C64> {
    let mut pts = Vec::with_capacity(GRID_RADII * GRID_ANGLES);
    for i in 0..GRID_RADII {
        let r = 0.999 * ((i + 1) as f64 / GRID_RADII as f64).sqrt();
        let offset = i as f64 / GRID_RADII as f64;
        pts.extend((0..GRID_ANGLES).map(|j| C64::from_polar(r, TAU * (j as f64 + offset) / GRID_ANGLES as f64)));
    }
    pts
}

fn local_taylor(f: &HoloFn, base: C64, k: usize) -> Result<Vec<C64>, SchwarzError> {
    let radius = 0.3f64.min((1.0 - base.norm()) / 2.0);
    Ok(cauchy_taylor(|z| f.eval(z), base, radius, CAUCHY_NODES, k)?)
}

fn eval_grid(f: &HoloFn, pts: &[C64]) -> Result<Vec<C64>, SchwarzError> {
    Ok(pts.iter().map(|&z| f.eval(z)).collect::<Result<Vec<_>, _>>()?)
}

fn certify_self_map(values: &[C64], pts: &[C64]) -> Result<(), SchwarzError> {
    for (v, z) in values.iter().zip(pts) {
        if !(v.norm() < 1.0 - SELF_MAP_MARGIN) {
            return Err(SchwarzError::InvalidSample(format!("|f({z})| = {} is not below 1", v.norm())));
        }
    }
    Ok(())
}

fn check_vanishing(coeffs: &[C64], from: usize, k: usize, scale: f64, what: &str) -> Result<(), SchwarzError> {
    for (l, a) in coeffs.iter().enumerate().take(k).skip(from) {
        if a.norm() > HYPOTHESIS_TOL * scale.max(1.0) {
            return Err(SchwarzError::InvalidSample(format!("{what}: coefficient {l} is {:e}, expected 0", a.norm())));
        }
    }
    Ok(())
}

fn classify(ratio: f64, reconstruct: impl FnOnce() -> Result<(f64, f64), SchwarzError>) -> Result<Equality, SchwarzError> {
    if (1.0 - ratio).abs() > EQUALITY_DETECT {
        return Ok(Equality::Strict);
    }
    let (theta, reconstruction_error) = reconstruct()?;
    Ok(if reconstruction_error < EQUALITY_CONFIRM {
        Equality::Confirmed { theta, reconstruction_error }
    } else {
        Equality::NearUnconfirmed { theta, reconstruction_error }
    })
}

fn sup_distance(values: &[C64], pts: &[C64], g: impl Fn(C64) -> C64) -> f64 {
    values.iter().zip(pts).map(|(v, &z)| (v - g(z)).norm()).fold(0.0, f64::max)
}

/// `|f(ζ)| ≤ |ζ|^k` on the grid and `|f^{(k)}(0)| ≤ k!`, with the
/// rotation `e^{iθ}ζ^k` fitted and checked when the bound is attained.
pub fn check_higher_schwarz(f: &SelfMapSample, k: usize) -> Result<SchwarzReport, SchwarzError> {
    let pts = test_points();
    let values = eval_grid(&f.func, &pts)?;
    certify_self_map(&values, &pts)?;
    let coeffs = local_taylor(&f.func, c64(0.0, 0.0), k)?;
    check_vanishing(&coeffs, 0, k, 1.0, "f must vanish to order k at 0")?;
    let pointwise = values.iter().zip(&pts).map(|(v, z)| v.norm() - z.norm().powi(k as i32)).fold(f64::NEG_INFINITY, f64::max);
    let ratio = coeffs[k].norm();
    let equality = classify(ratio, || {
        let theta = coeffs[k].arg();
        let rot = C64::from_polar(1.0, theta);
        Ok((theta, sup_distance(&values, &pts, |z| rot * z.powu(k as u32))))
    })?;
    Ok(SchwarzReport {
        lemma: Lemma::Basic,
        k,
        base: c64(0.0, 0.0),
        max_violation: pointwise.max(ratio - 1.0).max(0.0),
        derivative_ratio: ratio,
        equality_gap: 1.0 - ratio,
        equality,
        points: pts.len(),
    })
}

/// `|f^{(k)}(ζ₀)| ≤ k!(1-|f(ζ₀)|²)/(1-|ζ₀|²)^k` together with
/// `|B_{f(ζ₀)}(f(w))| ≤ |B_{ζ₀}(w)|^k` over the grid.
///
/// Equality reconstructs `f(w) = (e^{iθ}B_{ζ₀}(w)^k + c)/(1 + e^{iθ}c̄B_{ζ₀}(w)^k)`
/// with `c = f(ζ₀)`.
pub fn check_schwarz_pick_higher(f: &SelfMapSample, base: C64, k: usize) -> Result<SchwarzReport, SchwarzError> {
    if base.norm() >= 1.0 {
        return Err(SchwarzError::InvalidSample(format!("base point |ζ₀| = {} must be < 1", base.norm())));
    }
    let pts = test_points();
    let values = eval_grid(&f.func, &pts)?;
    certify_self_map(&values, &pts)?;
    let coeffs = local_taylor(&f.func, base, k)?;
    let c = coeffs[0];
    let s = 1.0 - base.norm_sqr();
    // a_ℓ scaled by (1-|ζ₀|²)^ℓ/(1-|c|²) is the ℓ-th coefficient of the conjugated self-map of D
    let normalized: Vec<C64> =
        coeffs.iter().enumerate().map(|(l, a)| if l == 0 { c64(0.0, 0.0) } else { a * s.powi(l as i32) / (1.0 - c.norm_sqr()) }).collect();
    check_vanishing(&normalized, 1, k, 1.0, "f^(l)(ζ₀) must vanish for l < k")?;
    let mut pointwise = f64::NEG_INFINITY;
    for (v, &w) in values.iter().zip(&pts) {
        let lhs = (v - c).norm() / (1.0 - c.conj() * v).norm();
        let rhs = blaschke(base, w)?.norm().powi(k as i32);
        pointwise = pointwise.max(lhs - rhs);
    }
    let ratio = normalized[k].norm();
    let equality = classify(ratio, || {
        let theta = normalized[k].arg();
        let rot = C64::from_polar(1.0, theta);
        let err = sup_distance(&values, &pts, |w| {
            let b = rot * ((w - base) / (1.0 - base.conj() * w)).powu(k as u32);
            (b + c) / (1.0 + c.conj() * b)
        });
        Ok((theta, err))
    })?;
    Ok(SchwarzReport {
        lemma: Lemma::Pick,
        k,
        base,
        max_violation: pointwise.max(ratio - 1.0).max(0.0),
        derivative_ratio: ratio,
        equality_gap: 1.0 - ratio,
        equality,
        points: pts.len(),
    })
}

/// `|f^{(k)}(0)| ≤ -2k!|f(0)| log|f(0)|` for `f: D → D∖{0}` with
/// `f^{(ℓ)}(0) = 0`, `ℓ = 1..k-1`.
///
/// Equality reconstructs `e^{iα} exp(log|f(0)| (1+e^{iθ}ζ^k)/(1-e^{iθ}ζ^k))`.
pub fn check_punctured(f: &SelfMapSample, k: usize) -> Result<SchwarzReport, SchwarzError> {
    let all = test_points();
    let all_values = eval_grid(&f.func, &all)?;
    if let Some((v, z)) = all_values.iter().zip(&all).find(|(v, _)| !v.is_finite()) {
        return Err(SchwarzError::InvalidSample(format!("f({z}) = {v} is not finite")));
    }
    // near the boundary |f| can fall below the smallest double; such
    // points say nothing about zeros and are left out
    let (pts, values): (Vec<C64>, Vec<C64>) =
        all.iter().zip(&all_values).filter(|(_, v)| v.norm() > 0.0).map(|(z, v)| (*z, *v)).unzip();
    if pts.len() < all.len() / 2 {
        return Err(SchwarzError::InvalidSample("f vanishes on most of the grid".into()));
    }
    certify_self_map(&values, &pts)?;
    let coeffs = local_taylor(&f.func, c64(0.0, 0.0), k)?;
    let f0 = f.func.eval(c64(0.0, 0.0))?;
    let m = f0.norm();
    if !(m > 0.0 && m < 1.0) {
        return Err(SchwarzError::InvalidSample(format!("|f(0)| = {m} outside (0, 1)")));
    }
    let log_m = m.ln();
    let bound = -2.0 * m * log_m;
    check_vanishing(&coeffs, 1, k, bound, "f^(l)(0) must vanish for l < k")?;
    let ratio = coeffs[k].norm() / bound;
    let equality = classify(ratio, || {
        let rot = coeffs[k] / (2.0 * log_m * f0);
        let theta = rot.arg();
        let rot = C64::from_polar(1.0, theta);
        let phase = C64::from_polar(1.0, f0.arg());
        let err = sup_distance(&values, &pts, |z| {
            let w = rot * z.powu(k as u32);
            phase * (log_m * (1.0 + w) / (1.0 - w)).exp()
        });
        Ok((theta, err))
    })?;
    Ok(SchwarzReport {
        lemma: Lemma::Punctured,
        k,
        base: c64(0.0, 0.0),
        max_violation: (ratio - 1.0).max(0.0),
        derivative_ratio: ratio,
        equality_gap: 1.0 - ratio,
        equality,
        points: pts.len(),
    })
}

/// Run the check matching the sample's target.
pub fn check_sample(f: &SelfMapSample) -> Result<SchwarzReport, SchwarzError> {
    match f.profile.target {
        SampleTarget::Disc => check_higher_schwarz(f, f.k()),
        SampleTarget::Pick { base } => check_schwarz_pick_higher(f, base, f.k()),
        SampleTarget::Punctured => check_punctured(f, f.k()),
    }
}

/// Batch configuration: `samples` seeded maps, every `extremal_every`-th
/// one built as an equality case and the rest alternating between
/// Blaschke and polynomial inner maps with 0..=`max_factors` factors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub lemma: Lemma,
    pub k: usize,
    pub samples: usize,
    pub seed: u64,
    pub base: C64,
    pub max_factors: usize,
    pub extremal_every: usize,
    /// Threshold above which a violation is counted.
    pub tolerance: f64,
}

impl SuiteConfig {
    pub fn new(lemma: Lemma, k: usize, samples: usize, seed: u64) -> Self {
        Self { lemma, k, samples, seed, base: c64(0.0, 0.0), max_factors: 4, extremal_every: 10, tolerance: 1e-8 }
    }

    pub fn with_base(mut self, base: C64) -> Self {
        self.base = base;
        self
    }

    fn profile(&self, index: usize) -> SampleProfile {
        let family = if self.extremal_every > 0 && index % self.extremal_every == 0 {
            InnerFamily::Extremal
        } else if index % 2 == 0 {
            InnerFamily::Blaschke
        } else {
            InnerFamily::Polynomial
        };
        let target = match self.lemma {
            Lemma::Basic => SampleTarget::Disc,
            Lemma::Pick => SampleTarget::Pick { base: self.base },
            Lemma::Punctured => SampleTarget::Punctured,
        };
        SampleProfile { k: self.k, factors: index % (self.max_factors + 1), family, target }
    }
}

/// One CSV row of a suite run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleRow {
    pub index: usize,
    pub seed: u64,
    pub family: InnerFamily,
    pub factors: usize,
    pub max_violation: f64,
    pub derivative_ratio: f64,
    pub equality_gap: f64,
    pub equality: String,
    pub theta_constructed: Option<f64>,
    pub theta_fitted: Option<f64>,
    pub reconstruction_error: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub config: SuiteConfig,
    pub max_violation: f64,
    pub violations: usize,
    pub equality_constructed: usize,
    pub equality_confirmed: usize,
    /// Equality confirmed on a sample that was not built as one.
    pub unexpected_equalities: usize,
    pub near_unconfirmed: usize,
    pub max_reconstruction_error: f64,
    /// Largest distance between constructed and fitted rotation.
    pub max_theta_error: f64,
}

impl SuiteSummary {
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.equality_confirmed == self.equality_constructed && self.unexpected_equalities == 0
    }
}

fn angle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// Sample and check a batch; rows are in index order regardless of threads.
pub fn run_suite(cfg: &SuiteConfig) -> Result<(SuiteSummary, Vec<SampleRow>), SchwarzError> {
    if cfg.samples == 0 {
        return Err(SchwarzError::InvalidSample("suite needs at least one sample".into()));
    }
    let rows = (0..cfg.samples)
        .into_par_iter()
        .map(|index| {
            let seed = cfg.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(index as u64);
            let sample = sample_self_map(seed, cfg.profile(index))?;
            let report = check_sample(&sample)?;
            let reconstruction_error = match report.equality {
                Equality::Strict => None,
                Equality::NearUnconfirmed { reconstruction_error, .. } | Equality::Confirmed { reconstruction_error, .. } => {
                    Some(reconstruction_error)
                }
            };
            Ok(SampleRow {
                index,
                seed,
                family: sample.profile.family,
                factors: sample.profile.factors,
                max_violation: report.max_violation,
                derivative_ratio: report.derivative_ratio,
                equality_gap: report.equality_gap,
                equality: match report.equality {
                    Equality::Strict => "strict",
                    Equality::NearUnconfirmed { .. } => "near-unconfirmed",
                    Equality::Confirmed { .. } => "confirmed",
                }
                .to_string(),
                theta_constructed: sample.theta,
                theta_fitted: report.equality.theta(),
                reconstruction_error,
            })
        })
        .collect::<Result<Vec<_>, SchwarzError>>()?;
    let mut s = SuiteSummary {
        config: *cfg,
        max_violation: 0.0,
        violations: 0,
        equality_constructed: 0,
        equality_confirmed: 0,
        unexpected_equalities: 0,
        near_unconfirmed: 0,
        max_reconstruction_error: 0.0,
        max_theta_error: 0.0,
    };
    for r in &rows {
        s.max_violation = s.max_violation.max(r.max_violation);
        s.violations += (r.max_violation > cfg.tolerance) as usize;
        let extremal = r.family == InnerFamily::Extremal;
        let confirmed = r.equality == "confirmed";
        s.equality_constructed += extremal as usize;
        s.equality_confirmed += (extremal && confirmed) as usize;
        s.unexpected_equalities += (!extremal && confirmed) as usize;
        s.near_unconfirmed += (r.equality == "near-unconfirmed") as usize;
        if extremal {
            s.max_reconstruction_error = s.max_reconstruction_error.max(r.reconstruction_error.unwrap_or(f64::INFINITY));
            if let (Some(a), Some(b)) = (r.theta_constructed, r.theta_fitted) {
                s.max_theta_error = s.max_theta_error.max(angle_distance(a, b));
            }
        }
    }
    Ok((s, rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixed(func: HoloFn, target: SampleTarget, k: usize) -> SelfMapSample {
        let profile = SampleProfile { k, factors: 0, family: InnerFamily::Blaschke, target };
        let value_at_base = func.eval(c64(0.0, 0.0)).unwrap();
        SelfMapSample { seed: 0, profile, func, theta: None, value_at_base }
    }

    #[test]
    fn monomials() {
        for k in 1..=4 {
            let r = check_higher_schwarz(&fixed(HoloFn::monomial(k, c64(1.0, 0.0)), SampleTarget::Disc, k), k).unwrap();
            let Equality::Confirmed { theta, .. } = r.equality else { panic!("{r:?}") };
            assert!(theta.abs() < 1e-12);
            let r = check_higher_schwarz(&fixed(HoloFn::monomial(k + 1, c64(1.0, 0.0)), SampleTarget::Disc, k), k).unwrap();
            assert_eq!(r.equality, Equality::Strict);
            assert!(r.derivative_ratio < 1e-12 && r.max_violation == 0.0);
        }
    }

    #[test]
    fn zero_factors_is_identity() {
        let s = sample_self_map(7, SampleProfile::disc(1, 0, InnerFamily::Blaschke)).unwrap();
        assert_eq!(s.func, HoloFn::monomial(1, c64(1.0, 0.0)));
        let again = sample_self_map(7, SampleProfile::disc(3, 3, InnerFamily::Polynomial)).unwrap();
        assert_eq!(again, sample_self_map(7, SampleProfile::disc(3, 3, InnerFamily::Polynomial)).unwrap());
    }

    #[test]
    fn rejects_non_self_maps_and_low_order() {
        let big = fixed(HoloFn::monomial(1, c64(1.5, 0.0)), SampleTarget::Disc, 1);
        assert!(matches!(check_higher_schwarz(&big, 1), Err(SchwarzError::InvalidSample(_))));
        let low = fixed(HoloFn::monomial(1, c64(0.5, 0.0)), SampleTarget::Disc, 2);
        assert!(matches!(check_higher_schwarz(&low, 2), Err(SchwarzError::InvalidSample(_))));
        let zero = fixed(HoloFn::monomial(1, c64(0.5, 0.0)), SampleTarget::Punctured, 1);
        assert!(matches!(check_punctured(&zero, 1), Err(SchwarzError::InvalidSample(_))));
    }

    #[test]
    fn pick_round_trip() {
        let base = c64(0.4, 0.2);
        let (a, theta, k) = (c64(-0.3, 0.5), 1.1, 3);
        let f = HoloFn::monomial(k, C64::from_polar(1.0, theta)).after_blaschke(base).unwrap().then_blaschke(-a).unwrap();
        let r = check_schwarz_pick_higher(&fixed(f, SampleTarget::Pick { base }, k), base, k).unwrap();
        let Equality::Confirmed { theta: fitted, reconstruction_error } = r.equality else { panic!("{r:?}") };
        assert!(angle_distance(fitted, theta) < 1e-8 && reconstruction_error < 1e-10, "{r:?}");
    }

    #[test]
    fn pick_at_origin_matches_basic() {
        let s = sample_self_map(3, SampleProfile::disc(2, 3, InnerFamily::Blaschke)).unwrap();
        let a = check_higher_schwarz(&s, 2).unwrap();
        let b = check_schwarz_pick_higher(&s, c64(0.0, 0.0), 2).unwrap();
        assert!((a.derivative_ratio - b.derivative_ratio).abs() < 1e-12);
    }

    #[test]
    fn punctured_extremal_second_order() {
        let l = -1.0f64;
        let f = HoloFn::ExpOf(Box::new(HoloFn::Herglotz { scale: l, inner: Box::new(HoloFn::monomial(2, c64(1.0, 0.0))) }));
        let r = check_punctured(&fixed(f.clone(), SampleTarget::Punctured, 2), 2).unwrap();
        assert!(r.equality_gap.abs() < 1e-8 && r.equality.is_confirmed(), "{r:?}");
        // f'' (0) = 2·2!·e^{-1}
        let d2 = f.taylor(2).unwrap().coeff(2) * 2.0;
        assert!((d2.norm() - 4.0 * (-1.0f64).exp()).abs() < 1e-13);
        let c = fixed(HoloFn::constant(c64(0.3, 0.2)), SampleTarget::Punctured, 2);
        let r = check_punctured(&c, 2).unwrap();
        assert!(r.derivative_ratio < 1e-12 && r.equality == Equality::Strict);
    }

    #[test]
    fn small_suites_pass() {
        for cfg in [
            SuiteConfig::new(Lemma::Basic, 2, 60, 1),
            SuiteConfig::new(Lemma::Pick, 2, 60, 2).with_base(c64(-0.7, 0.0)),
            SuiteConfig::new(Lemma::Punctured, 3, 60, 3),
        ] {
            let (s, rows) = run_suite(&cfg).unwrap();
            assert!(s.passed(), "{s:?}");
            assert_eq!(rows.len(), 60);
            assert_eq!(s.equality_constructed, 6);
        }
    }
}
