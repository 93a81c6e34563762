//! Penalized upper-bound search over jet-constrained polynomial discs.
//!
//! Discs have the form `f(ζ) = p + ζ^k (r v + Σ_{j=1}^{N} c_j ζ^j)` with
//! `r > 0` real and `c_j ∈ C^n` (affine family). On the punctured disc the
//! search uses `f = exp(g)` with `g = log p + ζ^k (r v/p + Σ c_j ζ^j)`, which
//! keeps `f` zero-free; polynomial discs there wind around the origin.
//!
//! Each stage minimizes `-r + W Σ_grid max(0, g + margin)²` over the smooth
//! constraint pieces `g` of the domain, sampled on the unit circle, with
//! `W = 10², 10⁴, …`. Every restart is then certified on the full
//! containment ladder before it can become the incumbent.

use std::f64::consts::TAU;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::lbfgs::{minimize, LbfgsConfig};
use super::{verify_jet, EstimateKind, JetTarget, MetricError, MetricEstimate, Residuals, WitnessRecord};
use crate::domains::{contains_disc, ContainmentConfig, ContainmentReport, ModelDomain};
use crate::holo::{AnalyticDisc, ComplexSeries, HoloFn, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiscFamily {
    /// `p + ζ^k (r v + Σ c_j ζ^j)`
    Affine,
    /// `e^{i arg p} exp(log|p| (1+ω)/(1-ω))` with `ω = ζ^k (r s + Σ c_j ζ^j)`
    /// and `|ω| < 1`; every map `D → D∖{0}` through `p` has this form.
    Herglotz,
}

impl DiscFamily {
    pub fn default_for(domain: &ModelDomain) -> Self {
        match domain {
            ModelDomain::PuncturedDisc => DiscFamily::Herglotz,
            _ => DiscFamily::Affine,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Monomials beyond `ζ^k`; `None` means `20k`.
    pub degree: Option<usize>,
    pub restarts: usize,
    pub stages: usize,
    /// L-BFGS iterations per penalty stage.
    pub iterations: usize,
    pub seed: u64,
    /// Constraint slack used while optimizing; certification uses `containment.margin`.
    pub search_margin: f64,
    /// Jet tolerance for certification.
    pub jet_tol: f64,
    pub family: Option<DiscFamily>,
    pub containment: ContainmentConfig,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            degree: None,
            restarts: 16,
            stages: 5,
            iterations: 2000,
            seed: 0,
            search_margin: 1e-7,
            jet_tol: 1e-9,
            family: None,
            containment: ContainmentConfig::default(),
        }
    }
}

impl SearchConfig {
    pub fn effective_degree(&self, k: usize) -> usize {
        self.degree.unwrap_or(20 * k)
    }

    pub fn validate(&self) -> Result<(), MetricError> {
        if self.restarts == 0 || self.stages == 0 || self.iterations == 0 {
            return Err(MetricError::InvalidTarget("restarts, stages and iterations must be positive".into()));
        }
        if !(self.search_margin >= 0.0 && self.jet_tol > 0.0) {
            return Err(MetricError::InvalidTarget("margins and tolerances must be non-negative".into()));
        }
        self.containment.validate()?;
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub estimate: MetricEstimate,
    pub witness: AnalyticDisc,
    pub family: DiscFamily,
    pub degree: usize,
    /// Raw parameters `[r, Re c, Im c, …]` of the best search disc, if the
    /// incumbent came from the search.
    pub params: Option<Vec<f64>>,
    /// Certified `r` per restart (`None` when certification failed).
    pub restart_r: Vec<Option<f64>>,
    /// `"restart i"`, `"warm start i"` or `"constant perturbation"`.
    pub source: String,
    pub containment: ContainmentReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub degree: usize,
    pub value: f64,
    pub source: String,
}

/// Grid data and objective for one search problem.
struct Problem<'a> {
    domain: &'a ModelDomain,
    target: &'a JetTarget,
    family: DiscFamily,
    n: usize,
    k: usize,
    degree: usize,
    nodes: usize,
    /// `powers[i * (k + N + 1) + d] = ζ_i^d`
    powers: Vec<C64>,
    /// Domain, base point and jet direction the penalty is written in:
    /// the target itself, or the unit disc with `p = 0`, `v = v/(2p log|p|)`
    /// for the Herglotz family.
    cdomain: ModelDomain,
    cp: Vec<C64>,
    cv: Vec<C64>,
}

impl<'a> Problem<'a> {
    fn new(domain: &'a ModelDomain, target: &'a JetTarget, family: DiscFamily, degree: usize, nodes: usize) -> Self {
        let k = target.k;
        let width = k + degree + 1;
        let mut powers = Vec::with_capacity(nodes * width);
        for i in 0..nodes {
            let z = C64::from_polar(1.0, TAU * i as f64 / nodes as f64);
            let mut w = C64::new(1.0, 0.0);
            for _ in 0..width {
                powers.push(w);
                w *= z;
            }
        }
        let (cdomain, cp, cv) = match family {
            DiscFamily::Herglotz => {
                let p = target.p[0];
                (ModelDomain::UnitDisc, vec![C64::new(0.0, 0.0)], vec![target.v[0] / (2.0 * p * p.norm().ln())])
            }
            DiscFamily::Affine => (*domain, target.p.clone(), target.v.clone()),
        };
        Self { domain, target, family, n: target.dim(), k, degree, nodes, powers, cdomain, cp, cv }
    }

    fn dim(&self) -> usize {
        1 + 2 * self.n * self.degree
    }

    fn coeff(x: &[f64], n: usize, j: usize, i: usize) -> C64 {
        let base = 1 + 2 * ((j - 1) * n + i);
        C64::new(x[base], x[base + 1])
    }

    /// `-r + W Σ max(0, g + margin)²` and its gradient.
    fn objective(&self, x: &[f64], grad: &mut [f64], weight: f64, margin: f64) -> f64 {
        let (n, k, deg) = (self.n, self.k, self.degree);
        let width = k + deg + 1;
        grad.iter_mut().for_each(|g| *g = 0.0);
        let r = x[0];
        let mut z = vec![C64::new(0.0, 0.0); n];
        let mut dz = vec![C64::new(0.0, 0.0); n];
        let mut q = vec![C64::new(0.0, 0.0); n];
        let mut penalty = 0.0;
        for i in 0..self.nodes {
            let pw = &self.powers[i * width..(i + 1) * width];
            q.iter_mut().for_each(|c| *c = C64::new(0.0, 0.0));
            let mut active = false;
            for c in 0..n {
                let mut acc = r * self.cv[c];
                for j in 1..=deg {
                    acc += Self::coeff(x, n, j, c) * pw[j];
                }
                z[c] = self.cp[c] + acc * pw[k];
            }
            self.cdomain.for_each_constraint(&z, &mut dz, |val, g| {
                let h = val + margin;
                if h > 0.0 {
                    penalty += h * h;
                    active = true;
                    for c in 0..n {
                        q[c] += 2.0 * h * g[c];
                    }
                }
            });
            if !active {
                continue;
            }
            // d val = 2 Re(Σ_c q_c dz_c)
            let dr = (0..n).map(|c| q[c] * self.cv[c]).sum::<C64>() * pw[k];
            grad[0] += weight * 2.0 * dr.re;
            for j in 1..=deg {
                for c in 0..n {
                    let t = q[c] * pw[k + j];
                    let base = 1 + 2 * ((j - 1) * n + c);
                    grad[base] += weight * 2.0 * t.re;
                    grad[base + 1] -= weight * 2.0 * t.im;
                }
            }
        }
        grad[0] -= 1.0;
        -r + weight * penalty
    }

    fn disc(&self, x: &[f64]) -> AnalyticDisc {
        let (n, k, deg) = (self.n, self.k, self.degree);
        let label = format!("search:{}:k={k}:N={deg}", self.domain);
        let comps: Vec<ComplexSeries> = (0..n)
            .map(|c| {
                let mut coeffs = vec![C64::new(0.0, 0.0); k + deg + 1];
                coeffs[0] = self.cp[c];
                coeffs[k] = x[0] * self.cv[c];
                for j in 1..=deg {
                    coeffs[k + j] = Self::coeff(x, n, j, c);
                }
                ComplexSeries::new(coeffs)
            })
            .collect();
        match self.family {
            DiscFamily::Affine => AnalyticDisc::from_series(label, comps),
            DiscFamily::Herglotz => {
                let p = self.target.p[0];
                let omega = comps.into_iter().next().expect("scalar target");
                let g = HoloFn::Herglotz { scale: p.norm().ln(), inner: Box::new(HoloFn::Series(omega)) };
                AnalyticDisc::new(label, vec![HoloFn::ExpOf(Box::new(g)).scaled(C64::from_polar(1.0, p.arg()))])
            }
        }
    }

    /// The disc the penalty sees: `f` itself, or `ω` for the Herglotz family.
    fn constraint_disc(&self, x: &[f64]) -> AnalyticDisc {
        match self.family {
            DiscFamily::Affine => self.disc(x),
            DiscFamily::Herglotz => {
                let (k, deg) = (self.k, self.degree);
                let mut coeffs = vec![C64::new(0.0, 0.0); k + deg + 1];
                coeffs[k] = x[0] * self.cv[0];
                for j in 1..=deg {
                    coeffs[k + j] = Self::coeff(x, 1, j, 0);
                }
                AnalyticDisc::from_series("omega", vec![ComplexSeries::new(coeffs)])
            }
        }
    }

    /// Containment of `f`; for the Herglotz family `f(D) ⊂ D∖{0}` is
    /// equivalent to `ω(D) ⊂ D`, which is what gets certified.
    fn certify_params(&self, x: &[f64], cfg: &SearchConfig) -> Option<Certified> {
        let disc = self.disc(x);
        match self.family {
            DiscFamily::Affine => certify(self.domain, self.target, disc, cfg, Some(x.to_vec())),
            DiscFamily::Herglotz => {
                let report = contains_disc(&ModelDomain::UnitDisc, &self.constraint_disc(x), &cfg.containment).ok()?;
                certify_with(report, self.target, disc, cfg, Some(x.to_vec()))
            }
        }
    }

    /// Largest `r = 2^{-j}` for which the disc `p + r ζ^k v` (all `c_j = 0`)
    /// is strictly feasible on the search grid.
    fn initial_r(&self, margin: f64) -> Option<f64> {
        let mut x = vec![0.0; self.dim()];
        let mut r = 1.0;
        for _ in 0..60 {
            x[0] = r;
            if self.max_violation_with_margin(&x, margin) == 0.0 {
                return Some(r);
            }
            r *= 0.5;
        }
        None
    }

    fn max_violation_with_margin(&self, x: &[f64], margin: f64) -> f64 {
        let mut g = vec![0.0; x.len()];
        self.objective(x, &mut g, 1.0, margin) + x[0]
    }

    /// Parameters of `f(sζ)` for a disc whose jet matches the target.
    fn params_from_disc(&self, f: &AnalyticDisc, s: f64) -> Option<Vec<f64>> {
        if self.family != DiscFamily::Affine || f.components().len() != self.n {
            return None;
        }
        let series = f.taylor(self.k + self.degree).ok()?;
        let jet = verify_jet(f, self.target).ok()?;
        if !jet.satisfied(1e-9) || jet.r.re <= 0.0 {
            return None;
        }
        let mut x = vec![0.0; self.dim()];
        x[0] = jet.r.re * s.powi(self.k as i32);
        for j in 1..=self.degree {
            for c in 0..self.n {
                let v = series[c].coeff(self.k + j) * s.powi((self.k + j) as i32);
                let base = 1 + 2 * ((j - 1) * self.n + c);
                x[base] = v.re;
                x[base + 1] = v.im;
            }
        }
        Some(x)
    }
}

struct Certified {
    r: f64,
    disc: AnalyticDisc,
    report: ContainmentReport,
    params: Option<Vec<f64>>,
}

fn certify(
    domain: &ModelDomain,
    target: &JetTarget,
    disc: AnalyticDisc,
    cfg: &SearchConfig,
    params: Option<Vec<f64>>,
) -> Option<Certified> {
    let report = contains_disc(domain, &disc, &cfg.containment).ok()?;
    certify_with(report, target, disc, cfg, params)
}

fn certify_with(
    report: ContainmentReport,
    target: &JetTarget,
    disc: AnalyticDisc,
    cfg: &SearchConfig,
    params: Option<Vec<f64>>,
) -> Option<Certified> {
    if !report.contained {
        return None;
    }
    let jet = verify_jet(&disc, target).ok()?;
    if !jet.satisfied(cfg.jet_tol) || jet.parallel_defect > cfg.jet_tol {
        return None;
    }
    Some(Certified { r: jet.r.norm(), disc, report, params })
}

/// One restart: staged penalty solves, then certification with margin
/// inflation if the grid optimum leaks between nodes.
fn run_restart(problem: &Problem, cfg: &SearchConfig, x0: Vec<f64>) -> Option<Certified> {
    let lcfg = LbfgsConfig { max_iter: cfg.iterations, ..Default::default() };
    let mut margin = cfg.search_margin;
    let mut x = x0;
    for attempt in 0..4 {
        let first_stage = if attempt == 0 { 0 } else { cfg.stages - 1 };
        for s in first_stage..cfg.stages {
            let weight = 10f64.powi(2 * (s as i32 + 1));
            let res = minimize(|y, g| problem.objective(y, g, weight, margin), &x, &lcfg);
            if res.f.is_finite() && res.x.iter().all(|v| v.is_finite()) {
                x = res.x;
            }
        }
        if x[0] > 0.0 {
            if let Some(c) = problem.certify_params(&x, cfg) {
                return Some(c);
            }
        }
        margin = (margin * 10.0).max(1e-8);
    }
    // pull the disc inwards: f(sζ)
    for s in [0.9999f64, 0.999, 0.99, 0.95] {
        let mut y = x.clone();
        y[0] *= s.powi(problem.k as i32);
        for j in 1..=problem.degree {
            let f = s.powi((problem.k + j) as i32);
            for c in 0..problem.n {
                let base = 1 + 2 * ((j - 1) * problem.n + c);
                y[base] *= f;
                y[base + 1] *= f;
            }
        }
        if y[0] > 0.0 {
            if let Some(c) = problem.certify_params(&y, cfg) {
                return Some(c);
            }
        }
    }
    None
}

fn search_inner(
    domain: &ModelDomain,
    target: &JetTarget,
    cfg: &SearchConfig,
    warm: &[AnalyticDisc],
    warm_params: Option<&[f64]>,
) -> Result<SearchOutcome, MetricError> {
    cfg.validate()?;
    if target.dim() != domain.dim() {
        return Err(MetricError::InvalidTarget(format!("target dimension {} ≠ domain dimension {}", target.dim(), domain.dim())));
    }
    target.check_interior(domain)?;
    let family = cfg.family.unwrap_or_else(|| DiscFamily::default_for(domain));
    if family == DiscFamily::Herglotz && (target.dim() != 1 || !(target.p[0].norm() > 0.0 && target.p[0].norm() < 1.0)) {
        return Err(MetricError::InvalidTarget("the Herglotz family needs a scalar base point with 0 < |p| < 1".into()));
    }
    let degree = cfg.effective_degree(target.k);
    let nodes = (8 * (target.k + degree)).clamp(256, cfg.containment.grid.max(256));
    let problem = Problem::new(domain, target, family, degree, nodes);
    let r0 = problem
        .initial_r(cfg.search_margin)
        .ok_or_else(|| MetricError::SearchFailure("no feasible constant perturbation on the search grid".into()))?;

    // starting points
    let dim = problem.dim();
    let mut starts: Vec<Vec<f64>> = Vec::with_capacity(cfg.restarts);
    let mut first = vec![0.0; dim];
    first[0] = r0;
    if let Some(p) = warm_params {
        first = p.to_vec();
        first.resize(dim, 0.0);
    } else if let Some(x) = warm.iter().find_map(|w| problem.params_from_disc(w, 0.99)) {
        first = x;
    }
    starts.push(first);
    for i in 1..cfg.restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let mut x = vec![0.0; dim];
        x[0] = r0 * rng.random_range(0.5..1.0);
        let amp = 0.1 * r0;
        for j in 1..=degree {
            for c in 0..problem.n {
                let base = 1 + 2 * ((j - 1) * problem.n + c);
                let m = amp / j as f64;
                x[base] = rng.random_range(-m..m);
                x[base + 1] = rng.random_range(-m..m);
            }
        }
        starts.push(x);
    }

    let results: Vec<Option<Certified>> = starts.into_par_iter().map(|x0| run_restart(&problem, cfg, x0)).collect();
    let restart_r: Vec<Option<f64>> = results.iter().map(|c| c.as_ref().map(|c| c.r)).collect();

    let mut best: Option<(Certified, String)> = None;
    let consider = |c: Certified, source: String, best: &mut Option<(Certified, String)>| {
        if best.as_ref().map_or(true, |(b, _)| c.r > b.r) {
            *best = Some((c, source));
        }
    };
    for (i, c) in results.into_iter().enumerate() {
        if let Some(c) = c {
            consider(c, format!("restart {i}"), &mut best);
        }
    }
    for (i, w) in warm.iter().enumerate() {
        if let Some(c) = certify(domain, target, w.clone(), cfg, None) {
            consider(c, format!("warm start {i}"), &mut best);
        }
    }
    if best.is_none() {
        let mut x = vec![0.0; dim];
        x[0] = r0;
        for _ in 0..60 {
            if let Some(c) = problem.certify_params(&x, cfg) {
                best = Some((c, "constant perturbation".into()));
                break;
            }
            x[0] *= 0.5;
        }
    }
    let (best, source) = best.ok_or_else(|| MetricError::SearchFailure("no certified disc".into()))?;
    let jet = verify_jet(&best.disc, target)?;
    let estimate = MetricEstimate {
        domain: *domain,
        p: target.p.clone(),
        v: target.v.clone(),
        k: target.k,
        value: 1.0 / best.r,
        kind: EstimateKind::Upper,
        witness: Some(WitnessRecord::from_disc(&best.disc, target.k + degree)?),
        residuals: Some(Residuals {
            base_error: jet.base_error,
            lower_jet_max: jet.lower_jet_max,
            parallel_defect: jet.parallel_defect,
            max_rho: Some(best.report.outer_max_rho()),
            verdict: Some(best.report.verdict),
        }),
        config: Some(cfg.clone()),
        seed: Some(cfg.seed),
    };
    Ok(SearchOutcome {
        estimate,
        witness: best.disc,
        family,
        degree,
        params: best.params,
        restart_r,
        source,
        containment: best.report,
    })
}

/// Certified upper bound `1/r` for `K^k_Ω(p, v)`.
///
/// `warm` discs are certified and kept as incumbents; the first one that
/// fits the search family also seeds restart 0 (pulled in to `f(0.99ζ)`).
pub fn upper_bound_search(
    domain: &ModelDomain,
    target: &JetTarget,
    cfg: &SearchConfig,
    warm: &[AnalyticDisc],
) -> Result<SearchOutcome, MetricError> {
    search_inner(domain, target, cfg, warm, None)
}

/// Runs the search at each degree, seeding each run with the previous
/// optimum; the previous witness is also kept as an incumbent, so the value
/// column never increases along increasing degrees.
pub fn degree_sweep(
    domain: &ModelDomain,
    target: &JetTarget,
    degrees: &[usize],
    cfg: &SearchConfig,
    warm: &[AnalyticDisc],
) -> Result<Vec<(SweepRow, SearchOutcome)>, MetricError> {
    if degrees.is_empty() {
        return Err(MetricError::InvalidTarget("degree list is empty".into()));
    }
    let mut rows: Vec<(SweepRow, SearchOutcome)> = Vec::with_capacity(degrees.len());
    for &deg in degrees {
        let cfg_d = SearchConfig { degree: Some(deg), ..cfg.clone() };
        let mut warm_d: Vec<AnalyticDisc> = warm.to_vec();
        let prev = rows.last().map(|(_, o)| o);
        let prev_params = prev.filter(|o| o.degree <= deg).and_then(|o| o.params.clone()).map(|mut p| {
            // re-layout [r, c_1.., c_N] for the new degree: trailing zeros
            let n = target.dim();
            p.resize(1 + 2 * n * deg, 0.0);
            p
        });
        if let Some(o) = prev {
            warm_d.push(o.witness.clone());
        }
        let out = search_inner(domain, target, &cfg_d, &warm_d, prev_params.as_deref())?;
        rows.push((SweepRow { degree: deg, value: out.estimate.value, source: out.source.clone() }, out));
    }
    Ok(rows)
}
