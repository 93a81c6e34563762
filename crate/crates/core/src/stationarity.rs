//! Numerical certification of k-stationarity in the `L^∞` sense.
//!
//! A boundary-attached disc `f` is k-stationary when some positive weight
//! `c` on the circle makes `ζ^k c(ζ) ∂ρ(f(ζ))` extend holomorphically. The
//! weight is searched among real trigonometric polynomials
//! `c = 1 + Σ_{1≤j≤F} (u_j cos jθ + w_j sin jθ)`; the negative-frequency
//! content of the product is linear in `(u, w)`, so the best weight is a
//! real least-squares solution. Positivity is checked afterwards.

use nalgebra::{DMatrix, DVector};
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::catalog::{ellipsoid_kind1, perturbed_kind1, CatalogError, EllipsoidKind1Params};
use crate::domains::{contains_disc, ContainmentConfig, DomainError, ModelDomain, Verdict};
use crate::holo::{AnalyticDisc, BoundaryGrid, Disc, HoloError, C64};

/// Residual below which the weight is accepted.
pub const RESIDUAL_TOL: f64 = 1e-8;
/// Minimum of `c` required for a positive weight.
pub const POSITIVITY_TOL: f64 = 1e-6;
/// Ellipsoid points with `|f₂|` below this are dropped from the trace.
pub const SINGULAR_FLOOR: f64 = 1e-8;
/// Largest fraction of dropped points before the trace counts as singular.
const MAX_EXCLUDED_FRACTION: f64 = 0.01;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StationarityError {
    #[error("disc is not attached to the boundary (verdict {0:?})")]
    NotAttached(Verdict),
    #[error("gradient of the defining function is singular on {excluded} of {grid} boundary points")]
    Singular { excluded: usize, grid: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Holo(#[from] HoloError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StationarityVerdict {
    Stationary,
    /// The residual is small but the best weight is not positive.
    NonStationaryWeight,
    NonStationary,
}

/// Samples of `ζ^k ∂ρ(f(ζ))` on `M` equispaced boundary points.
#[derive(Debug, Clone, PartialEq)]
pub struct CovectorTrace {
    pub k: usize,
    /// `values[i][j]`: component `i` at node `j`; dropped nodes hold 0.
    pub values: Vec<Vec<C64>>,
    pub excluded: usize,
}

impl CovectorTrace {
    pub fn grid(&self) -> usize {
        self.values.first().map_or(0, Vec::len)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StationarityReport {
    pub k: usize,
    pub grid: usize,
    pub cutoff: usize,
    /// `ℓ²` norm of the negative-frequency coefficients with `c ≡ 1`.
    pub initial_residual: f64,
    /// Same norm at the optimal weight.
    pub residual: f64,
    /// `min c` on the grid.
    pub positivity_margin: f64,
    /// Cosine then sine coefficients of `c - 1`.
    pub coefficients: Vec<f64>,
    /// `c` at the grid nodes; its mean is 1.
    pub weight: Vec<f64>,
    pub excluded: usize,
    pub verdict: StationarityVerdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StationarityConfig {
    /// Boundary samples; a power of two.
    pub grid: usize,
    /// Frequency cutoff `F`; defaults to `2k·max(1, Blaschke degree) + 8`.
    pub cutoff: Option<usize>,
    pub containment: ContainmentConfig,
}

impl Default for StationarityConfig {
    fn default() -> Self {
        Self { grid: 4096, cutoff: None, containment: ContainmentConfig::default() }
    }
}

impl StationarityConfig {
    pub fn default_cutoff(k: usize, blaschke_degree: usize) -> usize {
        2 * k * blaschke_degree.max(1) + 8
    }
}

/// `ζ ↦ ζ^k ∂ρ(f(ζ))` sampled on the unit circle, for a disc certified as
/// attached.
pub fn boundary_covector(
    domain: &ModelDomain,
    f: &AnalyticDisc,
    k: usize,
    grid: usize,
    containment: &ContainmentConfig,
) -> Result<CovectorTrace, StationarityError> {
    if k == 0 {
        return Err(StationarityError::InvalidParameter("k must be at least 1".into()));
    }
    if grid < 16 || !grid.is_power_of_two() {
        return Err(StationarityError::InvalidParameter(format!("grid size {grid} must be a power of two >= 16")));
    }
    let report = contains_disc(domain, f, containment)?;
    if report.verdict != Verdict::Attached {
        return Err(StationarityError::NotAttached(report.verdict));
    }
    let n = domain.dim();
    let mut values = vec![vec![C64::new(0.0, 0.0); grid]; n];
    let mut excluded = 0;
    for (j, z) in BoundaryGrid::nodes(grid, 1.0).into_iter().enumerate() {
        let w = f.eval(z)?;
        if matches!(domain, ModelDomain::Ellipsoid { .. }) && w[1].norm() < SINGULAR_FLOOR {
            excluded += 1;
            continue;
        }
        let g = domain.grad_rho(&w)?;
        let zk = z.powu(k as u32);
        for (i, gi) in g.into_iter().enumerate() {
            values[i][j] = zk * gi;
        }
    }
    if excluded as f64 > MAX_EXCLUDED_FRACTION * grid as f64 {
        return Err(StationarityError::Singular { excluded, grid });
    }
    Ok(CovectorTrace { k, values, excluded })
}

/// Least-squares weight minimizing the negative-frequency content of
/// `c · trace`, over frequencies `-M/4 ≤ n ≤ -1`.
pub fn solve_weight(trace: &CovectorTrace, cutoff: usize) -> Result<StationarityReport, StationarityError> {
    let m = trace.grid();
    if m < 16 || !m.is_power_of_two() {
        return Err(StationarityError::InvalidParameter(format!("trace length {m} must be a power of two >= 16")));
    }
    if 4 * cutoff >= m {
        return Err(StationarityError::InvalidParameter(format!("cutoff {cutoff} too large for grid {m}")));
    }
    let fft = FftPlanner::new().plan_fft_forward(m);
    let spectra: Vec<Vec<C64>> = trace
        .values
        .iter()
        .map(|v| {
            let mut buf = v.clone();
            fft.process(&mut buf);
            buf.iter().map(|c| c / m as f64).collect()
        })
        .collect();
    let coeff = |s: &[C64], n: i64| s[n.rem_euclid(m as i64) as usize];
    let band = (m / 4) as i64;
    let rows = 2 * trace.values.len() * band as usize;
    let cols = 2 * cutoff;
    let mut a = DMatrix::<f64>::zeros(rows, cols);
    let mut b = DVector::<f64>::zeros(rows);
    let mut row = 0;
    for s in &spectra {
        for n in -band..0 {
            let base = coeff(s, n);
            b[row] = -base.re;
            b[row + 1] = -base.im;
            for j in 1..=cutoff as i64 {
                let (lo, hi) = (coeff(s, n - j), coeff(s, n + j));
                // cos jθ ↦ (t̂(n-j) + t̂(n+j))/2, sin jθ ↦ (t̂(n-j) - t̂(n+j))/(2i)
                let cos = (lo + hi) * 0.5;
                let sin = (lo - hi) * C64::new(0.0, -0.5);
                let c = (j - 1) as usize;
                a[(row, c)] = cos.re;
                a[(row + 1, c)] = cos.im;
                a[(row, cutoff + c)] = sin.re;
                a[(row + 1, cutoff + c)] = sin.im;
            }
            row += 2;
        }
    }
    let initial_residual = b.norm();
    let x = if cols == 0 {
        DVector::zeros(0)
    } else {
        least_squares(&a, &b)?
    };
    let residual = (&a * &x - &b).norm();
    let weight: Vec<f64> = (0..m)
        .map(|t| {
            let theta = std::f64::consts::TAU * t as f64 / m as f64;
            1.0 + (1..=cutoff).map(|j| x[j - 1] * (j as f64 * theta).cos() + x[cutoff + j - 1] * (j as f64 * theta).sin()).sum::<f64>()
        })
        .collect();
    let positivity_margin = weight.iter().copied().fold(f64::INFINITY, f64::min);
    let verdict = match (residual < RESIDUAL_TOL, positivity_margin > POSITIVITY_TOL) {
        (true, true) => StationarityVerdict::Stationary,
        (true, false) => StationarityVerdict::NonStationaryWeight,
        (false, _) => StationarityVerdict::NonStationary,
    };
    Ok(StationarityReport {
        k: trace.k,
        grid: m,
        cutoff,
        initial_residual,
        residual,
        positivity_margin,
        coefficients: x.iter().copied().collect(),
        weight,
        excluded: trace.excluded,
        verdict,
    })
}

/// Rank-revealing least squares: column equilibration, column-pivoted QR,
/// then the basic solution on the numerically independent columns. High
/// weight modes see only the tail of the trace spectrum, so the raw
/// columns span many orders of magnitude.
fn least_squares(a: &DMatrix<f64>, b: &DVector<f64>) -> Result<DVector<f64>, StationarityError> {
    let n = a.ncols();
    let scale: Vec<f64> = a.column_iter().map(|c| c.norm()).map(|v| if v > 0.0 { 1.0 / v } else { 0.0 }).collect();
    let mut scaled = a.clone();
    for (j, mut col) in scaled.column_iter_mut().enumerate() {
        col *= scale[j];
    }
    let qr = scaled.col_piv_qr();
    let r = qr.r();
    let qtb = qr.q().transpose() * b;
    let r00 = r[(0, 0)].abs();
    let rank = (0..n.min(r.nrows())).take_while(|&i| r[(i, i)].abs() > 1e-12 * r00).count();
    let mut y = DVector::<f64>::zeros(n);
    if rank > 0 {
        let head = r.view((0, 0), (rank, rank)).upper_triangle();
        let sol = head
            .solve_upper_triangular(&qtb.rows(0, rank).into_owned())
            .ok_or_else(|| StationarityError::InvalidParameter("least-squares solve failed".into()))?;
        y.rows_mut(0, rank).copy_from(&sol);
    }
    qr.p().inv_permute_rows(&mut y);
    Ok(DVector::from_iterator(n, y.iter().zip(&scale).map(|(v, s)| v * s)))
}

/// Trace plus weight solve for an arbitrary attached disc.
pub fn check_stationary(
    domain: &ModelDomain,
    f: &AnalyticDisc,
    k: usize,
    blaschke_degree: usize,
    cfg: &StationarityConfig,
) -> Result<StationarityReport, StationarityError> {
    let trace = boundary_covector(domain, f, k, cfg.grid, &cfg.containment)?;
    solve_weight(&trace, cfg.cutoff.unwrap_or_else(|| StationarityConfig::default_cutoff(k, blaschke_degree)))
}

/// k-stationarity of `f(ζ^k)` for a first-family ellipsoid map `f`.
pub fn verify_k_stationary(params: &EllipsoidKind1Params, k: usize) -> Result<StationarityReport, StationarityError> {
    verify_k_stationary_with(params, k, false, &StationarityConfig::default())
}

/// As [`verify_k_stationary`]; `perturbed` swaps in the negative control.
pub fn verify_k_stationary_with(
    params: &EllipsoidKind1Params,
    k: usize,
    perturbed: bool,
    cfg: &StationarityConfig,
) -> Result<StationarityReport, StationarityError> {
    if k == 0 {
        return Err(StationarityError::InvalidParameter("k must be at least 1".into()));
    }
    let f = if perturbed { perturbed_kind1(params)? } else { ellipsoid_kind1(params)? };
    let domain = ModelDomain::ellipsoid(params.m)?;
    let degree = if perturbed { 2 + params.r2 as usize } else { params.blaschke_degree() };
    check_stationary(&domain, &f.compose_power(k), k, degree, cfg)
}
