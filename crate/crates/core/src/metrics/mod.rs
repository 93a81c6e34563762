//! Pseudometric values: closed forms, certified witnesses and optimizer
//! upper bounds for `K^k(p, v) = inf{1/r : f(0)=p, ν(f) ≥ k, f^{(k)}(0) = k! r v}`.

mod jet;
mod lbfgs;
mod search;

pub use jet::{holomorphic_pushforward_check, verify_jet, HoloMap, JetReport, PushforwardReport};
pub use lbfgs::{minimize, LbfgsConfig, LbfgsResult};
pub use search::{degree_sweep, upper_bound_search, DiscFamily, SearchConfig, SearchOutcome, SweepRow};

use serde::{Deserialize, Serialize};

use crate::catalog::{exact_kobayashi_disc, CatalogError, ExactKobayashiParams};
use crate::domains::{contains_disc, ContainmentConfig, DomainError, ModelDomain, Verdict};
use crate::holo::{AnalyticDisc, ComplexSeries, HoloError, HoloFn, C64};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MetricError {
    #[error("invalid target: {0}")]
    InvalidTarget(String),
    #[error("search failed: {0}")]
    SearchFailure(String),
    #[error("certification failed: {0}")]
    Certification(String),
    #[error(transparent)]
    Holo(#[from] HoloError),
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

/// Base point `p`, direction `v ≠ 0` and jet order `k ≥ 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JetTarget {
    pub p: Vec<C64>,
    pub v: Vec<C64>,
    pub k: usize,
}

impl JetTarget {
    pub fn new(p: Vec<C64>, v: Vec<C64>, k: usize) -> Result<Self, MetricError> {
        if p.len() != v.len() || p.is_empty() {
            return Err(MetricError::InvalidTarget(format!("p has dimension {}, v has {}", p.len(), v.len())));
        }
        if k == 0 {
            return Err(MetricError::InvalidTarget("order k must be positive".into()));
        }
        if v.iter().all(|c| c.norm() == 0.0) {
            return Err(MetricError::InvalidTarget("direction v must be nonzero".into()));
        }
        Ok(Self { p, v, k })
    }

    pub fn dim(&self) -> usize {
        self.p.len()
    }

    pub fn v_norm(&self) -> f64 {
        self.v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn with_order(&self, k: usize) -> Self {
        Self { k, ..self.clone() }
    }

    /// Fail unless `p` lies in the interior of `domain`.
    pub fn check_interior(&self, domain: &ModelDomain) -> Result<(), MetricError> {
        if !domain.is_interior(&self.p)? {
            return Err(MetricError::InvalidTarget(format!("base point is not interior to {domain}")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimateKind {
    Upper,
    Lower,
    Exact,
}

/// Residuals attached to a certified bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    pub base_error: f64,
    pub lower_jet_max: f64,
    pub parallel_defect: f64,
    /// `max ρ∘f` on the outermost ladder radius, when a grid check was run.
    pub max_rho: Option<f64>,
    pub verdict: Option<Verdict>,
}

/// Serializable description of a witness disc.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub label: String,
    /// Taylor coefficients per component; `ζ^0` first.
    pub coefficients: Vec<Vec<C64>>,
}

impl WitnessRecord {
    pub fn from_disc(disc: &AnalyticDisc, degree: usize) -> Result<Self, MetricError> {
        Ok(Self {
            label: disc.label().to_string(),
            coefficients: disc.taylor(degree)?.into_iter().map(ComplexSeries::into_coeffs).collect(),
        })
    }
}

/// A bound on `K^k_Ω(p, v)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricEstimate {
    pub domain: ModelDomain,
    pub p: Vec<C64>,
    pub v: Vec<C64>,
    pub k: usize,
    pub value: f64,
    pub kind: EstimateKind,
    pub witness: Option<WitnessRecord>,
    pub residuals: Option<Residuals>,
    pub config: Option<SearchConfig>,
    pub seed: Option<u64>,
}

/// Poincaré metric `|v|/(1 - |ζ|²)` of the unit disc.
pub fn poincare(z: C64, v: C64) -> Result<f64, MetricError> {
    if z.norm() >= 1.0 {
        return Err(MetricError::InvalidTarget(format!("|ζ| = {} is not < 1", z.norm())));
    }
    Ok(v.norm() / (1.0 - z.norm_sqr()))
}

/// `K^k_{D*}(p, v) = |v| / (-2|p| log|p|)`, the same for every `k`.
pub fn punctured_order_k(p: C64, v: C64, k: usize) -> Result<f64, MetricError> {
    let a = p.norm();
    if !(a > 0.0 && a < 1.0) {
        return Err(MetricError::InvalidTarget(format!("punctured disc needs 0 < |p| < 1, got {a}")));
    }
    if k == 0 {
        return Err(MetricError::InvalidTarget("order k must be positive".into()));
    }
    Ok(v.norm() / (-2.0 * a * a.ln()))
}

/// `B_{-p}(uζ^k)` with `u = v/|v|`; attains the Poincaré value at every order.
pub fn unit_disc_witness(p: C64, v: C64, k: usize) -> Result<AnalyticDisc, MetricError> {
    if p.norm() >= 1.0 || v.norm() == 0.0 || k == 0 {
        return Err(MetricError::InvalidTarget("need |p| < 1, v ≠ 0, k ≥ 1".into()));
    }
    let f = HoloFn::monomial(k, v / v.norm()).then_blaschke(-p)?;
    Ok(AnalyticDisc::new(format!("unit-disc-extremal:k={k}"), vec![f]))
}

/// `e^{iα} exp(log|p| (1 + wζ^k)/(1 - wζ^k))`, `|w| = 1`, the equality case
/// on the punctured disc.
pub fn punctured_witness(p: C64, v: C64, k: usize) -> Result<AnalyticDisc, MetricError> {
    let value = punctured_order_k(p, v, k)?;
    if v.norm() == 0.0 {
        return Err(MetricError::InvalidTarget("direction v must be nonzero".into()));
    }
    let l = p.norm().ln();
    let r = 1.0 / value;
    let w = r * v / (2.0 * p * l);
    let w = w / w.norm();
    let g = HoloFn::Herglotz { scale: l, inner: Box::new(HoloFn::monomial(k, w)) };
    let f = HoloFn::ExpOf(Box::new(g)).scaled(C64::from_polar(1.0, p.arg()));
    Ok(AnalyticDisc::new(format!("punctured-extremal:k={k}"), vec![f]))
}

/// Closed-form value on the unit or punctured disc, with its witness jet checked.
pub fn closed_form_estimate(domain: &ModelDomain, target: &JetTarget) -> Result<MetricEstimate, MetricError> {
    let (p, v) = (target.p[0], target.v[0]);
    let (value, witness) = match domain {
        ModelDomain::UnitDisc if target.dim() == 1 => (poincare(p, v)?, unit_disc_witness(p, v, target.k)?),
        ModelDomain::PuncturedDisc if target.dim() == 1 => {
            (punctured_order_k(p, v, target.k)?, punctured_witness(p, v, target.k)?)
        }
        _ => return Err(MetricError::InvalidTarget(format!("no closed form for {domain}"))),
    };
    let jet = verify_jet(&witness, target)?;
    Ok(MetricEstimate {
        domain: *domain,
        p: target.p.clone(),
        v: target.v.clone(),
        k: target.k,
        value,
        kind: EstimateKind::Exact,
        witness: Some(WitnessRecord::from_disc(&witness, target.k + 8)?),
        residuals: Some(Residuals {
            base_error: jet.base_error,
            lower_jet_max: jet.lower_jet_max,
            parallel_defect: jet.parallel_defect,
            max_rho: None,
            verdict: None,
        }),
        config: None,
        seed: None,
    })
}

/// `K_Ω(z_t, X) = |a| t^{-1/4}` on the Yu domain: the upper certificate is
/// the explicit disc, the lower one is the known bound `|a|t^{-1/4} ≤ K`.
pub fn exact_kobayashi_estimate(
    params: ExactKobayashiParams,
    config: &ContainmentConfig,
) -> Result<(MetricEstimate, AnalyticDisc), MetricError> {
    let d = exact_kobayashi_disc(params)?;
    let target = params.target();
    let report = contains_disc(&ModelDomain::YuDomain, &d.disc, config)?;
    if !report.contained {
        return Err(MetricError::Certification(format!("max ρ∘f = {} on the ladder", report.outer_max_rho())));
    }
    let jet = verify_jet(&d.disc, &target)?;
    let upper = 1.0 / jet.r.norm();
    let lower = params.value();
    if !jet.satisfied(1e-9) || (upper - lower).abs() > 1e-9 * lower {
        return Err(MetricError::Certification(format!("upper {upper} and lower {lower} do not match")));
    }
    let estimate = MetricEstimate {
        domain: ModelDomain::YuDomain,
        p: target.p.clone(),
        v: target.v.clone(),
        k: 1,
        value: lower,
        kind: EstimateKind::Exact,
        witness: Some(WitnessRecord::from_disc(&d.disc, 8)?),
        residuals: Some(Residuals {
            base_error: jet.base_error,
            lower_jet_max: jet.lower_jet_max,
            parallel_defect: jet.parallel_defect,
            max_rho: Some(report.outer_max_rho()),
            verdict: Some(report.verdict),
        }),
        config: None,
        seed: None,
    };
    Ok((estimate, d.disc))
}

/// Target `(p, v, k)` on a one-dimensional domain.
pub fn scalar_target(p: C64, v: C64, k: usize) -> Result<JetTarget, MetricError> {
    JetTarget::new(vec![p], vec![v], k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::holo::c64;

    #[test]
    fn poincare_examples() {
        assert_eq!(poincare(c64(0.0, 0.0), c64(1.0, 0.0)).unwrap(), 1.0);
        assert!((poincare(c64(0.5, 0.0), c64(1.0, 0.0)).unwrap() - 4.0 / 3.0).abs() < 1e-15);
        assert_eq!(poincare(c64(0.3, 0.1), c64(0.0, 0.0)).unwrap(), 0.0);
        assert!(poincare(c64(1.0, 0.0), c64(1.0, 0.0)).is_err());
    }

    #[test]
    fn punctured_examples() {
        let p = c64((-1.0f64).exp(), 0.0);
        assert!((punctured_order_k(p, c64(1.0, 0.0), 3).unwrap() - 1f64.exp() / 2.0).abs() < 1e-15);
        assert_eq!(punctured_order_k(p, c64(0.0, 0.0), 2).unwrap(), 0.0);
        let q = c64(0.3, 0.0);
        assert_eq!(punctured_order_k(q, c64(1.0, 0.0), 1).unwrap(), punctured_order_k(q, c64(1.0, 0.0), 5).unwrap());
        assert!(punctured_order_k(c64(0.0, 0.0), c64(1.0, 0.0), 1).is_err());
    }

    #[test]
    fn witnesses_attain_closed_forms() {
        for k in 1..=4 {
            for (p, v) in [(c64(0.3, 0.0), c64(1.0, 0.0)), (c64(0.0, 0.6), c64(0.2, -0.7))] {
                let t = scalar_target(p, v, k).unwrap();
                let e = closed_form_estimate(&ModelDomain::UnitDisc, &t).unwrap();
                let w = unit_disc_witness(p, v, k).unwrap();
                let jet = verify_jet(&w, &t).unwrap();
                assert!(jet.satisfied(1e-12));
                assert!((1.0 / jet.r.norm() - e.value).abs() < 1e-12);
                let e = closed_form_estimate(&ModelDomain::PuncturedDisc, &t).unwrap();
                let w = punctured_witness(p, v, k).unwrap();
                let jet = verify_jet(&w, &t).unwrap();
                assert!(jet.satisfied(1e-12), "{jet:?}");
                assert!((1.0 / jet.r.norm() - e.value).abs() < 1e-12);
            }
        }
    }
}
