use serde::{Deserialize, Serialize};

use super::{JetTarget, MetricError};
use crate::catalog::automorphism_disc;
use crate::domains::{contains_disc, ContainmentConfig, ContainmentReport, ModelDomain};
use crate::holo::{blaschke, blaschke_derivative, factorial, AnalyticDisc, HoloFn, C64};

/// Jet residuals of a disc against `(p, v, k)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JetReport {
    pub k: usize,
    /// `|f(0) - p|` (max norm)
    pub base_error: f64,
    /// `max_{1 ≤ ℓ < k} |f^{(ℓ)}(0)|`
    pub lower_jet_max: f64,
    /// Least-squares `r` in `f^{(k)}(0) ≈ k! r v`.
    pub r: C64,
    /// `|f^{(k)}(0)/k! - r v|`
    pub parallel_defect: f64,
}

impl JetReport {
    /// Jet conditions hold to `tol` with a nonzero coefficient.
    pub fn satisfied(&self, tol: f64) -> bool {
        self.base_error <= tol
            && self.lower_jet_max <= tol
            && self.parallel_defect <= tol * self.r.norm().max(1.0)
            && self.r.norm() > tol
    }

    /// `|r|`; the phase can be absorbed by a rotation `ζ ↦ e^{iθ}ζ`.
    pub fn coefficient(&self) -> f64 {
        self.r.norm()
    }
}

pub fn verify_jet(f: &AnalyticDisc, target: &JetTarget) -> Result<JetReport, MetricError> {
    if f.components().len() != target.dim() {
        return Err(MetricError::InvalidTarget(format!(
            "disc has dimension {}, target {}",
            f.components().len(),
            target.dim()
        )));
    }
    let k = target.k;
    let series = f.taylor(k)?;
    let base_error = series.iter().zip(&target.p).map(|(s, p)| (s.coeff(0) - p).norm()).fold(0.0, f64::max);
    let lower_jet_max = (1..k)
        .flat_map(|l| series.iter().map(move |s| s.coeff(l).norm() * factorial(l)))
        .fold(0.0, f64::max);
    let w: Vec<C64> = series.iter().map(|s| s.coeff(k)).collect();
    let vv: f64 = target.v.iter().map(|c| c.norm_sqr()).sum();
    let r = w.iter().zip(&target.v).map(|(a, b)| a * b.conj()).sum::<C64>() / vv;
    let parallel_defect = w.iter().zip(&target.v).map(|(a, b)| (a - r * b).norm_sqr()).sum::<f64>().sqrt();
    Ok(JetReport { k, base_error, lower_jet_max, r, parallel_defect })
}

/// Holomorphic maps with known differentials.
#[derive(Debug, Clone, PartialEq)]
pub enum HoloMap {
    Identity { dim: usize },
    /// Rows are output coordinates.
    Linear { matrix: Vec<Vec<C64>> },
    /// `F_{a,θ}` on `E(1,m)`.
    EllipsoidAutomorphism { a: C64, theta: f64, m: f64 },
}

impl HoloMap {
    /// `z ↦ (z_{i})_{i ∈ indices}`
    pub fn projection(dim_in: usize, indices: &[usize]) -> Self {
        let matrix = indices
            .iter()
            .map(|&i| (0..dim_in).map(|j| C64::new((i == j) as u8 as f64, 0.0)).collect())
            .collect();
        HoloMap::Linear { matrix }
    }

    /// Places coordinate `j` of the input at position `slots[j]` of `C^{dim_out}`.
    pub fn embedding(dim_out: usize, slots: &[usize]) -> Self {
        let matrix = (0..dim_out)
            .map(|i| slots.iter().map(|&s| C64::new((s == i) as u8 as f64, 0.0)).collect())
            .collect();
        HoloMap::Linear { matrix }
    }

    pub fn dim_in(&self) -> usize {
        match self {
            HoloMap::Identity { dim } => *dim,
            HoloMap::Linear { matrix } => matrix.first().map_or(0, |r| r.len()),
            HoloMap::EllipsoidAutomorphism { .. } => 2,
        }
    }

    pub fn dim_out(&self) -> usize {
        match self {
            HoloMap::Identity { dim } => *dim,
            HoloMap::Linear { matrix } => matrix.len(),
            HoloMap::EllipsoidAutomorphism { .. } => 2,
        }
    }

    fn check(&self, z: &[C64]) -> Result<(), MetricError> {
        if z.len() != self.dim_in() {
            return Err(MetricError::InvalidTarget(format!("map expects dimension {}, got {}", self.dim_in(), z.len())));
        }
        Ok(())
    }

    pub fn apply(&self, z: &[C64]) -> Result<Vec<C64>, MetricError> {
        self.check(z)?;
        Ok(match self {
            HoloMap::Identity { .. } => z.to_vec(),
            HoloMap::Linear { matrix } => matrix.iter().map(|row| row.iter().zip(z).map(|(a, b)| a * b).sum()).collect(),
            HoloMap::EllipsoidAutomorphism { a, theta, m } => {
                crate::catalog::ellipsoid_automorphism(*a, *theta, *m, [z[0], z[1]])?.to_vec()
            }
        })
    }

    /// `dF_p(v)`.
    pub fn differential(&self, p: &[C64], v: &[C64]) -> Result<Vec<C64>, MetricError> {
        self.check(p)?;
        self.check(v)?;
        Ok(match self {
            HoloMap::Identity { .. } | HoloMap::Linear { .. } => self.apply(v)?,
            HoloMap::EllipsoidAutomorphism { a, theta, m } => {
                let d = 1.0 - a.conj() * p[0];
                let c = C64::from_polar((1.0 - a.norm_sqr()).powf(0.5 / m), *theta);
                let e = -1.0 / m;
                let dw1 = blaschke_derivative(*a, p[0]) * v[0];
                let dw2 = c * (d.powf(e) * v[1] + p[1] * (-e) * a.conj() * d.powf(e - 1.0) * v[0]);
                vec![dw1, dw2]
            }
        })
    }

    /// `F ∘ f` as a closed-form disc.
    pub fn push_disc(&self, f: &AnalyticDisc) -> Result<AnalyticDisc, MetricError> {
        if f.components().len() != self.dim_in() {
            return Err(MetricError::InvalidTarget("disc and map dimensions differ".into()));
        }
        Ok(match self {
            HoloMap::Identity { .. } => f.clone(),
            HoloMap::Linear { matrix } => {
                let comps = matrix
                    .iter()
                    .map(|row| {
                        HoloFn::Sum(
                            row.iter()
                                .zip(f.components())
                                .filter(|(a, _)| a.norm() != 0.0)
                                .map(|(a, c)| c.clone().scaled(*a))
                                .collect(),
                        )
                    })
                    .collect();
                AnalyticDisc::new(format!("L∘{}", f.label()), comps)
            }
            HoloMap::EllipsoidAutomorphism { a, theta, m } => {
                blaschke(*a, C64::new(0.0, 0.0))?;
                automorphism_disc(*a, *theta, *m, f)?
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PushforwardReport {
    /// `max |(F∘f)^{(k)}(0) - dF_p(f^{(k)}(0))|`
    pub jet_identity_error: f64,
    /// `F(p)`, `dF_p(v)` and `k`; `None` when `dF_p(v) = 0`.
    pub pushed_target: Option<JetTarget>,
    pub pushed_jet: Option<JetReport>,
    pub original_r: C64,
    pub containment: Option<ContainmentReport>,
    pub passes: bool,
}

/// Chain-rule check `(F∘f)^{(k)}(0) = dF_p(f^{(k)}(0))` for `ν(f - p) ≥ k`,
/// and, if a codomain is given, that `F∘f` certifies
/// `K^k_{Ω'}(F(p), dF_p(v)) ≤ 1/r`.
pub fn holomorphic_pushforward_check(
    map: &HoloMap,
    f: &AnalyticDisc,
    target: &JetTarget,
    codomain: Option<(&ModelDomain, &ContainmentConfig)>,
) -> Result<PushforwardReport, MetricError> {
    const TOL: f64 = 1e-9;
    let k = target.k;
    let original = verify_jet(f, target)?;
    let pushed = map.push_disc(f)?;
    let fk = f.jet(k)?;
    let expect = map.differential(&target.p, &fk)?;
    let got = pushed.jet(k)?;
    let scale = expect.iter().map(|c| c.norm()).fold(1.0, f64::max);
    let jet_identity_error = got.iter().zip(&expect).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    let fp = map.apply(&target.p)?;
    let dv = map.differential(&target.p, &target.v)?;
    let pushed_target = JetTarget::new(fp, dv, k).ok();
    let pushed_jet = pushed_target.as_ref().map(|t| verify_jet(&pushed, t)).transpose()?;
    let containment = codomain.map(|(d, c)| contains_disc(d, &pushed, c)).transpose()?;
    let mut passes = jet_identity_error <= TOL * scale && original.satisfied(TOL);
    if let Some(j) = &pushed_jet {
        passes &= j.satisfied(TOL) && (j.r - original.r).norm() <= TOL * original.r.norm().max(1.0);
    }
    if let Some(c) = &containment {
        passes &= c.contained || c.attached;
    }
    Ok(PushforwardReport { jet_identity_error, pushed_target, pushed_jet, original_r: original.r, containment, passes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::holo::{c64, ComplexSeries};

    #[test]
    fn defect_flagged_for_wrong_order() {
        let f = AnalyticDisc::new("z2", vec![HoloFn::monomial(2, c64(1.0, 0.0))]);
        let t = JetTarget::new(vec![c64(0.0, 0.0)], vec![c64(1.0, 0.0)], 1).unwrap();
        let rep = verify_jet(&f, &t).unwrap();
        assert_eq!(rep.r, c64(0.0, 0.0));
        assert!(!rep.satisfied(1e-9));
    }

    #[test]
    fn compose_power_keeps_r() {
        let f = AnalyticDisc::from_series("lin", vec![ComplexSeries::new(vec![c64(0.1, 0.0), c64(0.5, 0.2)])]);
        let t = JetTarget::new(vec![c64(0.1, 0.0)], vec![c64(1.0, 0.0)], 1).unwrap();
        let r1 = verify_jet(&f, &t).unwrap().r;
        let r3 = verify_jet(&f.compose_power(3), &t.with_order(3)).unwrap().r;
        assert!((r1 - r3).norm() < 1e-15);
    }

    #[test]
    fn automorphism_differential_matches_finite_differences() {
        let map = HoloMap::EllipsoidAutomorphism { a: c64(0.3, -0.2), theta: 0.7, m: 0.35 };
        let p = [c64(0.1, 0.2), c64(0.3, 0.1)];
        let v = [c64(0.4, -0.1), c64(-0.2, 0.5)];
        let h = 1e-6;
        let plus: Vec<C64> = p.iter().zip(&v).map(|(a, b)| a + h * b).collect();
        let minus: Vec<C64> = p.iter().zip(&v).map(|(a, b)| a - h * b).collect();
        let (fp, fm) = (map.apply(&plus).unwrap(), map.apply(&minus).unwrap());
        let dv = map.differential(&p, &v).unwrap();
        for i in 0..2 {
            let fd = (fp[i] - fm[i]) / (2.0 * h);
            assert!((fd - dv[i]).norm() < 1e-8);
        }
    }

    #[test]
    fn projection_pushes_jets_exactly() {
        let f = AnalyticDisc::from_series("poly", vec![
            ComplexSeries::from_real(&[0.0, 0.0, 0.0, 1.0]),
            ComplexSeries::from_real(&[0.0, 0.0, 2.0, 0.5]),
            ComplexSeries::from_real(&[-1.0, 0.0, 0.0, 0.25]),
        ]);
        let t = JetTarget::new(vec![c64(0.0, 0.0), c64(0.0, 0.0), c64(-1.0, 0.0)], vec![c64(1.0, 0.0), c64(0.5, 0.0), c64(0.25, 0.0)], 3)
            .unwrap_or_else(|_| unreachable!());
        let map = HoloMap::projection(3, &[0]);
        let pushed = map.push_disc(&f).unwrap();
        assert_eq!(pushed.jet(3).unwrap()[0], f.jet(3).unwrap()[0]);
        let _ = t;
    }
}
