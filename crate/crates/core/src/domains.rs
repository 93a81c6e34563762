//! Model domains `{ρ < 0}` and grid certification of disc containment.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::holo::{BoundaryGrid, Disc, HoloError, C64};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DomainError {
    #[error("dimension mismatch: domain has dimension {expected}, point has {got}")]
    Dimension { expected: usize, got: usize },
    #[error("gradient of the defining function is singular at {0:?}")]
    Singular(Vec<C64>),
    #[error("invalid domain parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Holo(#[from] HoloError),
}

/// Defining-function models. Interior is `ρ < 0`; the punctured disc also
/// excludes the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum ModelDomain {
    /// `|z|² - 1`
    UnitDisc,
    /// `|z|² - 1` on `D \ {0}`
    PuncturedDisc,
    /// `max_j |z_j|² - 1`
    Polydisc { dim: usize },
    /// `Re z₃ + |z₁² - z₂³|²`
    YuDomain,
    /// `|z₁|² + |z₂|^{2m} - 1`, `0 < m < 1`
    Ellipsoid { m: f64 },
    /// `-Im z`
    HalfPlane,
}

impl ModelDomain {
    pub fn ellipsoid(m: f64) -> Result<Self, DomainError> {
        if !(m > 0.0 && m < 1.0) {
            return Err(DomainError::InvalidParameter(format!("ellipsoid exponent m = {m} must lie in (0, 1)")));
        }
        Ok(ModelDomain::Ellipsoid { m })
    }

    pub fn polydisc(dim: usize) -> Result<Self, DomainError> {
        if dim == 0 {
            return Err(DomainError::InvalidParameter("polydisc dimension must be positive".into()));
        }
        Ok(ModelDomain::Polydisc { dim })
    }

    pub fn dim(&self) -> usize {
        match self {
            ModelDomain::UnitDisc | ModelDomain::PuncturedDisc | ModelDomain::HalfPlane => 1,
            ModelDomain::Polydisc { dim } => *dim,
            ModelDomain::YuDomain => 3,
            ModelDomain::Ellipsoid { .. } => 2,
        }
    }

    /// Stable identifier used in reports and on the command line.
    pub fn id(&self) -> String {
        match self {
            ModelDomain::UnitDisc => "unit_disc".into(),
            ModelDomain::PuncturedDisc => "punctured_disc".into(),
            ModelDomain::Polydisc { dim: 2 } => "polydisc".into(),
            ModelDomain::Polydisc { dim } => format!("polydisc:{dim}"),
            ModelDomain::YuDomain => "yu_domain".into(),
            ModelDomain::Ellipsoid { m } => format!("ellipsoid:{m}"),
            ModelDomain::HalfPlane => "half_plane".into(),
        }
    }

    /// `E(1,m)` fails to be convex for `m < 1/2`.
    pub fn is_nonconvex(&self) -> bool {
        matches!(self, ModelDomain::Ellipsoid { m } if *m < 0.5)
    }

    fn check_dim(&self, z: &[C64]) -> Result<(), DomainError> {
        if z.len() != self.dim() {
            return Err(DomainError::Dimension { expected: self.dim(), got: z.len() });
        }
        Ok(())
    }

    pub fn rho(&self, z: &[C64]) -> Result<f64, DomainError> {
        self.check_dim(z)?;
        Ok(self.rho_unchecked(z))
    }

    fn rho_unchecked(&self, z: &[C64]) -> f64 {
        match self {
            ModelDomain::UnitDisc | ModelDomain::PuncturedDisc => z[0].norm_sqr() - 1.0,
            ModelDomain::Polydisc { .. } => z.iter().map(|w| w.norm_sqr()).fold(f64::NEG_INFINITY, f64::max) - 1.0,
            ModelDomain::YuDomain => z[2].re + (z[0] * z[0] - z[1] * z[1] * z[1]).norm_sqr(),
            ModelDomain::Ellipsoid { m } => z[0].norm_sqr() + z[1].norm_sqr().powf(*m) - 1.0,
            ModelDomain::HalfPlane => -z[0].im,
        }
    }

    /// `∂ρ = (∂ρ/∂z_1, …, ∂ρ/∂z_n)`.
    ///
    /// On the polydisc this is the gradient of the first maximal factor.
    pub fn grad_rho(&self, z: &[C64]) -> Result<Vec<C64>, DomainError> {
        self.check_dim(z)?;
        let zero = C64::new(0.0, 0.0);
        Ok(match self {
            ModelDomain::UnitDisc | ModelDomain::PuncturedDisc => vec![z[0].conj()],
            ModelDomain::Polydisc { .. } => {
                let mut best = 0;
                for j in 1..z.len() {
                    if z[j].norm_sqr() > z[best].norm_sqr() {
                        best = j;
                    }
                }
                let mut g = vec![zero; z.len()];
                g[best] = z[best].conj();
                g
            }
            ModelDomain::YuDomain => {
                let w = (z[0] * z[0] - z[1] * z[1] * z[1]).conj();
                vec![2.0 * z[0] * w, -3.0 * z[1] * z[1] * w, C64::new(0.5, 0.0)]
            }
            ModelDomain::Ellipsoid { m } => {
                let s = z[1].norm_sqr();
                if s == 0.0 {
                    return Err(DomainError::Singular(z.to_vec()));
                }
                vec![z[0].conj(), *m * s.powf(*m - 1.0) * z[1].conj()]
            }
            ModelDomain::HalfPlane => vec![C64::new(0.0, 0.5)],
        })
    }

    pub fn is_interior(&self, z: &[C64]) -> Result<bool, DomainError> {
        let inside = self.rho(z)? < 0.0;
        Ok(inside && !(matches!(self, ModelDomain::PuncturedDisc) && z[0].norm() == 0.0))
    }

    /// Smooth constraint pieces `g ≤ 0` whose maximum is `ρ`, each with its
    /// complex gradient written into `grad` before `sink` is called.
    ///
    /// Used by the optimizer: the polydisc splits into one constraint per
    /// factor, and the ellipsoid gradient at `z₂ = 0` is replaced by the
    /// subgradient with zero second entry.
    pub fn for_each_constraint(&self, z: &[C64], grad: &mut [C64], mut sink: impl FnMut(f64, &[C64])) {
        let zero = C64::new(0.0, 0.0);
        match self {
            ModelDomain::Polydisc { .. } => {
                for j in 0..z.len() {
                    grad.iter_mut().for_each(|g| *g = zero);
                    grad[j] = z[j].conj();
                    sink(z[j].norm_sqr() - 1.0, grad);
                }
            }
            ModelDomain::Ellipsoid { m } => {
                let s = z[1].norm_sqr();
                grad[0] = z[0].conj();
                grad[1] = if s == 0.0 { zero } else { *m * s.powf(*m - 1.0) * z[1].conj() };
                sink(self.rho_unchecked(z), grad);
            }
            _ => {
                let g = self.grad_rho(z).expect("dimension checked by caller");
                grad.copy_from_slice(&g);
                sink(self.rho_unchecked(z), grad);
            }
        }
    }
}

impl fmt::Display for ModelDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

impl FromStr for ModelDomain {
    type Err = DomainError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        let bad = || DomainError::InvalidParameter(format!("unknown domain id '{s}'"));
        match (head, arg) {
            ("unit_disc", None) => Ok(ModelDomain::UnitDisc),
            ("punctured_disc", None) => Ok(ModelDomain::PuncturedDisc),
            ("yu_domain", None) => Ok(ModelDomain::YuDomain),
            ("half_plane", None) => Ok(ModelDomain::HalfPlane),
            ("polydisc", None) => ModelDomain::polydisc(2),
            ("polydisc", Some(n)) => ModelDomain::polydisc(n.trim().parse().map_err(|_| bad())?),
            ("ellipsoid", Some(m)) => ModelDomain::ellipsoid(m.trim().parse().map_err(|_| bad())?),
            _ => Err(bad()),
        }
    }
}

impl TryFrom<String> for ModelDomain {
    type Error = DomainError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<ModelDomain> for String {
    fn from(d: ModelDomain) -> String {
        d.id()
    }
}

/// Lattice parameters for containment checks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContainmentConfig {
    /// Points per circle; a power of two.
    pub grid: usize,
    /// Interior check radii, increasing.
    pub ladder: Vec<f64>,
    /// Required slack: contained means `ρ∘f < -margin` on every ladder radius.
    pub margin: f64,
    /// Tolerance for `|ρ∘f| ≈ 0` on the unit circle.
    pub attach_tol: f64,
    /// Also try the unit circle itself (failures there are not errors).
    pub boundary: bool,
    /// Punctured disc: minimum admissible `|f|` on the lattice.
    pub zero_floor: f64,
}

impl Default for ContainmentConfig {
    fn default() -> Self {
        Self { grid: 4096, ladder: vec![0.9, 0.99, 0.999], margin: 1e-9, attach_tol: 1e-9, boundary: true, zero_floor: 1e-9 }
    }
}

impl ContainmentConfig {
    pub fn with_grid(mut self, grid: usize) -> Self {
        self.grid = grid;
        self
    }

    pub fn validate(&self) -> Result<(), DomainError> {
        if self.grid < 8 || !self.grid.is_power_of_two() {
            return Err(DomainError::InvalidParameter(format!("grid size {} must be a power of two >= 8", self.grid)));
        }
        if self.ladder.is_empty() || self.ladder.iter().any(|r| !(*r > 0.0 && *r <= 1.0)) {
            return Err(DomainError::InvalidParameter("radius ladder must be non-empty with radii in (0, 1]".into()));
        }
        if self.ladder.windows(2).any(|w| w[0] >= w[1]) {
            return Err(DomainError::InvalidParameter("radius ladder must be strictly increasing".into()));
        }
        if !(self.margin >= 0.0 && self.attach_tol >= 0.0 && self.zero_floor >= 0.0) {
            return Err(DomainError::InvalidParameter("tolerances must be non-negative".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Contained,
    Attached,
    Violated,
}

/// Statistics of `ρ∘f` on one circle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadiusStat {
    pub radius: f64,
    pub max_rho: f64,
    pub min_rho: f64,
    /// `min |f|` (first component), recorded on the punctured disc only.
    pub min_modulus: Option<f64>,
    /// Winding number of `f` around 0, recorded on the punctured disc only.
    pub winding: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContainmentReport {
    /// Supremum of `ρ∘f` over every evaluated circle, boundary included.
    pub max_rho: f64,
    pub margin: f64,
    pub ladder: Vec<RadiusStat>,
    /// Unit-circle statistics, `None` if the disc could not be evaluated there.
    pub boundary: Option<RadiusStat>,
    pub contained: bool,
    pub attached: bool,
    pub verdict: Verdict,
}

impl ContainmentReport {
    /// `max ρ∘f` on the outermost ladder radius.
    pub fn outer_max_rho(&self) -> f64 {
        self.ladder.last().map_or(f64::NAN, |s| s.max_rho)
    }

    pub fn stat_at(&self, radius: f64) -> Option<&RadiusStat> {
        self.ladder.iter().chain(self.boundary.iter()).find(|s| s.radius == radius)
    }
}

fn circle_stat(domain: &ModelDomain, f: &dyn Disc, grid: usize, radius: f64) -> Result<RadiusStat, DomainError> {
    let nodes = BoundaryGrid::nodes(grid, radius);
    let values = nodes
        .par_iter()
        .map(|&z| -> Result<(f64, C64), DomainError> {
            let w = f.eval(z)?;
            Ok((domain.rho(&w)?, w[0]))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let max_rho = values.iter().map(|v| v.0).fold(f64::NEG_INFINITY, f64::max);
    let min_rho = values.iter().map(|v| v.0).fold(f64::INFINITY, f64::min);
    let (min_modulus, winding) = if matches!(domain, ModelDomain::PuncturedDisc) {
        let min_mod = values.iter().map(|v| v.1.norm()).fold(f64::INFINITY, f64::min);
        let total: f64 = (0..grid).map(|j| (values[(j + 1) % grid].1 / values[j].1).arg()).sum();
        let winding = if min_mod > 0.0 { (total / TAU).round() as i64 } else { 0 };
        (Some(min_mod), Some(winding))
    } else {
        (None, None)
    };
    Ok(RadiusStat { radius, max_rho, min_rho, min_modulus, winding })
}

/// Certify `f(D) ⊂ Ω` on the radius ladder and, when possible, attachment
/// `f(∂D) ⊂ ∂Ω` on the unit circle.
///
/// For plurisubharmonic `ρ` the maximum of `ρ∘f` over `|ζ| ≤ r` is attained
/// on `|ζ| = r`, so circle maxima certify the enclosed disc.
pub fn contains_disc(domain: &ModelDomain, f: &dyn Disc, config: &ContainmentConfig) -> Result<ContainmentReport, DomainError> {
    config.validate()?;
    if f.dim() != domain.dim() {
        return Err(DomainError::Dimension { expected: domain.dim(), got: f.dim() });
    }
    let ladder = config
        .ladder
        .iter()
        .map(|&r| circle_stat(domain, f, config.grid, r))
        .collect::<Result<Vec<_>, _>>()?;
    let boundary = if config.boundary && *config.ladder.last().unwrap() < 1.0 {
        circle_stat(domain, f, config.grid, 1.0).ok().filter(|s| s.max_rho.is_finite())
    } else {
        None
    };
    let punctured_ok = |s: &RadiusStat| match (s.min_modulus, s.winding) {
        (Some(m), Some(w)) => m > config.zero_floor && w == 0,
        _ => true,
    };
    let contained = ladder.iter().all(|s| s.max_rho < -config.margin && punctured_ok(s));
    let attached = match &boundary {
        Some(b) => {
            ladder.iter().all(|s| s.max_rho <= config.attach_tol && punctured_ok(s))
                && b.max_rho <= config.attach_tol
                && b.min_rho >= -config.attach_tol
        }
        None => false,
    };
    let max_rho = ladder.iter().chain(boundary.iter()).map(|s| s.max_rho).fold(f64::NEG_INFINITY, f64::max);
    let verdict = if attached {
        Verdict::Attached
    } else if contained {
        Verdict::Contained
    } else {
        Verdict::Violated
    };
    Ok(ContainmentReport { max_rho, margin: config.margin, ladder, boundary, contained, attached, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::holo::{c64, AnalyticDisc, HoloFn};

    #[test]
    fn rho_examples() {
        let yu = ModelDomain::YuDomain;
        assert_eq!(yu.rho(&[c64(0.0, 0.0), c64(0.0, 0.0), c64(-1.0, 0.0)]).unwrap(), -1.0);
        assert_eq!(yu.rho(&[c64(1.0, 0.0), c64(1.0, 0.0), c64(0.0, 0.0)]).unwrap(), 0.0);
        let e = ModelDomain::ellipsoid(0.3).unwrap();
        assert_eq!(e.rho(&[c64(0.0, 0.0), c64(0.0, 0.0)]).unwrap(), -1.0);
        assert!(matches!(yu.rho(&[c64(0.0, 0.0)]), Err(DomainError::Dimension { .. })));
    }

    #[test]
    fn gradient_examples() {
        let yu = ModelDomain::YuDomain;
        assert_eq!(yu.grad_rho(&[c64(0.0, 0.0), c64(0.0, 0.0), c64(-1.0, 0.0)]).unwrap(), vec![
            c64(0.0, 0.0),
            c64(0.0, 0.0),
            c64(0.5, 0.0)
        ]);
        let e = ModelDomain::ellipsoid(1.0 / 3.0).unwrap();
        let (a1, a2) = (c64(0.3, 0.2), c64(-0.1, 0.4));
        let g = e.grad_rho(&[a1, a2]).unwrap();
        assert_eq!(g[0], a1.conj());
        let expect = (1.0 / 3.0) * a2.norm().powf(-4.0 / 3.0) * a2.conj();
        assert!((g[1] - expect).norm() < 1e-14);
        assert_eq!(e.grad_rho(&[c64(1.0, 0.0), c64(1e-100, 0.0)]).unwrap()[0], c64(1.0, 0.0));
        assert!(matches!(e.grad_rho(&[c64(1.0, 0.0), c64(0.0, 0.0)]), Err(DomainError::Singular(_))));
    }

    #[test]
    fn ids_round_trip() {
        for d in [
            ModelDomain::UnitDisc,
            ModelDomain::PuncturedDisc,
            ModelDomain::Polydisc { dim: 2 },
            ModelDomain::Polydisc { dim: 3 },
            ModelDomain::YuDomain,
            ModelDomain::Ellipsoid { m: 0.35 },
            ModelDomain::HalfPlane,
        ] {
            assert_eq!(d.id().parse::<ModelDomain>().unwrap(), d);
        }
        assert!("ellipsoid:1.5".parse::<ModelDomain>().is_err());
        assert!("sphere".parse::<ModelDomain>().is_err());
        assert!(ModelDomain::Ellipsoid { m: 0.2 }.is_nonconvex());
    }

    #[test]
    fn containment_examples() {
        let cfg = ContainmentConfig::default();
        let half = AnalyticDisc::new("half", vec![HoloFn::monomial(1, c64(0.5, 0.0))]);
        let r = contains_disc(&ModelDomain::UnitDisc, &half, &cfg).unwrap();
        assert_eq!(r.verdict, Verdict::Contained);
        assert!((r.max_rho + 0.75).abs() < 1e-15);
        let id = AnalyticDisc::new("id", vec![HoloFn::identity()]);
        let r = contains_disc(&ModelDomain::UnitDisc, &id, &cfg).unwrap();
        assert_eq!(r.verdict, Verdict::Attached);
        assert!(r.contained && r.attached);
        let big = AnalyticDisc::new("big", vec![HoloFn::monomial(1, c64(1.5, 0.0))]);
        assert_eq!(contains_disc(&ModelDomain::UnitDisc, &big, &cfg).unwrap().verdict, Verdict::Violated);
    }

    #[test]
    fn punctured_requires_zero_free() {
        let cfg = ContainmentConfig::default().with_grid(256);
        let shifted = AnalyticDisc::new("shift", vec![HoloFn::Series(crate::holo::ComplexSeries::from_real(&[0.1, 0.5]))]);
        let r = contains_disc(&ModelDomain::PuncturedDisc, &shifted, &cfg).unwrap();
        assert!(!r.contained);
        assert_eq!(r.ladder.last().unwrap().winding, Some(1));
        let ok = AnalyticDisc::new("ok", vec![HoloFn::Series(crate::holo::ComplexSeries::from_real(&[0.5, 0.2]))]);
        assert!(contains_disc(&ModelDomain::PuncturedDisc, &ok, &cfg).unwrap().contained);
    }
}
