use super::{factorial, ComplexSeries, HoloError, HoloFn, C64};

/// Holomorphic map from the unit disc to `C^n`, evaluated pointwise.
pub trait Disc: Send + Sync {
    fn dim(&self) -> usize;

    fn eval_into(&self, z: C64, out: &mut [C64]) -> Result<(), HoloError>;

    fn eval(&self, z: C64) -> Result<Vec<C64>, HoloError> {
        let mut out = vec![C64::new(0.0, 0.0); self.dim()];
        self.eval_into(z, &mut out)?;
        Ok(out)
    }
}

/// Disc whose components are closed-form [`HoloFn`] trees.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticDisc {
    label: String,
    components: Vec<HoloFn>,
}

impl AnalyticDisc {
    pub fn new(label: impl Into<String>, components: Vec<HoloFn>) -> Self {
        assert!(!components.is_empty(), "a disc needs at least one component");
        Self { label: label.into(), components }
    }

    pub fn from_series(label: impl Into<String>, components: Vec<ComplexSeries>) -> Self {
        Self::new(label, components.into_iter().map(HoloFn::Series).collect())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn components(&self) -> &[HoloFn] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &HoloFn {
        &self.components[i]
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Per-component Taylor series up to `order`.
    pub fn taylor(&self, order: usize) -> Result<Vec<ComplexSeries>, HoloError> {
        self.components.iter().map(|c| c.taylor(order)).collect()
    }

    /// `f^{(k)}(0)` as a vector.
    pub fn jet(&self, k: usize) -> Result<Vec<C64>, HoloError> {
        let kf = factorial(k);
        self.components.iter().map(|c| Ok(c.taylor(k)?.coeff(k) * kf)).collect()
    }

    /// `ζ ↦ f(ζ^k)`.
    pub fn compose_power(&self, k: usize) -> Self {
        let label = if k == 1 { self.label.clone() } else { format!("{}∘ζ^{k}", self.label) };
        Self::new(label, self.components.iter().cloned().map(|c| c.compose_power(k)).collect())
    }
}

impl Disc for AnalyticDisc {
    fn dim(&self) -> usize {
        self.components.len()
    }

    fn eval_into(&self, z: C64, out: &mut [C64]) -> Result<(), HoloError> {
        if out.len() != self.components.len() {
            return Err(HoloError::Dimension { expected: self.components.len(), got: out.len() });
        }
        for (o, c) in out.iter_mut().zip(&self.components) {
            *o = c.eval(z)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::holo::{c64, cauchy_derivative};

    #[test]
    fn compose_power_examples() {
        let id = AnalyticDisc::new("id", vec![HoloFn::identity()]);
        let g = id.compose_power(3);
        assert_eq!(g.eval(c64(0.0, 1.0)).unwrap()[0], c64(0.0, -1.0));
        let p = c64(0.2, 0.1);
        let v = c64(0.5, -0.5);
        let f = AnalyticDisc::from_series("pv", vec![ComplexSeries::new(vec![p, v])]);
        assert_eq!(f.compose_power(2).taylor(2).unwrap()[0].coeffs(), &[p, c64(0.0, 0.0), v]);
    }

    #[test]
    fn fifth_jet_of_exponential_lift() {
        let f = AnalyticDisc::new("exp", vec![HoloFn::Exp { rate: c64(0.7, 0.2) }]);
        let v = f.jet(1).unwrap()[0];
        let g = f.compose_power(5);
        let d5 = cauchy_derivative(|z| g.component(0).eval(z), c64(0.0, 0.0), 5).unwrap();
        let expect = factorial(5) * v;
        assert!((d5 - expect).norm() < 1e-10 * expect.norm());
        assert!((g.jet(5).unwrap()[0] - expect).norm() < 1e-13);
    }
}
