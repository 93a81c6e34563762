use std::f64::consts::TAU;

use super::cauchy::cauchy_taylor;
use super::maps::blaschke_unchecked;
use super::{factorial, ComplexSeries, HoloError, C64};

/// Base modulus (relative to `|f(0)|`) below which a branch is refused.
const BRANCH_FLOOR: f64 = 1e-12;
/// Largest argument increment tolerated between radial samples.
const MAX_ARG_STEP: f64 = 0.5;
const MAX_RADIAL_STEPS: usize = 1 << 16;

/// Closed-form holomorphic function on the unit disc.
///
/// Evaluation is pointwise and exact up to rounding; `taylor` produces
/// the jet at the origin by power-series arithmetic wherever an algebraic
/// rule exists, so jet identities do not depend on grid resolution.
#[derive(Debug, Clone, PartialEq)]
pub enum HoloFn {
    Series(ComplexSeries),
    /// `e^{rate ζ}`
    Exp { rate: C64 },
    /// `scale (e^{rate ζ} - 1) / ζ`, entire.
    ExpQuotient { scale: C64, rate: C64 },
    /// `B_a(ζ)`
    Blaschke(C64),
    /// `(num[0] + num[1] ζ) / (den[0] + den[1] ζ)`
    LinearFractional { num: [C64; 2], den: [C64; 2] },
    Sum(Vec<HoloFn>),
    Product(Vec<HoloFn>),
    Scaled(C64, Box<HoloFn>),
    /// `inner(ζ^k)`
    ComposePower { inner: Box<HoloFn>, k: usize },
    /// `((1 - conj(num) ζ) / (1 - conj(den) ζ))^exponent` for `|num|, |den| ≤ 1`.
    ///
    /// Each factor has positive real part on the disc, so principal
    /// logarithms give the branch equal to 1 at the origin.
    RatioPower { num: C64, den: C64, exponent: f64 },
    /// `base^exponent` on the branch continued radially from `anchor` at 0.
    Power { base: Box<HoloFn>, exponent: f64, anchor: C64 },
    ExpOf(Box<HoloFn>),
    /// `B_a ∘ inner`
    BlaschkeAfter { a: C64, inner: Box<HoloFn> },
    /// `inner ∘ B_a`
    ComposeBlaschke { a: C64, inner: Box<HoloFn> },
    /// `scale (1 + inner) / (1 - inner)`
    Herglotz { scale: f64, inner: Box<HoloFn> },
}

impl HoloFn {
    pub fn constant(c: C64) -> Self {
        HoloFn::Series(ComplexSeries::constant(c))
    }

    pub fn identity() -> Self {
        Self::monomial(1, C64::new(1.0, 0.0))
    }

    /// `c ζ^k`
    pub fn monomial(k: usize, c: C64) -> Self {
        HoloFn::Series(ComplexSeries::monomial(k, c))
    }

    pub fn blaschke(a: C64) -> Result<Self, HoloError> {
        if a.norm() >= 1.0 {
            return Err(HoloError::InvalidParameter(format!("Blaschke parameter |a| = {} must be < 1", a.norm())));
        }
        Ok(HoloFn::Blaschke(a))
    }

    /// `(1 - conj(α) ζ)`
    pub fn one_minus_conj(alpha: C64) -> Self {
        HoloFn::Series(ComplexSeries::new(vec![C64::new(1.0, 0.0), -alpha.conj()]))
    }

    /// `(1 - conj(num) ζ) / (1 - conj(den) ζ)`
    pub fn ratio_one_minus_conj(num: C64, den: C64) -> Self {
        let one = C64::new(1.0, 0.0);
        HoloFn::LinearFractional { num: [one, -num.conj()], den: [one, -den.conj()] }
    }

    pub fn scaled(self, s: C64) -> Self {
        match self {
            HoloFn::Series(s0) => HoloFn::Series(s0.scale(s)),
            other => HoloFn::Scaled(s, Box::new(other)),
        }
    }

    pub fn times(self, other: HoloFn) -> Self {
        match self {
            HoloFn::Product(mut v) => {
                v.push(other);
                HoloFn::Product(v)
            }
            first => HoloFn::Product(vec![first, other]),
        }
    }

    /// `ζ^k · self`
    pub fn times_monomial(self, k: usize) -> Self {
        if k == 0 {
            return self;
        }
        match self {
            HoloFn::Series(s) => HoloFn::Series(s.shift(k)),
            other => HoloFn::Product(vec![Self::monomial(k, C64::new(1.0, 0.0)), other]),
        }
    }

    /// `self(ζ^k)`
    pub fn compose_power(self, k: usize) -> Self {
        assert!(k >= 1, "compose_power needs k >= 1");
        match self {
            _ if k == 1 => self,
            HoloFn::Series(s) => HoloFn::Series(s.compose_power(k)),
            HoloFn::ComposePower { inner, k: j } => HoloFn::ComposePower { inner, k: j * k },
            other => HoloFn::ComposePower { inner: Box::new(other), k },
        }
    }

    /// `B_a ∘ self`
    pub fn then_blaschke(self, a: C64) -> Result<Self, HoloError> {
        if a.norm() >= 1.0 {
            return Err(HoloError::InvalidParameter(format!("Blaschke parameter |a| = {} must be < 1", a.norm())));
        }
        Ok(HoloFn::BlaschkeAfter { a, inner: Box::new(self) })
    }

    /// `self ∘ B_a`
    pub fn after_blaschke(self, a: C64) -> Result<Self, HoloError> {
        if a.norm() >= 1.0 {
            return Err(HoloError::InvalidParameter(format!("Blaschke parameter |a| = {} must be < 1", a.norm())));
        }
        Ok(HoloFn::ComposeBlaschke { a, inner: Box::new(self) })
    }

    /// `self^exponent` with the principal determination at the origin.
    pub fn fractional_power(self, exponent: f64) -> Result<Self, HoloError> {
        let f0 = self.eval(C64::new(0.0, 0.0))?;
        if f0.norm() == 0.0 {
            return Err(HoloError::Branch { at: C64::new(0.0, 0.0), modulus: 0.0 });
        }
        let anchor = if f0.im == 0.0 && f0.re > 0.0 {
            C64::new(f0.re.powf(exponent), 0.0)
        } else {
            f0.powf(exponent)
        };
        Ok(HoloFn::Power { base: Box::new(self), exponent, anchor })
    }

    pub fn eval(&self, z: C64) -> Result<C64, HoloError> {
        Ok(match self {
            HoloFn::Series(s) => s.eval(z),
            HoloFn::Exp { rate } => (rate * z).exp(),
            HoloFn::ExpQuotient { scale, rate } => scale * exp_quotient(*rate, z),
            HoloFn::Blaschke(a) => {
                let den = 1.0 - a.conj() * z;
                if den.norm() == 0.0 {
                    return Err(HoloError::Pole(z));
                }
                (z - a) / den
            }
            HoloFn::LinearFractional { num, den } => {
                let d = den[0] + den[1] * z;
                if d.norm() == 0.0 {
                    return Err(HoloError::Pole(z));
                }
                (num[0] + num[1] * z) / d
            }
            HoloFn::Sum(parts) => {
                let mut acc = C64::new(0.0, 0.0);
                for p in parts {
                    acc += p.eval(z)?;
                }
                acc
            }
            HoloFn::Product(parts) => {
                let mut acc = C64::new(1.0, 0.0);
                for p in parts {
                    acc *= p.eval(z)?;
                }
                acc
            }
            HoloFn::Scaled(s, inner) => s * inner.eval(z)?,
            HoloFn::ComposePower { inner, k } => inner.eval(z.powu(*k as u32))?,
            HoloFn::RatioPower { num, den, exponent } => {
                let d = 1.0 - den.conj() * z;
                if d.norm() == 0.0 {
                    return Err(HoloError::Pole(z));
                }
                ((((1.0 - num.conj() * z).ln()) - d.ln()) * *exponent).exp()
            }
            HoloFn::Power { base, exponent, anchor } => {
                if z.norm() == 0.0 {
                    return Ok(*anchor);
                }
                anchor * (continued_log_ratio(base, z)? * *exponent).exp()
            }
            HoloFn::ExpOf(inner) => inner.eval(z)?.exp(),
            HoloFn::BlaschkeAfter { a, inner } => {
                let s = inner.eval(z)?;
                let den = 1.0 - a.conj() * s;
                if den.norm() == 0.0 {
                    return Err(HoloError::Pole(z));
                }
                (s - a) / den
            }
            HoloFn::ComposeBlaschke { a, inner } => inner.eval(blaschke_unchecked(*a, z))?,
            HoloFn::Herglotz { scale, inner } => {
                let s = inner.eval(z)?;
                let den = 1.0 - s;
                if den.norm() == 0.0 {
                    return Err(HoloError::Pole(z));
                }
                *scale * (1.0 + s) / den
            }
        })
    }

    /// Taylor coefficients at the origin up to `order` inclusive.
    pub fn taylor(&self, order: usize) -> Result<ComplexSeries, HoloError> {
        let one = C64::new(1.0, 0.0);
        Ok(match self {
            HoloFn::Series(s) => s.resized(order),
            HoloFn::Exp { rate } => {
                ComplexSeries::new((0..=order).map(|j| rate.powu(j as u32) / factorial(j)).collect())
            }
            HoloFn::ExpQuotient { scale, rate } => ComplexSeries::new(
                (0..=order).map(|j| scale * rate.powu(j as u32 + 1) / factorial(j + 1)).collect(),
            ),
            HoloFn::Blaschke(a) => {
                let w = 1.0 - a.norm_sqr();
                ComplexSeries::new(
                    (0..=order).map(|j| if j == 0 { -a } else { a.conj().powu(j as u32 - 1) * w }).collect(),
                )
            }
            HoloFn::LinearFractional { num, den } => ComplexSeries::new(num.to_vec())
                .div_truncated(&ComplexSeries::new(den.to_vec()), order)?,
            HoloFn::Sum(parts) => {
                let mut acc = ComplexSeries::zero(order);
                for p in parts {
                    acc = acc.add(&p.taylor(order)?);
                }
                acc
            }
            HoloFn::Product(parts) => {
                let mut acc = ComplexSeries::constant(one).resized(order);
                for p in parts {
                    acc = acc.mul_truncated(&p.taylor(order)?, order);
                }
                acc
            }
            HoloFn::Scaled(s, inner) => inner.taylor(order)?.scale(*s),
            HoloFn::ComposePower { inner, k } => inner.taylor(order / k)?.compose_power(*k).resized(order),
            HoloFn::RatioPower { num, den, exponent } => {
                // log(1 - cζ) = -Σ_{j≥1} c^j ζ^j / j
                let (n, d) = (num.conj(), den.conj());
                let log = ComplexSeries::new(
                    (0..=order)
                        .map(|j| {
                            if j == 0 {
                                C64::new(0.0, 0.0)
                            } else {
                                (d.powu(j as u32) - n.powu(j as u32)) * (*exponent / j as f64)
                            }
                        })
                        .collect(),
                );
                log.exp_truncated(order)
            }
            HoloFn::Power { base, exponent, anchor } => base.taylor(order)?.pow_truncated(*exponent, *anchor, order)?,
            HoloFn::ExpOf(inner) => inner.taylor(order)?.exp_truncated(order),
            HoloFn::BlaschkeAfter { a, inner } => {
                let s = inner.taylor(order)?;
                let num = s.sub(&ComplexSeries::constant(*a));
                let den = ComplexSeries::constant(one).sub(&s.scale(a.conj()));
                num.div_truncated(&den, order)?
            }
            HoloFn::ComposeBlaschke { .. } => {
                let coeffs = cauchy_taylor(|w| self.eval(w), C64::new(0.0, 0.0), 0.5, 1024, order)?;
                ComplexSeries::new(coeffs)
            }
            HoloFn::Herglotz { scale, inner } => {
                let s = inner.taylor(order)?;
                let num = ComplexSeries::constant(one).add(&s);
                let den = ComplexSeries::constant(one).sub(&s);
                num.div_truncated(&den, order)?.scale(C64::new(*scale, 0.0))
            }
        })
    }
}

/// `(e^{rate ζ} - 1) / ζ` without cancellation near the origin.
fn exp_quotient(rate: C64, z: C64) -> C64 {
    let w = rate * z;
    if w.norm() < 0.5 {
        // rate * Σ w^j / (j+1)!
        let mut term = rate;
        let mut acc = term;
        for j in 1..26 {
            term *= w / (j as f64 + 1.0);
            acc += term;
        }
        acc
    } else {
        (w.exp() - 1.0) / z
    }
}

/// `log(f(z) / f(0))` continued along the segment `[0, z]`.
///
/// The argument is tracked by unwrapping increments between radial samples,
/// which integrates `d arg f` along the ray without needing `f'`. The final
/// value uses the principal argument of `f(z)/f(0)` corrected by the
/// accumulated winding, so rounding does not build up along the path.
fn continued_log_ratio(base: &HoloFn, z: C64) -> Result<C64, HoloError> {
    let f0 = base.eval(C64::new(0.0, 0.0))?;
    let fz = base.eval(z)?;
    let floor = BRANCH_FLOOR * f0.norm();
    if f0.norm() == 0.0 {
        return Err(HoloError::Branch { at: C64::new(0.0, 0.0), modulus: 0.0 });
    }
    if fz.norm() <= floor {
        return Err(HoloError::Branch { at: z, modulus: fz.norm() });
    }
    let mut steps = 8;
    'refine: loop {
        let mut prev = f0;
        let mut total = 0.0;
        for s in 1..=steps {
            let w = if s == steps { fz } else { base.eval(z * (s as f64 / steps as f64))? };
            if w.norm() <= floor {
                return Err(HoloError::Branch { at: z * (s as f64 / steps as f64), modulus: w.norm() });
            }
            let d = (w / prev).arg();
            if d.abs() > MAX_ARG_STEP {
                if steps >= MAX_RADIAL_STEPS {
                    return Err(HoloError::Branch { at: z, modulus: w.norm() });
                }
                steps *= 2;
                continue 'refine;
            }
            total += d;
            prev = w;
        }
        let ratio = fz / f0;
        let principal = ratio.arg();
        let winding = ((total - principal) / TAU).round();
        return Ok(C64::new(ratio.norm().ln(), principal + TAU * winding));
    }
}

/// Holomorphic `q`-th root of a zero-free `f` with `g(0) = anchor`.
///
/// Fails if `anchor^q` does not reproduce `f(0)` or if `f` comes within the
/// branch floor of zero on a polar scan of the disc out to radius 0.999.
pub fn zero_free_root(f: HoloFn, q: u32, anchor: C64) -> Result<HoloFn, HoloError> {
    if q == 0 {
        return Err(HoloError::InvalidParameter("root order must be positive".into()));
    }
    let f0 = f.eval(C64::new(0.0, 0.0))?;
    if (anchor.powu(q) - f0).norm() > 1e-10 * f0.norm().max(1.0) {
        return Err(HoloError::Anchor { anchor, q, value: f0 });
    }
    let floor = BRANCH_FLOOR * f0.norm();
    for &r in &[0.25, 0.5, 0.75, 0.9, 0.99, 0.999] {
        for j in 0..256 {
            let z = C64::from_polar(r, TAU * j as f64 / 256.0);
            let w = f.eval(z)?;
            if w.norm() <= floor {
                return Err(HoloError::Branch { at: z, modulus: w.norm() });
            }
        }
    }
    Ok(HoloFn::Power { base: Box::new(f), exponent: 1.0 / q as f64, anchor })
}
