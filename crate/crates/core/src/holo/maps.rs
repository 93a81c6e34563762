use super::{HoloError, C64};

/// Blaschke factor `B_a(ζ) = (ζ - a) / (1 - ā ζ)`.
pub fn blaschke(a: C64, z: C64) -> Result<C64, HoloError> {
    if a.norm() >= 1.0 {
        return Err(HoloError::InvalidParameter(format!("Blaschke parameter |a| = {} must be < 1", a.norm())));
    }
    Ok(blaschke_unchecked(a, z))
}

#[inline]
pub(crate) fn blaschke_unchecked(a: C64, z: C64) -> C64 {
    (z - a) / (1.0 - a.conj() * z)
}

/// `B_a'(ζ) = (1 - |a|²) / (1 - ā ζ)²`.
pub fn blaschke_derivative(a: C64, z: C64) -> C64 {
    let d = 1.0 - a.conj() * z;
    (1.0 - a.norm_sqr()) / (d * d)
}

/// `B_{-a}(w) = (w + a) / (1 + ā w)`, the inverse of `B_a`.
pub fn mobius_shift(a: C64, w: C64) -> C64 {
    (w + a) / (1.0 + a.conj() * w)
}

/// Cayley transform `(ζ - i) / (ζ + i)`, upper half-plane onto the disc.
pub fn cayley(z: C64) -> Result<C64, HoloError> {
    let i = C64::new(0.0, 1.0);
    let den = z + i;
    if den.norm() == 0.0 {
        return Err(HoloError::Pole(z));
    }
    Ok((z - i) / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::holo::c64;

    #[test]
    fn blaschke_examples() {
        let z = c64(0.0, 0.3);
        assert_eq!(blaschke(c64(0.0, 0.0), z).unwrap(), z);
        assert_eq!(blaschke(c64(0.5, 0.0), c64(0.5, 0.0)).unwrap(), c64(0.0, 0.0));
        for j in 0..64 {
            let t = j as f64 * std::f64::consts::TAU / 64.0;
            let w = blaschke(c64(0.5, 0.0), C64::from_polar(1.0, t)).unwrap();
            assert!((w.norm() - 1.0).abs() < 1e-15);
        }
        assert!(matches!(blaschke(c64(1.0, 0.0), z), Err(HoloError::InvalidParameter(_))));
    }

    #[test]
    fn mobius_shift_inverts() {
        let a = c64(0.3, -0.4);
        let w = c64(-0.2, 0.6);
        assert!((mobius_shift(a, blaschke(a, w).unwrap()) - w).norm() < 1e-15);
    }

    #[test]
    fn cayley_examples() {
        assert_eq!(cayley(c64(0.0, 1.0)).unwrap(), c64(0.0, 0.0));
        assert_eq!(cayley(c64(0.0, 0.0)).unwrap(), c64(-1.0, 0.0));
        assert!((cayley(c64(1.0, 0.0)).unwrap() - c64(0.0, -1.0)).norm() < 1e-15);
        assert!(matches!(cayley(c64(0.0, -1.0)), Err(HoloError::Pole(_))));
    }
}
