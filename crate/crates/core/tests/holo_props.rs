use koblab_core::holo::{blaschke, zero_free_root, BoundaryGrid, ComplexSeries, Disc, HoloFn};
use koblab_core::{c64, AnalyticDisc, C64};
use proptest::prelude::*;

fn complex() -> impl Strategy<Value = C64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(a, b)| c64(a, b))
}

fn in_disc(r: f64) -> impl Strategy<Value = C64> {
    (0.0..r, 0.0..std::f64::consts::TAU).prop_map(|(m, t)| C64::from_polar(m, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fourier_inverts_sampling(coeffs in prop::collection::vec(complex(), 1..=16)) {
        let m = 64;
        let series = ComplexSeries::new(coeffs.clone());
        let f = BoundaryGrid::sample(m, 1.0, |z| Ok(series.eval(z))).unwrap().fourier_coefficients();
        for n in -(m as i64) / 2 + 1..(m as i64) / 2 {
            let expect = if n >= 0 && (n as usize) < coeffs.len() { coeffs[n as usize] } else { c64(0.0, 0.0) };
            prop_assert!((f.get(n) - expect).norm() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn zero_free_roots_power_back(zeros in prop::collection::vec(in_disc(0.9), 1..4), q in 2u32..5, scale in in_disc(1.0)) {
        let scale = scale + c64(1.5, 0.0);
        let f = zeros.iter().fold(HoloFn::constant(scale), |acc, a| acc.times(HoloFn::one_minus_conj(*a)));
        let f0 = f.eval(c64(0.0, 0.0)).unwrap();
        let anchor = C64::from_polar(f0.norm().powf(1.0 / q as f64), f0.arg() / q as f64);
        let g = zero_free_root(f.clone(), q, anchor).unwrap();
        for z in BoundaryGrid::nodes(256, 0.999) {
            let (gv, fv) = (g.eval(z).unwrap(), f.eval(z).unwrap());
            prop_assert!((gv.powu(q) - fv).norm() < 1e-10);
        }
    }

    #[test]
    fn blaschke_preserves_the_circle(a in in_disc(0.99)) {
        for z in BoundaryGrid::nodes(512, 1.0) {
            prop_assert!((blaschke(a, z).unwrap().norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn compose_power_stays_in_the_image(c in prop::collection::vec(complex(), 2..5), k in 2usize..5) {
        // g(e^{iθ}) = f(e^{ikθ}) must be a value of f on a grid refined k times
        let f = AnalyticDisc::from_series("f", vec![ComplexSeries::new(c)]);
        let g = f.compose_power(k);
        let m = 64;
        let fine: Vec<C64> = BoundaryGrid::nodes(m * k, 0.9f64.powi(k as i32)).iter().map(|&z| f.eval(z).unwrap()[0]).collect();
        for z in BoundaryGrid::nodes(m, 0.9) {
            let v = g.eval(z).unwrap()[0];
            let d = fine.iter().map(|w| (w - v).norm()).fold(f64::INFINITY, f64::min);
            prop_assert!(d < 1e-12);
        }
    }
}
