use koblab_core::holo::{BoundaryGrid, HoloFn};
use koblab_core::metrics::{verify_jet, JetTarget};
use koblab_core::schwarz::{run_suite, Lemma, SuiteConfig};
use koblab_core::{c64, AnalyticDisc, C64};
use proptest::prelude::*;

fn in_disc(r: f64) -> impl Strategy<Value = C64> {
    (0.0..r, 0.0..std::f64::consts::TAU).prop_map(|(m, t)| C64::from_polar(m, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn near_extremal_samples_are_rotations(seed in 0u64..100_000, k in 1usize..=3, lemma in prop::sample::select(vec![Lemma::Basic, Lemma::Pick, Lemma::Punctured])) {
        let cfg = SuiteConfig::new(lemma, k, 40, seed).with_base(if lemma == Lemma::Pick { c64(0.3, -0.2) } else { c64(0.0, 0.0) });
        let (summary, rows) = run_suite(&cfg).unwrap();
        prop_assert!(summary.passed());
        for r in rows.iter().filter(|r| r.derivative_ratio > 1.0 - 1e-8) {
            prop_assert!(r.reconstruction_error.is_some_and(|e| e < 1e-7), "{r:?}");
        }
    }

    #[test]
    fn composition_bound(
        c in in_disc(0.8), b in in_disc(0.9), inner in in_disc(0.9), k in 1usize..=4, shrink in 0.5..0.99f64,
    ) {
        // f = c + (1-|c|)·shrink·ζ^k B_inner maps into D with ν(f - f(0)) ≥ k;
        // g = B_c·B_b is a self-map with g(f(0)) = 0
        let f = HoloFn::Sum(vec![HoloFn::constant(c), HoloFn::blaschke(inner).unwrap().times_monomial(k).scaled(c64((1.0 - c.norm()) * shrink, 0.0))]);
        let g = HoloFn::BlaschkeAfter { a: c, inner: Box::new(f.clone()) }
            .times(HoloFn::BlaschkeAfter { a: b, inner: Box::new(f) });
        let series = g.taylor(k).unwrap();
        prop_assert!(series.coeff(0).norm() < 1e-12);
        prop_assert!(series.coeff(k).norm() <= 1.0 + 1e-12, "|(g∘f)^(k)(0)/k!| = {}", series.coeff(k).norm());
    }

    // the extremal disc (ζu, 0) composed with ζ^k has unit k-th jet coefficient
    #[test]
    fn bidisc_extremal_lift(u in in_disc(1.0), k in 1usize..=4) {
        prop_assume!(u.norm() > 0.1);
        let u = u / u.norm();
        let z = c64(0.0, 0.0);
        let f = AnalyticDisc::new("(ζu, 0)", vec![HoloFn::monomial(1, u), HoloFn::constant(z)]).compose_power(k);
        let jet = verify_jet(&f, &JetTarget::new(vec![z, z], vec![u, z], k).unwrap()).unwrap();
        prop_assert!(jet.satisfied(1e-12));
        prop_assert!((jet.r.norm() - 1.0).abs() < 1e-12);
        for w in BoundaryGrid::nodes(64, 0.999) {
            prop_assert!(f.component(0).eval(w).unwrap().norm() < 1.0);
        }
    }
}
