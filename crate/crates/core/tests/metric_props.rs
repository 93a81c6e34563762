use koblab_core::catalog::{yu_parametric_disc, YuDisc, YuDiscParams};
use koblab_core::holo::HoloFn;
use koblab_core::metrics::{poincare, scalar_target, upper_bound_search, verify_jet, JetTarget, SearchConfig};
use koblab_core::{c64, contains_disc, AnalyticDisc, ContainmentConfig, ModelDomain, Verdict, C64};
use proptest::prelude::*;

fn quick(seed: u64) -> SearchConfig {
    SearchConfig { restarts: 2, iterations: 300, degree: Some(6), seed, ..Default::default() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    // a certified upper bound can never undercut the Poincaré value
    #[test]
    fn search_respects_the_schwarz_lower_bound(
        r in 0.0..0.7f64, t in 0.0..std::f64::consts::TAU, k in 1usize..=3, seed in 0u64..1000,
    ) {
        let p = C64::from_polar(r, t);
        let v = c64(1.0, 0.0);
        let out = upper_bound_search(&ModelDomain::UnitDisc, &scalar_target(p, v, k).unwrap(), &quick(seed), &[]).unwrap();
        prop_assert!(out.estimate.value >= poincare(p, v).unwrap() - 1e-9);
    }

    #[test]
    fn compose_power_keeps_the_witness(m in 2usize..=4) {
        let f = yu_parametric_disc(YuDiscParams::optimal()).unwrap().disc;
        let base = verify_jet(&f, &YuDisc::target()).unwrap();
        let g = f.compose_power(m);
        let lifted = verify_jet(&g, &YuDisc::target().with_order(3 * m)).unwrap();
        prop_assert!(lifted.satisfied(1e-10));
        prop_assert!((lifted.r - base.r).norm() < 1e-12);
        let report = contains_disc(&ModelDomain::YuDomain, &g, &ContainmentConfig::default()).unwrap();
        prop_assert_eq!(report.verdict, Verdict::Contained);
    }

    #[test]
    fn graph_discs_stay_in_the_bidisc(a in (0.0..0.9f64, 0.0..6.28f64), b in (0.0..0.9f64, 0.0..6.28f64)) {
        // (ζ, ζ²ψ(ζ)) for a self-map ψ = B_a B_b
        let psi = HoloFn::blaschke(C64::from_polar(a.0, a.1)).unwrap().times(HoloFn::blaschke(C64::from_polar(b.0, b.1)).unwrap());
        let f = AnalyticDisc::new("graph", vec![HoloFn::identity(), psi.times_monomial(2)]);
        let report = contains_disc(&ModelDomain::polydisc(2).unwrap(), &f, &ContainmentConfig::default()).unwrap();
        prop_assert_ne!(report.verdict, Verdict::Violated);
    }
}

#[test]
fn second_order_bidisc_witness() {
    let z = c64(0.0, 0.0);
    let f = AnalyticDisc::new("(ζ², ζ³)", vec![HoloFn::monomial(2, c64(1.0, 0.0)), HoloFn::monomial(3, c64(1.0, 0.0))]);
    let target = JetTarget::new(vec![z, z], vec![c64(1.0, 0.0), z], 2).unwrap();
    let jet = verify_jet(&f, &target).unwrap();
    assert!(jet.satisfied(1e-14));
    assert!((jet.r - 1.0).norm() < 1e-14);
    let report = contains_disc(&ModelDomain::polydisc(2).unwrap(), &f, &ContainmentConfig::default()).unwrap();
    assert_ne!(report.verdict, Verdict::Violated);
}

#[test]
fn same_seed_same_estimate() {
    let target = scalar_target(c64(0.2, 0.1), c64(1.0, 0.0), 2).unwrap();
    let run = || upper_bound_search(&ModelDomain::UnitDisc, &target, &quick(9), &[]).unwrap().estimate;
    let (a, b) = (run(), run());
    assert_eq!(a, b);
    assert_eq!(a.value.to_bits(), b.value.to_bits());
}
