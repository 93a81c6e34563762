use koblab_core::catalog::{ellipsoid_kind1, EllipsoidKind1Params};
use koblab_core::holo::ComplexSeries;
use koblab_core::stationarity::{check_stationary, verify_k_stationary, verify_k_stationary_with, StationarityConfig};
use koblab_core::{AnalyticDisc, ModelDomain, C64};
use proptest::prelude::*;

const GRID: usize = 2048;

fn cfg(cutoff: Option<usize>) -> StationarityConfig {
    StationarityConfig { grid: GRID, cutoff, ..Default::default() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    // f(e^{iτ}ζ) with τ on the grid: same residual, weight shifted by s nodes
    #[test]
    fn rotation_shifts_the_weight(seed in 0u64..10_000, s in 1usize..GRID, k in 1usize..=2) {
        let p = EllipsoidKind1Params::sample(seed, 0.35);
        let domain = ModelDomain::Ellipsoid { m: p.m };
        let f = ellipsoid_kind1(&p).unwrap().compose_power(k);
        let tau = std::f64::consts::TAU * s as f64 / GRID as f64;
        let rotate = |series: ComplexSeries| {
            ComplexSeries::new(series.coeffs().iter().enumerate().map(|(j, c)| c * C64::from_polar(1.0, tau * j as f64)).collect())
        };
        let degree = 400 * k;
        let plain = AnalyticDisc::from_series("f", f.taylor(degree).unwrap());
        let rotated = AnalyticDisc::from_series("f∘rot", f.taylor(degree).unwrap().into_iter().map(rotate).collect());
        let cut = Some(StationarityConfig::default_cutoff(k, p.blaschke_degree()));
        let a = check_stationary(&domain, &plain, k, p.blaschke_degree(), &cfg(cut)).unwrap();
        let b = check_stationary(&domain, &rotated, k, p.blaschke_degree(), &cfg(cut)).unwrap();
        prop_assert!((a.residual - b.residual).abs() < 1e-10);
        // the k-th power rotates ζ^k by e^{ikτ}; the normalized weight itself moves with θ
        for t in 0..GRID {
            prop_assert!((b.weight[t] - a.weight[(t + s) % GRID]).abs() < 1e-8, "t = {t}");
        }
    }

    #[test]
    fn larger_cutoff_never_hurts(seed in 0u64..10_000, k in 1usize..=3, m in prop::sample::select(vec![0.2, 0.35, 0.45])) {
        let p = EllipsoidKind1Params::sample(seed, m);
        let mut last = f64::INFINITY;
        for cut in [2, 4, 8, 16, 32] {
            let r = verify_k_stationary_with(&p, k, true, &cfg(Some(cut))).unwrap();
            prop_assert!(r.residual <= last * (1.0 + 1e-9) + 1e-14, "cutoff {cut}: {} after {last}", r.residual);
            last = r.residual;
        }
    }

    #[test]
    fn order_one_is_plain_stationarity(seed in 0u64..10_000, m in prop::sample::select(vec![0.2, 0.35, 0.45])) {
        let p = EllipsoidKind1Params::sample(seed, m);
        let lifted = verify_k_stationary(&p, 1).unwrap();
        let direct = check_stationary(
            &ModelDomain::Ellipsoid { m },
            &ellipsoid_kind1(&p).unwrap(),
            1,
            p.blaschke_degree(),
            &StationarityConfig::default(),
        )
        .unwrap();
        prop_assert_eq!(lifted.verdict, direct.verdict);
        prop_assert!((lifted.residual - direct.residual).abs() < 1e-12);
    }
}
