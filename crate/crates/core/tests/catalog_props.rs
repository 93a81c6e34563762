use koblab_core::catalog::{
    ellipsoid_kind1, ellipsoid_kind2, lift_kind1, yu_parametric_disc, yu_simple_disc, CatalogName, EllipsoidKind1Params,
    YuDisc, YuDiscParams,
};
use koblab_core::holo::{BoundaryGrid, Disc};
use koblab_core::metrics::verify_jet;
use koblab_core::{contains_disc, ContainmentConfig, Verdict};
use proptest::prelude::*;

#[test]
fn key_equation_holds_on_the_grid() {
    for d in [yu_simple_disc(), yu_parametric_disc(YuDiscParams::optimal()).unwrap()] {
        let res = d.key_residual(4096, &[0.5, 0.9, 0.99, 0.999]).unwrap();
        assert!(res < 1e-10, "{}: {res:e}", d.disc.label());
    }
}

#[test]
fn third_jet_of_the_second_component_is_six_r() {
    for d in [yu_simple_disc(), yu_parametric_disc(YuDiscParams::optimal()).unwrap()] {
        let jet = verify_jet(&d.disc, &YuDisc::target()).unwrap();
        let third = d.disc.jet(3).unwrap()[1];
        assert!((third - 6.0 * d.r).norm() < 1e-12, "{third} vs 6·{}", d.r);
        assert!((jet.r.norm() - d.r).abs() < 1e-12);
    }
}

#[test]
fn catalog_discs_pass_their_checks() {
    // only the optimal Yu disc stays off the boundary circle
    let cases = [
        ("yu-simple", Verdict::Attached),
        ("yu-optimal", Verdict::Contained),
        ("yu-param:1.2,2", Verdict::Attached),
        ("exact-kob:0.3,0.9,0.4358898943540673", Verdict::Attached),
        ("ellipsoid-k1:m=0.3,seed=1", Verdict::Attached),
        ("ellipsoid-k1:m=0.45,seed=2", Verdict::Attached),
    ];
    for (name, verdict) in cases {
        for lift in [None, Some(2)] {
            let item = CatalogName::parse(name).unwrap().with_lift(lift).resolve().unwrap();
            let r = contains_disc(&item.domain, &item.disc, &ContainmentConfig::default()).unwrap();
            assert_eq!(r.verdict, verdict, "{name} lift {lift:?}");
            assert!(r.contained, "{name} lift {lift:?}");
            assert!(verify_jet(&item.disc, &item.target).unwrap().satisfied(1e-9), "{name} lift {lift:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn lift_matches_composition(seed in 0u64..10_000, k in 1usize..=3, m in prop::sample::select(vec![0.2, 0.35, 0.45, 0.7])) {
        let p = EllipsoidKind1Params::sample(seed, m);
        let lifted = lift_kind1(&p, k).unwrap();
        prop_assert!(lifted.identity_residual() < 1e-10);
        let g = ellipsoid_kind2(&lifted).unwrap();
        let f = ellipsoid_kind1(&p).unwrap().compose_power(k);
        for z in BoundaryGrid::nodes(512, 1.0) {
            for (a, b) in g.eval(z).unwrap().iter().zip(&f.eval(z).unwrap()) {
                prop_assert!((a - b).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn root_order_does_not_matter(seed in 0u64..10_000, k in 2usize..=4) {
        let p = EllipsoidKind1Params::sample(seed, 0.3);
        let lifted = lift_kind1(&p, k).unwrap();
        let mut shuffled = lifted.clone();
        shuffled.alpha0.reverse();
        shuffled.alpha1.rotate_left(1);
        let g = ellipsoid_kind2(&lifted).unwrap();
        let h = ellipsoid_kind2(&shuffled).unwrap();
        for z in BoundaryGrid::nodes(128, 0.99) {
            for (a, b) in g.eval(z).unwrap().iter().zip(&h.eval(z).unwrap()) {
                prop_assert!((a - b).norm() < 1e-12);
            }
        }
    }
}
