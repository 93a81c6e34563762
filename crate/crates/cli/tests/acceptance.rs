//! Acceptance criteria 1–10, one PASS/FAIL line each. Runs without the
//! libtest harness; the process exits nonzero if any criterion fails.

use std::f64::consts::E;
use std::process::Command;
use std::time::{Duration, Instant};

use koblab_core::catalog::{
    ellipsoid_kind1, ellipsoid_kind2, exact_kobayashi_disc, lift_kind1, odd_order_lift, yu_parametric_disc,
    yu_simple_disc, EllipsoidKind1Params, ExactKobayashiParams, YuDisc, YuDiscParams,
};
use koblab_core::holo::{BoundaryGrid, Disc};
use koblab_core::metrics::{
    degree_sweep, exact_kobayashi_estimate, scalar_target, upper_bound_search, verify_jet, SearchConfig,
};
use koblab_core::schwarz::{run_suite, Lemma, SuiteConfig};
use koblab_core::stationarity::{verify_k_stationary, verify_k_stationary_with, StationarityConfig};
use koblab_core::{c64, contains_disc, AnalyticDisc, ContainmentConfig, ModelDomain};

struct Outcome {
    passed: bool,
    detail: String,
}

fn within(elapsed: Duration, limit_s: f64) -> bool {
    elapsed.as_secs_f64() < limit_s
}

/// `(max ρ∘f at radius 0.999, jet satisfied to 1e-10, 1/r)` at `M = 4096`.
fn certify_yu(disc: &AnalyticDisc, k: usize) -> (f64, bool, f64) {
    let report = contains_disc(&ModelDomain::YuDomain, disc, &ContainmentConfig::default()).unwrap();
    let at = report.ladder.iter().find(|s| s.radius == 0.999).expect("ladder has 0.999").max_rho;
    let jet = verify_jet(disc, &YuDisc::target().with_order(k)).unwrap();
    (at, jet.satisfied(1e-10), 1.0 / jet.r.norm())
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let d = yu_parametric_disc(YuDiscParams::optimal()).unwrap();
    let (max_rho, jet_ok, bound) = certify_yu(&d.disc, 3);
    let closed = (8.0 * std::f64::consts::PI / (1.0 - (-2.0 * std::f64::consts::PI).exp())).powf(-1.0 / 3.0);
    let el = t.elapsed();
    Outcome {
        passed: max_rho < -1e-9 && jet_ok && format!("{bound:.4}") == "0.3412" && (bound - closed).abs() < 1e-12 && within(el, 5.0),
        detail: format!("1/r = {bound:.10} (closed form {closed:.10}), max ρ = {max_rho:.3e}, jets ok = {jet_ok}, {el:.2?}"),
    }
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let d = yu_simple_disc();
    let (max_rho, jet_ok, bound) = certify_yu(&d.disc, 3);
    let expected = 2f64.powf(-1.0 / 3.0);
    let el = t.elapsed();
    Outcome {
        passed: max_rho < -1e-9 && jet_ok && (bound - expected).abs() < 1e-12 && format!("{bound:.4}") == "0.7937" && within(el, 5.0),
        detail: format!("1/r = {bound:.10}, max ρ = {max_rho:.3e}, jets ok = {jet_ok}, {el:.2?}"),
    }
}

fn criterion_3() -> Outcome {
    let f = yu_parametric_disc(YuDiscParams::optimal()).unwrap().disc;
    let g = odd_order_lift(&f).unwrap();
    let (_, f_ok, bf) = certify_yu(&f, 3);
    let (max_rho, g_ok, bg) = certify_yu(&g, 5);
    let cfg = ContainmentConfig::default();
    let domain = ModelDomain::YuDomain;
    let mut points = 0;
    let mut bad = 0;
    for &r in &cfg.ladder {
        for z in BoundaryGrid::nodes(cfg.grid, r) {
            points += 1;
            if domain.rho(&g.eval(z).unwrap()).unwrap() >= domain.rho(&f.eval(z).unwrap()).unwrap() {
                bad += 1;
            }
        }
    }
    Outcome {
        passed: f_ok && g_ok && max_rho < -1e-9 && bg <= bf && (bg - bf).abs() < 1e-12 && bad == 0,
        detail: format!("K⁵ bound {bg:.12} vs K³ bound {bf:.12}; ρ∘g ≥ ρ∘f at {bad}/{points} points"),
    }
}

fn criterion_4() -> Outcome {
    let t = Instant::now();
    let cfg = SearchConfig::default();
    let one = c64(1.0, 0.0);
    let mut worst: f64 = 0.0;
    let mut lines = Vec::new();
    for p in [c64(0.0, 0.0), c64(0.3, 0.0), c64(0.0, 0.6)] {
        for k in 1..=3 {
            let exact = 1.0 / (1.0 - p.norm_sqr());
            let v = upper_bound_search(&ModelDomain::UnitDisc, &scalar_target(p, one, k).unwrap(), &cfg, &[]).unwrap().estimate.value;
            worst = worst.max((v - exact).abs() / exact);
        }
    }
    for p in [0.2, 1.0 / E, 0.7] {
        let exact = 1.0 / (-2.0 * p * p.ln());
        let v = upper_bound_search(&ModelDomain::PuncturedDisc, &scalar_target(c64(p, 0.0), one, 1).unwrap(), &cfg, &[])
            .unwrap()
            .estimate
            .value;
        let rel = (v - exact).abs() / exact;
        lines.push(format!("D* p={p:.4}: {rel:.1e}"));
        worst = worst.max(rel);
    }
    let el = t.elapsed();
    Outcome {
        passed: worst <= 0.02 && within(el, 60.0),
        detail: format!("12 targets, worst relative error {worst:.2e} ({}), {el:.2?}", lines.join(", ")),
    }
}

fn criterion_5() -> Outcome {
    let t = Instant::now();
    let cfg = ContainmentConfig::default();
    let mut worst: f64 = 0.0;
    let mut failures = 0;
    for seed in 0..25 {
        let p = ExactKobayashiParams::sample(seed, true);
        match exact_kobayashi_estimate(p, &cfg) {
            Ok((est, disc)) => {
                let jet = verify_jet(&disc, &p.target()).unwrap();
                let expected = p.a.norm() * p.t.powf(-0.25);
                // f'(0) = X/(|a|t^{-1/4}) means r = 1/value
                let r_err = (jet.r.norm() - 1.0 / expected).abs();
                worst = worst.max(r_err).max((est.value - expected).abs()).max(jet.base_error).max(jet.parallel_defect);
            }
            Err(_) => failures += 1,
        }
    }
    let accepted = (0..25).filter(|i| exact_kobayashi_disc(ExactKobayashiParams::sample(1000 + i, false)).is_ok()).count();
    let el = t.elapsed();
    Outcome {
        passed: failures == 0 && accepted == 0 && worst <= 1e-9 && within(el, 30.0),
        detail: format!("feasible failures {failures}/25, infeasible accepted {accepted}/25, worst error {worst:.2e}, {el:.2?}"),
    }
}

fn criterion_6() -> Outcome {
    let t = Instant::now();
    let mut worst_res: f64 = 0.0;
    let mut worst_margin = f64::INFINITY;
    let mut errors = 0;
    for m in [0.2, 0.35, 0.45] {
        for seed in 0..20 {
            let p = EllipsoidKind1Params::sample(seed, m);
            for k in 1..=3 {
                match verify_k_stationary(&p, k) {
                    Ok(r) => {
                        worst_res = worst_res.max(r.residual);
                        worst_margin = worst_margin.min(r.positivity_margin);
                    }
                    Err(_) => errors += 1,
                }
            }
        }
    }
    let mut control = f64::INFINITY;
    for m in [0.2, 0.35, 0.45] {
        for k in 1..=3 {
            let p = EllipsoidKind1Params::sample(0, m);
            match verify_k_stationary_with(&p, k, true, &StationarityConfig::default()) {
                Ok(r) => control = control.min(r.residual),
                Err(_) => errors += 1,
            }
        }
    }
    let el = t.elapsed();
    Outcome {
        passed: errors == 0 && worst_res < 1e-8 && worst_margin > 1e-6 && control > 1e-3 && within(el, 120.0),
        detail: format!(
            "180 maps: max residual {worst_res:.2e}, min margin {worst_margin:.3e}; control min residual {control:.3e}; errors {errors}, {el:.2?}"
        ),
    }
}

fn criterion_7() -> Outcome {
    let nodes = BoundaryGrid::nodes(4096, 1.0);
    let mut sup: f64 = 0.0;
    let mut identity: f64 = 0.0;
    for seed in 0..50u64 {
        let m = [0.2, 0.35, 0.45, 0.6, 0.8][seed as usize % 5];
        let k = 2 + seed as usize % 3;
        let p = EllipsoidKind1Params::sample(seed, m);
        let lifted = lift_kind1(&p, k).unwrap();
        identity = identity.max(lifted.identity_residual());
        let g = ellipsoid_kind2(&lifted).unwrap();
        let f = ellipsoid_kind1(&p).unwrap().compose_power(k);
        for &z in &nodes {
            for (a, b) in g.eval(z).unwrap().iter().zip(&f.eval(z).unwrap()) {
                sup = sup.max((a - b).norm());
            }
        }
    }
    Outcome {
        passed: sup <= 1e-9 && identity < 1e-10,
        detail: format!("50 sets: sup-norm gap {sup:.2e}, identity residual {identity:.2e}"),
    }
}

fn criterion_8() -> Outcome {
    let t = Instant::now();
    let mut runs = vec![SuiteConfig::new(Lemma::Basic, 2, 1000, 11), SuiteConfig::new(Lemma::Punctured, 2, 1000, 13)];
    for (i, base) in [c64(0.0, 0.0), c64(0.4, 0.2), c64(-0.7, 0.0)].into_iter().enumerate() {
        runs.push(SuiteConfig::new(Lemma::Pick, 1 + i, 1000, 17 + i as u64).with_base(base));
    }
    let mut ok = true;
    let mut parts = Vec::new();
    for cfg in &runs {
        let (s, _) = run_suite(cfg).unwrap();
        ok &= s.violations == 0
            && s.max_violation <= 1e-8
            && s.equality_confirmed == s.equality_constructed
            && s.unexpected_equalities == 0
            && s.max_reconstruction_error <= 1e-7;
        parts.push(format!(
            "{:?}@{}: viol {:.1e}, eq {}/{}, recon {:.1e}",
            cfg.lemma, cfg.base, s.max_violation, s.equality_confirmed, s.equality_constructed, s.max_reconstruction_error
        ));
    }
    let el = t.elapsed();
    Outcome { passed: ok && within(el, 60.0), detail: format!("{}; {el:.2?}", parts.join("; ")) }
}

fn criterion_9() -> Outcome {
    let t = Instant::now();
    let rows =
        degree_sweep(&ModelDomain::YuDomain, &YuDisc::target().with_order(2), &[4, 8, 12, 16], &SearchConfig::default(), &[])
            .unwrap();
    let values: Vec<f64> = rows.iter().map(|(r, _)| r.value).collect();
    let strict = values.windows(2).all(|w| w[1] < w[0]);
    let last = values[values.len() - 1];
    Outcome {
        passed: strict && last < 0.9,
        detail: format!("K² bounds at N = 4, 8, 12, 16: {values:?} (trend check), {:.2?}", t.elapsed()),
    }
}

fn criterion_10() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_koblab");
    let commands: [&[&str]; 4] = [
        &["schwarz", "--lemma", "pick", "--k", "2", "--samples", "300", "--seed", "7", "--base", "0.4+0.2i"],
        &["estimate", "--domain", "unit_disc", "--p", "0.3", "--k", "2", "--seed", "3", "--restarts", "3", "--degree", "8"],
        &["verify-paper", "--only", "yu-optimal,exact-kobayashi,kind2-lift", "--seed", "5"],
        &["sweep", "feasibility", "--t", "0.1:0.9:5", "--ratio", "0:2:9"],
    ];
    let mut mismatched = Vec::new();
    for args in commands {
        let run = |threads: &str| Command::new(bin).args(args).env("KOBLAB_THREADS", threads).output().expect("spawn koblab");
        let (a, b, c) = (run("1"), run("1"), run("3"));
        if a.stdout.is_empty() || a.stdout != b.stdout || a.stdout != c.stdout {
            mismatched.push(args[0]);
        }
    }
    Outcome {
        passed: mismatched.is_empty(),
        detail: format!("4 seeded commands rerun (1 and 3 threads); mismatched: {mismatched:?}"),
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("optimal Yu disc bound ≈ 0.3412", criterion_1),
        ("simple Yu disc bound 2^{-1/3}", criterion_2),
        ("odd-order lift keeps r and lowers ρ", criterion_3),
        ("search calibration on D and D*", criterion_4),
        ("exact Kobayashi value and rejection", criterion_5),
        ("k-stationarity of first-family maps", criterion_6),
        ("lifting identity", criterion_7),
        ("Schwarz suites", criterion_8),
        ("even-order monotone trend", criterion_9),
        ("determinism", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.into_iter().enumerate() {
        let o = f();
        if !o.passed {
            failed += 1;
        }
        println!("[{}] criterion {:>2}: {name}: {}", if o.passed { "PASS" } else { "FAIL" }, i + 1, o.detail);
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
