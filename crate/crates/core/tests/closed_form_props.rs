use std::f64::consts::{LN_2, PI};

use projmeas::closed_form::*;
use projmeas::quadrature::{integrate_scalar, Tolerance};
use proptest::prelude::*;

const D_MAX: usize = 64;

#[test]
fn information_gain_monotonicity() {
    for d in 1..=D_MAX {
        for r in 1..d {
            assert!(
                info_gain(d, r).unwrap() > info_gain(d, r + 1).unwrap(),
                "r-monotone at d={d}, r={r}"
            );
        }
        for r in 1..=d {
            assert!(
                info_gain(d + 1, r).unwrap() > info_gain(d, r).unwrap(),
                "d-monotone at d={d}, r={r}"
            );
        }
    }
}

#[test]
fn fidelity_monotonicity_and_decay() {
    for d in 1..=D_MAX {
        for r in 1..d {
            assert!(mean_fidelity(d, r).unwrap() < mean_fidelity(d, r + 1).unwrap());
        }
        for r in 1..=d {
            assert!(mean_fidelity(d + 1, r).unwrap() < mean_fidelity(d, r).unwrap());
        }
    }
    for r in [1usize, 3, 10] {
        for eps in [0.1, 0.01, 0.001] {
            let d = ((r + 1) as f64 / eps).floor() as usize + 1;
            assert!(mean_fidelity(d, r).unwrap() < eps);
        }
    }
}

#[test]
fn efficiency_is_decreasing_with_qubit_maximum() {
    let mut best = (0.0, 0, 0);
    for d in 2..=D_MAX {
        for r in 1..d - 1 {
            assert!(
                efficiency(d, r).unwrap() > efficiency(d, r + 1).unwrap(),
                "d={d} r={r}"
            );
        }
        for r in 1..d {
            let e = efficiency(d, r).unwrap();
            assert!(e > 0.0);
            if e > best.0 {
                best = (e, d, r);
            }
        }
    }
    assert_eq!((best.1, best.2), (2, 1));
    assert!((best.0 - 3.0 * (1.0 - 1.0 / (2.0 * LN_2))).abs() < 1e-12);
}

#[test]
fn distinguishable_baseline_dominates() {
    for d in 1..=D_MAX {
        for r in 1..=d {
            let gap = distinguishable_info_gain(d, r).unwrap() - info_gain(d, r).unwrap();
            let expected = (harmonic(d).unwrap() - harmonic(r).unwrap()) / LN_2;
            assert!((gap - expected).abs() < 1e-12);
            if r == d {
                assert_eq!(gap, 0.0);
            } else {
                assert!(gap > 0.0);
            }
        }
    }
}

#[test]
fn limit_is_approached_from_below() {
    let limit = info_gain_limit();
    assert_eq!(format!("{limit:.3}"), "0.610");
    let mut prev_gap = f64::INFINITY;
    for d in [2usize, 3, 5, 10, 100, 1_000, 10_000, 100_000, 2_000_000] {
        let gap = limit - info_gain(d, 1).unwrap();
        assert!(gap > 0.0 && gap < prev_gap, "d={d}");
        prev_gap = gap;
    }
    assert!(limit - info_gain(10_000, 1).unwrap() < 1e-3);
    assert!((limit - info_gain(2, 1).unwrap() - 0.331_296_384_056_578).abs() < 1e-12);
}

fn sine_log_integrand(n: u32) -> impl Fn(f64) -> f64 {
    move |t: f64| {
        let s = t.sin();
        if s <= 0.0 {
            0.0
        } else {
            s.powi(n as i32) * s.log2()
        }
    }
}

#[test]
fn sine_integrals_match_numeric_quadrature() {
    let tol = Tolerance {
        abs: 1e-13,
        rel: 1e-13,
        max_panels: 2000,
    };
    for n in 0..=20u32 {
        let plain = integrate_scalar(|t: f64| t.sin().powi(n as i32), 0.0, PI, tol);
        assert!(
            (sin_power_integral(n) - plain.value[0]).abs() < 1e-8,
            "n={n}"
        );
        let log = integrate_scalar(sine_log_integrand(n), 0.0, PI, tol);
        assert!(
            (sin_power_log_integral(n) - log.value[0]).abs() < 1e-8,
            "n={n}: {} vs {}",
            sin_power_log_integral(n),
            log.value[0]
        );
    }
}

proptest! {
    #[test]
    fn ratio_identities((d, r) in (1usize..=500).prop_flat_map(|d| (Just(d), 1..=d))) {
        let qb = q_bar(d, r).unwrap();
        let info = (q_log_q_bar(d, r).unwrap() - qb * qb.log2()) / qb;
        prop_assert!((info_gain(d, r).unwrap() - info).abs() < 1e-12);
        prop_assert!((mean_fidelity(d, r).unwrap() - q2_bar(d, r).unwrap() / qb).abs() < 1e-12);
        prop_assert!(info_gain(d, r).unwrap() >= 0.0);
        prop_assert!(info_gain(d, r).unwrap() < info_gain_limit());
    }

    #[test]
    fn report_is_consistent((d, r) in (1usize..=100).prop_flat_map(|d| (Just(d), 1..=d)), kappa_sq in 1e-6f64..=1.0) {
        let rep = AnalyticReport::new(d, r, kappa_sq).unwrap();
        prop_assert_eq!(rep.efficiency.is_some(), r < d);
        prop_assert_eq!(rep.info_bits == 0.0, r == d);
        prop_assert_eq!(rep.mean_fidelity == 1.0, r == d);
        prop_assert!(rep.total_prob > 0.0 && rep.total_prob <= 1.0);
        if let Some(e) = rep.efficiency {
            prop_assert!((e - rep.info_bits / (1.0 - rep.mean_fidelity)).abs() < 1e-12);
        }
    }
}
