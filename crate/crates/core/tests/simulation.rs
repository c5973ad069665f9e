#![allow(clippy::approx_constant)]

use evidencia_core::criteria::{log_bf_robust_exact, robust_bic_large_k, Criterion};
use evidencia_core::simlab::{
    analytic_estimates, cosine_design, generate_draw, run_success_experiment, SimConfig,
    SuccessTable, SumMoments, DEFAULT_SEED,
};

const WEAK_ROBUST: [f64; 32] = [
    0.259, 0.22, 0.201, 0.195, 0.193, 0.19, 0.187, 0.187, 0.187, 0.184, 0.187, 0.187, 0.186, 0.185,
    0.185, 0.189, 0.188, 0.187, 0.193, 0.191, 0.192, 0.192, 0.193, 0.198, 0.197, 0.2, 0.204, 0.209,
    0.216, 0.232, 0.258, 0.318,
];
const WEAK_AIC: [f64; 32] = [
    0.306, 0.257, 0.229, 0.217, 0.207, 0.2, 0.193, 0.192, 0.187, 0.182, 0.185, 0.182, 0.178, 0.177,
    0.176, 0.177, 0.174, 0.172, 0.175, 0.176, 0.174, 0.171, 0.171, 0.175, 0.173, 0.173, 0.174,
    0.175, 0.177, 0.189, 0.201, 0.236,
];
const WEAK_BIC: [f64; 32] = [
    0.27, 0.19, 0.149, 0.125, 0.108, 0.096, 0.086, 0.078, 0.072, 0.066, 0.063, 0.059, 0.055, 0.052,
    0.048, 0.048, 0.044, 0.041, 0.039, 0.039, 0.037, 0.035, 0.033, 0.032, 0.031, 0.029, 0.029,
    0.028, 0.026, 0.025, 0.025, 0.026,
];
const WEAK_AICC: [f64; 32] = [
    0.328, 0.287, 0.285, 0.21, 0.176, 0.155, 0.145, 0.106, 0.086, 0.072, 0.051, 0.037, 0.022,
    0.015, 0.007, 0.003, 0.002, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0,
    0.0, 0.0,
];
const STRONG_ROBUST: [f64; 32] = [
    0.884, 0.892, 0.897, 0.901, 0.902, 0.898, 0.9, 0.902, 0.901, 0.903, 0.901, 0.901, 0.904, 0.902,
    0.902, 0.901, 0.903, 0.902, 0.901, 0.902, 0.902, 0.902, 0.9, 0.903, 0.903, 0.904, 0.903, 0.903,
    0.903, 0.909, 0.925, 0.987,
];
const STRONG_AIC: [f64; 32] = [
    0.707, 0.708, 0.707, 0.71, 0.705, 0.708, 0.708, 0.709, 0.709, 0.709, 0.708, 0.71, 0.71, 0.708,
    0.709, 0.707, 0.713, 0.707, 0.709, 0.712, 0.71, 0.715, 0.712, 0.719, 0.719, 0.727, 0.734,
    0.736, 0.753, 0.783, 0.841, 0.994,
];
const STRONG_BIC: [f64; 32] = [
    0.906, 0.904, 0.904, 0.906, 0.906, 0.902, 0.903, 0.905, 0.904, 0.907, 0.904, 0.904, 0.906,
    0.905, 0.905, 0.905, 0.906, 0.904, 0.905, 0.905, 0.904, 0.904, 0.903, 0.906, 0.906, 0.906,
    0.905, 0.905, 0.906, 0.911, 0.927, 0.987,
];
const STRONG_AICC: [f64; 32] = [
    0.759, 0.792, 0.878, 0.878, 0.881, 0.888, 0.932, 0.929, 0.933, 0.955, 0.948, 0.958, 0.949,
    0.958, 0.932, 0.932, 0.917, 0.877, 0.824, 0.765, 0.666, 0.521, 0.329, 0.153, 0.031, 0.001, 0.0,
    0.0, 0.0, 0.0, 0.0, 0.0,
];

const REPLICATES: u64 = 4096;

fn table(a: f64) -> SuccessTable {
    run_success_experiment(&SimConfig::new(32, a, 1.0, REPLICATES, DEFAULT_SEED).unwrap()).unwrap()
}

fn assert_within_four_se(t: &SuccessTable, c: Criterion, reference: &[f64; 32], ks: &[usize]) {
    for &s in ks {
        let p = reference[s - 1];
        let se = (p * (1.0 - p) / REPLICATES as f64)
            .sqrt()
            .max(0.5 / REPLICATES as f64);
        let got = t.rate(c, s).unwrap();
        assert!(
            (got - p).abs() <= 4.0 * se,
            "{c} at Ksim={s}: {got} vs {p} (se {se:.4})"
        );
    }
}

const MID_AND_UPPER: [usize; 4] = [8, 16, 24, 32];

#[test]
fn weak_signal_success_rates() {
    let t = table(1.0);
    assert_within_four_se(&t, Criterion::RobustLargeK, &WEAK_ROBUST, &MID_AND_UPPER);
    assert_within_four_se(&t, Criterion::Aic, &WEAK_AIC, &MID_AND_UPPER);
    assert_within_four_se(&t, Criterion::Bic, &WEAK_BIC, &MID_AND_UPPER);
    assert_within_four_se(&t, Criterion::Aicc, &WEAK_AICC, &MID_AND_UPPER);
    for c in [Criterion::Aic, Criterion::RobustLargeK] {
        assert!(
            t.rate(c, 1).unwrap() > t.rate(c, 8).unwrap(),
            "{c} lacks the edge rise"
        );
    }
}

#[test]
fn strong_signal_success_rates() {
    let t = table(5.0);
    assert_within_four_se(&t, Criterion::RobustLargeK, &STRONG_ROBUST, &MID_AND_UPPER);
    assert_within_four_se(&t, Criterion::Aic, &STRONG_AIC, &MID_AND_UPPER);
    assert_within_four_se(&t, Criterion::Bic, &STRONG_BIC, &MID_AND_UPPER);
    assert_within_four_se(&t, Criterion::Aicc, &STRONG_AICC, &MID_AND_UPPER);
    assert!(t.rate(Criterion::RobustLargeK, 8).unwrap() >= 0.85);
}

#[test]
fn aic_at_one_term_ignores_the_signal() {
    // Selecting K = 1 on S = 1 data depends on the noise modes alone.
    let weak = table(1.0);
    let strong = table(5.0);
    assert_eq!(weak.rate(Criterion::Aic, 1), strong.rate(Criterion::Aic, 1));
    assert_eq!(
        weak.rate(Criterion::Aicc, 1),
        strong.rate(Criterion::Aicc, 1)
    );
}

#[test]
fn replicate_means_match_expectations() {
    let n = 32;
    let x = cosine_design(n);
    for a in [1.0, 5.0] {
        let cfg = SimConfig::new(n, a, 1.0, REPLICATES, 17).unwrap();
        let mut m = SumMoments::new(n);
        for r in 0..REPLICATES {
            m.add(&generate_draw(&cfg, &x, r));
        }
        for s in [1, 8, 16, 32] {
            let (mean, se) = m.z_sq(s);
            let e = analytic_estimates(a, 1.0, n, s, 1).unwrap();
            assert!(
                (mean - e.e_z_sq).abs() <= 3.0 * se,
                "z² a={a} S={s}: {mean} vs {}",
                e.e_z_sq
            );
            for k in [4, 8, 12] {
                let e = analytic_estimates(a, 1.0, n, s, k).unwrap();
                let (f, fse) = m.f_sq(k, s);
                assert!(
                    (f - e.e_f_sq).abs() <= 3.0 * fse,
                    "F² a={a} K={k} S={s}: {f} vs {}",
                    e.e_f_sq
                );
                let (c, cse) = m.chi_sq(k, s);
                assert!(
                    (c - e.e_chi_sq).abs() <= 3.0 * cse,
                    "χ² a={a} K={k} S={s}: {c} vs {}",
                    e.e_chi_sq
                );
            }
        }
    }
}

#[test]
fn exact_and_large_k_forms_differ_by_a_shift() {
    let n = 32;
    let x = cosine_design(n);
    for a in [1.0, 3.0] {
        let cfg = SimConfig::new(n, a, 0.0, 256, DEFAULT_SEED).unwrap();
        let mut gaps = Vec::with_capacity(256);
        for r in 0..256 {
            let sums = generate_draw(&cfg, &x, r).mode_sums(8);
            let pairs: Vec<(f64, f64)> = (4..=12)
                .map(|k| {
                    let exact =
                        -2.0 * log_bf_robust_exact(sums.f_sq[k - 1], sums.z_sq, k, n).unwrap();
                    let large =
                        robust_bic_large_k(sums.chi_sq[k - 1], sums.f_sq[k - 1], k).unwrap();
                    (exact, large)
                })
                .collect();
            let shift = pairs.iter().map(|(e, l)| e - l).sum::<f64>() / pairs.len() as f64;
            let gap = pairs
                .iter()
                .map(|(e, l)| (e - l - shift).abs() / l.abs())
                .fold(0.0, f64::max);
            gaps.push(gap);
        }
        gaps.sort_by(f64::total_cmp);
        let (median, worst) = (gaps[128], gaps[255]);
        assert!(median < 0.01, "a={a}: median relative gap {median}");
        if a == 3.0 {
            assert!(worst < 0.01, "a={a}: relative gap {worst}");
        }
    }
}

#[test]
fn analytic_curves_exact_and_large_k_agree() {
    for a in [1.0, 3.0] {
        let curve = evidencia_core::simlab::criterion_curves(a, 0.0, 32, 8, 4, 12).unwrap();
        let shift = curve
            .iter()
            .map(|p| p.robust_exact - p.robust_large_k)
            .sum::<f64>()
            / curve.len() as f64;
        for p in &curve {
            let gap = (p.robust_exact - p.robust_large_k - shift).abs() / p.robust_large_k.abs();
            assert!(gap < 0.01, "a={a} K={}: {gap}", p.k);
        }
    }
}
