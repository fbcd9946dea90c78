use std::f64::consts::PI;

use proptest::prelude::*;
use stablefit::density::{cdf_generic, pdf_generic};
use stablefit::quad::{integrate, QuadTolerance};
use stablefit::{cdf, pdf, quantile, std_normal_cdf, EvalOptions, StableParams};

fn opts() -> EvalOptions {
    EvalOptions::default()
}

fn sp(a: f64, b: f64, g: f64, d: f64) -> StableParams {
    StableParams::new(a, b, g, d).unwrap()
}

#[test]
fn pdf_examples() {
    let o = opts();
    assert!((pdf(&sp(1.0, 0.0, 1.0, 0.0), 0.0, &o).unwrap() - 1.0 / PI).abs() < 1e-15);
    assert!((pdf(&sp(2.0, 0.0, 1.0, 0.0), 0.0, &o).unwrap() - 0.5 / PI.sqrt()).abs() < 1e-15);
    let levy = (0.5 / PI).sqrt() * (-0.5f64).exp();
    assert!((pdf(&sp(0.5, 1.0, 1.0, 0.0), 1.0, &o).unwrap() - levy).abs() < 1e-15);
    assert!((levy - 0.241971).abs() < 1e-6);
}

#[test]
fn cdf_examples() {
    let o = opts();
    for g in [0.5, 1.0, 3.0] {
        assert!((cdf(&sp(1.0, 0.0, g, 0.0), g, &o).unwrap() - 0.75).abs() < 1e-15);
    }
    for a in [0.5, 0.9, 1.0, 1.3, 1.8, 2.0] {
        let c = cdf(&sp(a, 0.0, 1.7, -0.4), -0.4, &o).unwrap();
        assert!((c - 0.5).abs() < 1e-12, "alpha {a}: {c}");
    }
    let l = cdf(&sp(0.5, 1.0, 1.0, 0.0), 1.0, &o).unwrap();
    assert!((l - 2.0 * (1.0 - std_normal_cdf(1.0))).abs() < 1e-15);
    assert!((l - 0.317311).abs() < 1e-6);
    assert_eq!(cdf(&sp(0.5, 1.0, 1.0, 2.0), 2.0, &o).unwrap(), 0.0);
    assert_eq!(cdf(&sp(0.5, 1.0, 1.0, 2.0), -5.0, &o).unwrap(), 0.0);
    let p = sp(1.3, 0.4, 1.0, 0.0);
    assert_eq!(cdf(&p, f64::NEG_INFINITY, &o).unwrap(), 0.0);
    assert_eq!(cdf(&p, f64::INFINITY, &o).unwrap(), 1.0);
}

#[test]
fn quantile_examples() {
    let o = opts();
    let c = sp(1.0, 0.0, 1.0, 0.0);
    assert!((quantile(&c, 0.75, &o).unwrap() - 1.0).abs() < 1e-12);
    assert!((quantile(&c, 0.95, &o).unwrap() - 6.313_751_514_675_043).abs() < 1e-9);
    for a in [0.7, 1.0, 1.5, 2.0] {
        let p = sp(a, 0.0, 2.0, 0.3);
        assert!((quantile(&p, 0.5, &o).unwrap() - 0.3).abs() < 1e-9);
    }
    assert!(quantile(&c, 0.0, &o).is_err());
    assert!(quantile(&c, 1.0, &o).is_err());
}

#[test]
fn quantile_inverts_cdf() {
    let o = opts();
    for &(a, b) in &[(0.6, 0.9), (1.1, -0.5), (1.5, 0.3), (1.9, 0.0), (1.0, 0.7)] {
        let p = sp(a, b, 1.3, 0.2);
        let mut prev = f64::NEG_INFINITY;
        for &q in &[1e-4, 0.01, 0.05, 0.25, 0.5, 0.75, 0.95, 0.99, 1.0 - 1e-4] {
            let x = quantile(&p, q, &o).unwrap();
            assert!(x > prev, "not increasing at ({a},{b}) p={q}");
            prev = x;
            assert!((cdf(&p, x, &o).unwrap() - q).abs() < 1e-9, "({a},{b}) p={q}");
        }
    }
}

#[test]
fn std_normal_cdf_examples() {
    assert_eq!(std_normal_cdf(0.0), 0.5);
    assert_eq!(std_normal_cdf(40.0), 1.0);
    assert!((std_normal_cdf(1.0) - 0.841_344_746_068_542_9).abs() < 1e-15);
    assert!((std_normal_cdf(-6.0) - 9.865_876_450_376_98e-10).abs() < 1e-22);
}

/// Generic route against the closed forms, 30 points per family.
#[test]
fn closed_form_agreement() {
    let o = opts();
    let cases = [
        (sp(2.0, 0.0, 1.0, 0.0), "gauss"),
        (sp(2.0, 0.0, 0.3, 1.5), "gauss"),
        (sp(1.0, 0.0, 1.0, 0.0), "cauchy"),
        (sp(1.0, 0.0, 2.5, -1.0), "cauchy"),
        (sp(0.5, 1.0, 1.0, 0.0), "levy"),
        (sp(0.5, 1.0, 0.2, 0.4), "levy"),
    ];
    for (p, name) in cases {
        for k in 0..15 {
            let x = p.delta + p.gamma * (-10.0 + 20.0 * (k as f64 + 0.5) / 15.0);
            let (f, fg) = (pdf(&p, x, &o).unwrap(), pdf_generic(&p, x, &o).unwrap());
            let (c, cg) = (cdf(&p, x, &o).unwrap(), cdf_generic(&p, x, &o).unwrap());
            assert!((f - fg).abs() <= 1e-8 * f.max(1e-300) || (f - fg).abs() < 1e-14 / p.gamma, "{name} pdf x={x}: {f} vs {fg}");
            assert!((c - cg).abs() <= 1e-8, "{name} cdf x={x}: {c} vs {cg}");
        }
    }
}

fn grid() -> Vec<(f64, f64)> {
    let mut g = Vec::new();
    for a in [0.6, 1.0, 1.3, 1.7, 2.0] {
        for b in [-0.9, 0.0, 0.9] {
            g.push((a, b));
        }
    }
    g
}

#[test]
fn normalization() {
    let o = opts();
    let tol = QuadTolerance {
        rel_tol: 1e-10,
        abs_tol: 1e-13,
        max_subdivisions: 1000,
    };
    let probs = [1e-6, 1e-4, 0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99, 1.0 - 1e-4, 1.0 - 1e-6];
    for (a, b) in grid() {
        let p = sp(a, b, 1.0, 0.0);
        let knots: Vec<f64> = probs.iter().map(|&q| quantile(&p, q, &o).unwrap()).collect();
        let mut mass = cdf(&p, knots[0], &o).unwrap() + 1.0 - cdf(&p, knots[knots.len() - 1], &o).unwrap();
        for w in knots.windows(2) {
            mass += integrate(|x| pdf(&p, x, &o).unwrap(), w[0], w[1], &[], tol).unwrap().value;
        }
        assert!((mass - 1.0).abs() < 1e-5, "({a},{b}) mass {mass}");
    }
}

#[test]
fn cdf_derivative_matches_pdf() {
    let o = opts();
    for (a, b) in grid() {
        let p = sp(a, b, 1.0, 0.0);
        for k in 0..20 {
            let q = 0.025 + 0.05 * k as f64;
            let x = quantile(&p, q, &o).unwrap();
            let h = 1e-4 * (1.0 + x.abs());
            let d = (cdf(&p, x + h, &o).unwrap() - cdf(&p, x - h, &o).unwrap()) / (2.0 * h);
            let f = pdf(&p, x, &o).unwrap();
            assert!((d - f).abs() < 1e-5 * f, "({a},{b}) x={x}: {d} vs {f}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reflection(a in 0.3f64..=2.0, b in -1.0f64..=1.0, g in 0.1f64..5.0, x in -30.0f64..30.0) {
        let o = opts();
        let f = pdf(&sp(a, b, g, 0.0), x, &o).unwrap();
        let r = pdf(&sp(a, -b, g, 0.0), -x, &o).unwrap();
        prop_assert!((f - r).abs() <= 1e-10 * f.max(1e-300), "{} vs {}", f, r);
    }

    #[test]
    fn scale_location(a in 0.3f64..=2.0, b in -1.0f64..=1.0, g in 0.1f64..5.0, d in -3.0f64..3.0, x in -30.0f64..30.0) {
        prop_assume!((a - 1.0).abs() > 1e-3);
        let o = opts();
        let f = pdf(&sp(a, b, g, d), x, &o).unwrap();
        let s = pdf(&sp(a, b, 1.0, 0.0), (x - d) / g, &o).unwrap() / g;
        prop_assert!((f - s).abs() <= 1e-10 * f.max(1e-300), "{} vs {}", f, s);
    }

    #[test]
    fn cdf_monotone(a in 0.3f64..=2.0, b in -1.0f64..=1.0, x in -40.0f64..40.0, dx in 1e-3f64..5.0) {
        let o = opts();
        let p = sp(a, b, 1.0, 0.0);
        let (c0, c1) = (cdf(&p, x, &o).unwrap(), cdf(&p, x + dx, &o).unwrap());
        prop_assert!((0.0..=1.0).contains(&c0) && c1 >= c0, "{} then {}", c0, c1);
    }
}
