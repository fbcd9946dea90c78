use proptest::prelude::*;
use stablefit::stable_core::{char_fn, validate};
use stablefit::{Parameterization, StableParams};

fn params() -> impl Strategy<Value = StableParams> {
    (0.05f64..=2.0, -1.0f64..=1.0, 0.01f64..10.0, -10.0f64..10.0)
        .prop_map(|(a, b, g, d)| StableParams::new(a, b, g, d).unwrap())
}

#[test]
fn validate_examples() {
    assert!(StableParams::new(2.0, 0.0, 1.0, 0.0).is_ok());
    let e = StableParams::new(0.0, 0.0, 1.0, 0.0).unwrap_err();
    assert_eq!(e.domain_name(), Some("alpha"));
    let e = StableParams::new(1.5, 1.2, 1.0, 0.0).unwrap_err();
    assert_eq!(e.domain_name(), Some("beta"));
    assert_eq!(StableParams::new(1.5, 0.0, 0.0, 0.0).unwrap_err().domain_name(), Some("gamma"));
    assert_eq!(StableParams::new(1.5, 0.0, 1.0, f64::NAN).unwrap_err().domain_name(), Some("delta"));

    // A hand-built value bypassing the constructor is still checked.
    let raw = StableParams {
        alpha: 2.5,
        beta: 0.0,
        gamma: 1.0,
        delta: 0.0,
        kind: Parameterization::S1,
    };
    assert_eq!(validate(&raw).unwrap_err().domain_name(), Some("alpha"));
    assert!(char_fn(&raw, 1.0).is_err());
}

#[test]
fn char_fn_examples() {
    let g = StableParams::new(2.0, 0.0, 1.0, 0.0).unwrap();
    let v = char_fn(&g, 1.0).unwrap();
    assert!((v.re - (-1.0f64).exp()).abs() < 1e-15 && v.im == 0.0);

    let p = StableParams::new(1.5, 0.5, 1.0, 0.0).unwrap();
    let v = char_fn(&p, 1.0).unwrap();
    // exp(-1 - 0.5i), independently evaluated.
    assert!((v.re - 0.322_844_582_450_033).abs() < 1e-12, "{v}");
    assert!((v.im - (-0.176_370_799_225_032_6)).abs() < 1e-12, "{v}");
    // The five-digit values quoted for this case.
    assert!((v.re - 0.32286).abs() < 5e-5 && (v.im + 0.17637).abs() < 5e-6);
}

#[test]
fn s0_shift_examples() {
    let p = StableParams::new(1.5, 0.5, 2.0, 0.0).unwrap().to_s0().unwrap();
    assert!((p.delta - (-1.0)).abs() < 1e-12);
    assert_eq!(p.kind, Parameterization::S0);
    for a in [0.3, 0.9, 1.0, 1.4, 2.0] {
        let p = StableParams::new(a, 0.0, 3.0, 1.25).unwrap();
        assert_eq!(p.to_s0().unwrap().delta, 1.25);
    }
    for b in [-1.0, -0.3, 0.8] {
        let p = StableParams::new(2.0, b, 3.0, 1.25).unwrap();
        assert_eq!(p.to_s0().unwrap().delta, 1.25);
    }
    // At alpha = 1 the shift is beta (2/pi) gamma ln gamma.
    let p = StableParams::new(1.0, 0.5, 2.0, 0.0).unwrap().to_s0().unwrap();
    assert!((p.delta - 0.5 * std::f64::consts::FRAC_2_PI * 2.0 * 2f64.ln()).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn modulus_bounded_and_conjugate(p in params(), t in -50.0f64..50.0) {
        let v = char_fn(&p, t).unwrap();
        let w = char_fn(&p, -t).unwrap();
        prop_assert!(v.norm() <= 1.0 + 1e-15);
        prop_assert!((v.re - w.re).abs() <= 1e-12 && (v.im + w.im).abs() <= 1e-12);
        if t != 0.0 && (p.gamma * t.abs()).powf(p.alpha) > 1e-12 {
            prop_assert!(v.norm() < 1.0);
        }
    }

    #[test]
    fn unity_at_zero(p in params()) {
        let v = char_fn(&p, 0.0).unwrap();
        prop_assert_eq!((v.re, v.im), (1.0, 0.0));
    }

    #[test]
    fn symmetric_centered_is_real(a in 0.05f64..=2.0, g in 0.01f64..10.0, t in -20.0f64..20.0) {
        let p = StableParams::new(a, 0.0, g, 0.0).unwrap();
        let v = char_fn(&p, t).unwrap();
        prop_assert!(v.im.abs() <= 1e-12);
        prop_assert!((v.re - (-(g * t.abs()).powf(a)).exp()).abs() <= 1e-12);
    }

    #[test]
    fn s0_round_trip(p in params()) {
        let q = p.to_s0().unwrap().from_s0().unwrap();
        prop_assert_eq!(q.kind, Parameterization::S1);
        prop_assert_eq!((q.alpha, q.beta, q.gamma), (p.alpha, p.beta, p.gamma));
        prop_assert!((q.delta - p.delta).abs() <= 1e-12 * (1.0 + p.delta.abs()));
    }

    #[test]
    fn s0_char_fn_matches_s1(p in params(), t in -5.0f64..5.0) {
        // Same law in either convention.
        let a = char_fn(&p, t).unwrap();
        let b = char_fn(&p.to_s0().unwrap(), t).unwrap();
        prop_assert!((a - b).norm() <= 1e-9);
    }
}
