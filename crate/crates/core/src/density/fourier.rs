//! Direct inversion of the characteristic function.
//!
//! Slower than the Zolotarev route and only used where that route
//! degenerates (`alpha = 1, beta = 0` when the closed form is bypassed).

use std::f64::consts::{FRAC_1_PI, PI};

use crate::error::Result;
use crate::quad::{integrate, QuadTolerance};
use crate::stable_core::StableParams;

/// Upper integration limit where `exp(-(gamma t)^alpha)` drops below 1e-18.
fn cutoff(p: &StableParams) -> f64 {
    42.0f64.powf(1.0 / p.alpha) / p.gamma
}

/// Location-free copy of `p` and the matching offset `x - delta`.
fn centered(p: &StableParams, x: f64) -> (StableParams, f64) {
    (StableParams { delta: 0.0, ..*p }, x - p.delta)
}

fn breakpoints(t_max: f64, x: f64) -> Vec<f64> {
    let period = if x.abs() > 0.0 { 2.0 * PI / x.abs() } else { t_max };
    let pieces = ((t_max / period).ceil() as usize).clamp(1, 20_000);
    let step = t_max / pieces as f64;
    (1..pieces).map(|k| k as f64 * step).collect()
}

/// `f(x) = (1/pi) ∫_0^∞ Re[phi(t) e^{-itx}] dt`.
pub(crate) fn pdf(p: &StableParams, x: f64, tol: QuadTolerance) -> Result<f64> {
    let (p, x) = centered(p, x);
    let p = &p;
    let t_max = cutoff(p);
    let bps = breakpoints(t_max, x);
    let r = integrate(
        |t| {
            let phi = p.char_fn(t).unwrap_or_default();
            let (s, c) = (t * x).sin_cos();
            phi.re * c + phi.im * s
        },
        0.0,
        t_max,
        &bps,
        tol,
    )?;
    Ok((FRAC_1_PI * r.value).max(0.0))
}

/// Gil-Pelaez: `F(x) = 1/2 - (1/pi) ∫_0^∞ Im[e^{-itx} phi(t)] / t dt`.
pub(crate) fn cdf(p: &StableParams, x: f64, tol: QuadTolerance) -> Result<f64> {
    let (p, x) = centered(p, x);
    let p = &p;
    let t_max = cutoff(p);
    let bps = breakpoints(t_max, x);
    let r = integrate(
        |t| {
            if t == 0.0 {
                return 0.0;
            }
            let phi = p.char_fn(t).unwrap_or_default();
            let (s, c) = (t * x).sin_cos();
            (phi.im * c - phi.re * s) / t
        },
        0.0,
        t_max,
        &bps,
        tol,
    )?;
    Ok((0.5 - FRAC_1_PI * r.value).clamp(0.0, 1.0))
}
