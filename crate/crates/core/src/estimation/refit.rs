//! Scale and location fits for the Cauchy and Lévy members.

use serde::{Deserialize, Serialize};

use super::check_data;
use crate::data_io::ReturnSeries;
use crate::error::{Result, StableError};
use crate::optimize::{golden_section, nelder_mead, NelderMeadOptions};
use crate::stable_core::StableParams;

/// Maximum-likelihood `(gamma, delta)` with `alpha` and `beta` held fixed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilyFit {
    pub params: StableParams,
    pub log_likelihood: f64,
}

fn median_and_iqr(x: &[f64]) -> (f64, f64) {
    let mut s = x.to_vec();
    s.sort_by(f64::total_cmp);
    let q = |p: f64| super::sample_quantile(&s, p);
    (q(0.5), q(0.75) - q(0.25))
}

fn cauchy_ll(x: &[f64], gamma: f64, delta: f64) -> f64 {
    let n = x.len() as f64;
    let s: f64 = x.iter().map(|&v| ((v - delta) / gamma).powi(2).ln_1p()).sum();
    -n * (std::f64::consts::PI * gamma).ln() - s
}

/// Cauchy (`alpha = 1, beta = 0`) fit.
pub fn fit_cauchy(data: &ReturnSeries) -> Result<FamilyFit> {
    let x = check_data(data, 2)?;
    let (med, iqr) = median_and_iqr(x);
    let g0 = if iqr > 0.0 { 0.5 * iqr } else { x.iter().map(|v| (v - med).abs()).fold(0.0, f64::max) };
    let m = nelder_mead(
        |p| -cauchy_ll(x, g0 * p[1].exp(), med + g0 * p[0]),
        &[0.0, 0.0],
        &[0.1, 0.1],
        NelderMeadOptions {
            max_evals: 4000,
            f_tol: 1e-14,
            x_tol: 1e-10,
        },
    );
    if !m.converged {
        return Err(StableError::Convergence("Cauchy scale/location fit did not converge".into()));
    }
    let (gamma, delta) = (g0 * m.x[1].exp(), med + g0 * m.x[0]);
    Ok(FamilyFit {
        params: StableParams::new(1.0, 0.0, gamma, delta)?,
        log_likelihood: cauchy_ll(x, gamma, delta),
    })
}

/// Lévy log-likelihood for `delta < min(x)`.
fn levy_ll(x: &[f64], gamma: f64, delta: f64) -> f64 {
    let n = x.len() as f64;
    let mut s = 0.0;
    for &v in x {
        let d = v - delta;
        s += 1.5 * d.ln() + 0.5 * gamma / d;
    }
    0.5 * n * (gamma / (2.0 * std::f64::consts::PI)).ln() - s
}

/// Lévy (`alpha = 1/2, beta = 1`) fit. For fixed `delta` the scale has the
/// closed form `gamma = n / sum 1/(x_i - delta)`, leaving a search over
/// `ln(min x - delta)`.
pub fn fit_levy(data: &ReturnSeries) -> Result<FamilyFit> {
    let x = check_data(data, 2)?;
    let lo = x.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = x.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let n = x.len() as f64;
    let profile = |u: f64| {
        let delta = lo - u.exp();
        let gamma = n / x.iter().map(|&v| 1.0 / (v - delta)).sum::<f64>();
        (gamma, delta, levy_ll(x, gamma, delta))
    };
    let span = (hi - lo).max(f64::MIN_POSITIVE);
    let (a, b) = ((span * 1e-12).ln(), (span * 1e6).ln());
    // Coarse scan to locate the basin, then golden section inside it.
    let steps = 400;
    let (mut best_i, mut best) = (0, f64::NEG_INFINITY);
    for i in 0..=steps {
        let u = a + (b - a) * i as f64 / steps as f64;
        let ll = profile(u).2;
        if ll > best {
            best = ll;
            best_i = i;
        }
    }
    let h = (b - a) / steps as f64;
    let c = a + h * best_i as f64;
    let (u, _) = golden_section(|u| -profile(u).2, c - h, c + h, 1e-12);
    let (gamma, delta, ll) = profile(u);
    if !(gamma.is_finite() && gamma > 0.0 && ll.is_finite()) {
        return Err(StableError::Convergence("Lévy scale/location fit failed".into()));
    }
    Ok(FamilyFit {
        params: StableParams::new(0.5, 1.0, gamma, delta)?,
        log_likelihood: ll,
    })
}
