//! Regression on the empirical characteristic function (Kogon-Williams form).

use std::f64::consts::FRAC_2_PI;

use num_complex::Complex64;

use super::quantile::fit_quantile;
use super::tables::McCullochTables;
use super::{check_data, clamp_param, FitResult, FitWarning, Method};
use crate::data_io::ReturnSeries;
use crate::error::{Result, StableError};
use crate::stable_core::{is_alpha_one, tan_half_pi_alpha, StableParams};

/// Evaluation points `0.1, 0.2, ..., 1.0` on the standardized scale.
pub const ECF_GRID: [f64; 10] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0];

/// Raw regression estimates before any clamping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EcfEstimate {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    /// S0 location.
    pub delta0: f64,
}

fn least_squares_line(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let slope = sxy / sxx;
    (my - slope * mx, slope)
}

/// Fits `(alpha, beta, gamma, delta0)` to characteristic-function values.
///
/// Modulus: `ln(-ln|phi|^2) = ln(2 gamma^alpha) + alpha ln t`.
/// Phase: `arg phi = delta0 t + beta eta(t)`, no intercept.
pub fn ecf_regression(ts: &[f64], phi: &[Complex64]) -> Result<EcfEstimate> {
    if ts.len() != phi.len() || ts.len() < 3 {
        return Err(StableError::DegenerateData("need at least three grid points".into()));
    }
    let mut lx = Vec::with_capacity(ts.len());
    let mut ly = Vec::with_capacity(ts.len());
    for (&t, z) in ts.iter().zip(phi) {
        let m2 = z.norm_sqr();
        if t > 0.0 && m2 > 0.0 && m2 < 1.0 {
            lx.push(t.ln());
            ly.push((-m2.ln()).ln());
        }
    }
    if lx.len() < 2 {
        return Err(StableError::DegenerateData(
            "empirical characteristic function has no usable modulus".into(),
        ));
    }
    let (icept, alpha) = least_squares_line(&lx, &ly);
    let gamma = (0.5 * icept.exp()).powf(1.0 / alpha);
    if !(alpha.is_finite() && gamma.is_finite() && gamma > 0.0) {
        return Err(StableError::DegenerateData("modulus regression failed".into()));
    }

    // arg is continuous along the grid; unwrap successive jumps.
    let mut phases = Vec::with_capacity(ts.len());
    let mut prev = 0.0;
    for z in phi {
        let mut a = z.arg();
        while a - prev > std::f64::consts::PI {
            a -= 2.0 * std::f64::consts::PI;
        }
        while a - prev < -std::f64::consts::PI {
            a += 2.0 * std::f64::consts::PI;
        }
        phases.push(a);
        prev = a;
    }
    let eta = |t: f64| {
        let gt = gamma * t;
        if is_alpha_one(alpha) {
            -FRAC_2_PI * gt * gt.ln()
        } else {
            tan_half_pi_alpha(alpha) * gt * ((alpha - 1.0) * gt.ln()).exp_m1()
        }
    };
    let (mut stt, mut ste, mut see, mut sty, mut sey) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (&t, &y) in ts.iter().zip(&phases) {
        let e = eta(t);
        stt += t * t;
        ste += t * e;
        see += e * e;
        sty += t * y;
        sey += e * y;
    }
    let det = stt * see - ste * ste;
    let (delta0, beta) = if det.abs() > 1e-14 * stt * see && see > 0.0 {
        ((see * sty - ste * sey) / det, (stt * sey - ste * sty) / det)
    } else {
        // beta is not identified (alpha = 2 or gamma t = 1 throughout).
        (sty / stt, 0.0)
    };
    Ok(EcfEstimate {
        alpha,
        beta,
        gamma,
        delta0,
    })
}

/// Sample characteristic function on `ts`.
fn empirical_cf(x: &[f64], ts: &[f64]) -> Vec<Complex64> {
    let n = x.len() as f64;
    ts.iter()
        .map(|&t| {
            let (s, c) = x.iter().fold((0.0, 0.0), |(s, c), &v| {
                let (sv, cv) = (t * v).sin_cos();
                (s + sv, c + cv)
            });
            Complex64::new(c / n, s / n)
        })
        .collect()
}

pub fn fit_ecf(data: &ReturnSeries) -> Result<FitResult> {
    let x = check_data(data, 100)?;
    let start = fit_quantile(data, &McCullochTables::embedded())?.params.to_s0()?;
    let (scale, shift) = (start.gamma, start.delta);
    let z: Vec<f64> = x.iter().map(|v| (v - shift) / scale).collect();
    let est = ecf_regression(&ECF_GRID, &empirical_cf(&z, &ECF_GRID))?;

    let mut warnings: Vec<FitWarning> = Vec::new();
    let alpha = clamp_param("alpha", est.alpha, 0.1, 2.0, &mut warnings);
    let beta = clamp_param("beta", est.beta, -1.0, 1.0, &mut warnings);
    let params = StableParams::new_s0(alpha, beta, est.gamma * scale, shift + scale * est.delta0)?.to_s1()?;
    Ok(FitResult {
        params,
        std_errors: None,
        log_likelihood: None,
        method: Method::Ecf,
        n_obs: x.len(),
        converged: true,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_inputs_are_recovered() {
        for &(a, b, g, d) in &[(1.5, 0.0, 1.0, 0.0), (1.3, 0.4, 0.8, 0.2), (0.8, -0.5, 1.2, -0.1), (1.0, 0.3, 1.1, 0.05)] {
            let p = StableParams::new_s0(a, b, g, d).unwrap();
            let phi: Vec<Complex64> = ECF_GRID.iter().map(|&t| p.char_fn(t).unwrap()).collect();
            let e = ecf_regression(&ECF_GRID, &phi).unwrap();
            assert!((e.alpha - a).abs() < 1e-9, "{e:?}");
            assert!((e.gamma - g).abs() < 1e-9, "{e:?}");
            assert!((e.beta - b).abs() < 1e-7, "{e:?}");
            assert!((e.delta0 - d).abs() < 1e-7, "{e:?}");
        }
    }
}
