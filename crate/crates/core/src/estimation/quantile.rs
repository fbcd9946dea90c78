//! McCulloch's five-quantile estimator.

use super::tables::McCullochTables;
use super::{check_data, FitResult, FitWarning, Method};
use crate::data_io::ReturnSeries;
use crate::error::{Result, StableError};
use crate::stable_core::StableParams;

/// Quantile of order `p` from sorted data, read at 1-based position
/// `p n + 0.5` with linear interpolation and clamped to the sample range.
pub fn sample_quantile(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    let pos = (p * n as f64 + 0.5).clamp(1.0, n as f64);
    let i = pos.floor() as usize;
    let frac = pos - i as f64;
    if i >= n {
        return sorted[n - 1];
    }
    sorted[i - 1] + frac * (sorted[i] - sorted[i - 1])
}

/// `(nu_alpha, nu_beta)` and the five quantiles `x05, x25, x50, x75, x95`.
pub fn mcculloch_statistics(data: &[f64]) -> Result<(f64, f64, [f64; 5])> {
    let mut s = data.to_vec();
    s.sort_by(f64::total_cmp);
    let q = [0.05, 0.25, 0.5, 0.75, 0.95].map(|p| sample_quantile(&s, p));
    let (q05, q25, q50, q75, q95) = (q[0], q[1], q[2], q[3], q[4]);
    if q75 <= q25 || q95 <= q05 {
        return Err(StableError::DegenerateData("zero interquantile range".into()));
    }
    let nu_alpha = (q95 - q05) / (q75 - q25);
    let nu_beta = (q95 + q05 - 2.0 * q50) / (q95 - q05);
    Ok((nu_alpha, nu_beta, q))
}

pub fn fit_quantile(data: &ReturnSeries, tables: &McCullochTables) -> Result<FitResult> {
    let x = check_data(data, 100)?;
    let (nu_a, nu_b, q) = mcculloch_statistics(x)?;
    let mut warnings = Vec::new();

    let (a_lo, a_hi) = tables.psi1.row_range();
    let (_, b_hi) = tables.psi1.col_range();
    let (alpha, beta) = if nu_a < a_lo {
        warnings.push(FitWarning::TableDomain {
            statistic: "nu_alpha".into(),
            value: nu_a,
            clamped_to: a_lo,
        });
        // Near-Gaussian sample: beta is not identified at alpha = 2.
        (2.0, 0.0)
    } else {
        let na = if nu_a > a_hi {
            warnings.push(FitWarning::TableDomain {
                statistic: "nu_alpha".into(),
                value: nu_a,
                clamped_to: a_hi,
            });
            a_hi
        } else {
            nu_a
        };
        let nb = if nu_b.abs() > b_hi {
            warnings.push(FitWarning::TableDomain {
                statistic: "nu_beta".into(),
                value: nu_b,
                clamped_to: b_hi.copysign(nu_b),
            });
            b_hi
        } else {
            nu_b.abs()
        };
        let a = tables.psi1.interpolate(na, nb).clamp(f64::EPSILON, 2.0);
        let b = (tables.psi2.interpolate(na, nb) * nu_b.signum()).clamp(-1.0, 1.0);
        (a, if nu_b == 0.0 { 0.0 } else { b })
    };

    let gamma = (q[3] - q[1]) / tables.phi3.interpolate(alpha, beta.abs());
    let zeta = q[2] + gamma * tables.phi5.interpolate(alpha, beta.abs()) * beta.signum() * (beta != 0.0) as u8 as f64;
    let params = StableParams::new_s0(alpha, beta, gamma, zeta)?.to_s1()?;
    Ok(FitResult {
        params,
        std_errors: None,
        log_likelihood: None,
        method: Method::Quantile,
        n_obs: x.len(),
        converged: true,
        warnings,
    })
}
