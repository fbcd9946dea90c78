//! Location-scale Student-t by maximum likelihood.
//!
//! `(x - location) / scale` follows the standard t law with `dof` degrees
//! of freedom.

use libm::lgamma;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};

use super::check_data;
use crate::data_io::ReturnSeries;
use crate::error::{Result, StableError};
use crate::optimize::{nelder_mead, NelderMeadOptions};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TFitResult {
    pub dof: f64,
    pub location: f64,
    pub scale: f64,
    pub log_likelihood: f64,
}

const MAX_DOF: f64 = 1e8;

pub fn student_t_log_pdf(x: f64, dof: f64, location: f64, scale: f64) -> f64 {
    let z = (x - location) / scale;
    lgamma(0.5 * (dof + 1.0)) - lgamma(0.5 * dof) - 0.5 * (dof * std::f64::consts::PI).ln() - scale.ln()
        - 0.5 * (dof + 1.0) * (z * z / dof).ln_1p()
}

pub fn student_t_cdf(x: f64, dof: f64, location: f64, scale: f64) -> Result<f64> {
    let d = StudentsT::new(location, scale, dof).map_err(|e| StableError::Convergence(format!("Student-t parameters rejected: {e}")))?;
    Ok(d.cdf(x))
}

fn t_ll(x: &[f64], dof: f64, loc: f64, scale: f64) -> f64 {
    let k = lgamma(0.5 * (dof + 1.0)) - lgamma(0.5 * dof) - 0.5 * (dof * std::f64::consts::PI).ln() - scale.ln();
    let s: f64 = x.iter().map(|&v| (((v - loc) / scale).powi(2) / dof).ln_1p()).sum();
    x.len() as f64 * k - 0.5 * (dof + 1.0) * s
}

pub fn fit_student_t(data: &ReturnSeries) -> Result<TFitResult> {
    let x = check_data(data, 20)?;
    let mut s = x.to_vec();
    s.sort_by(f64::total_cmp);
    let med = super::sample_quantile(&s, 0.5);
    let iqr = super::sample_quantile(&s, 0.75) - super::sample_quantile(&s, 0.25);
    let s0 = if iqr > 0.0 { 0.5 * iqr } else { (s[s.len() - 1] - s[0]) * 0.5 };
    let decode = |p: &[f64]| (p[0].exp().min(MAX_DOF), med + s0 * p[1], s0 * p[2].exp());
    let objective = |p: &[f64]| {
        let (dof, loc, scale) = decode(p);
        -t_ll(x, dof, loc, scale)
    };
    let opts = NelderMeadOptions {
        max_evals: 6000,
        f_tol: 1e-14,
        x_tol: 1e-10,
    };
    let mut best = None::<crate::optimize::Minimum>;
    for ln_dof in [0.0f64, 4.0f64.ln(), 30.0f64.ln()] {
        let m = nelder_mead(objective, &[ln_dof, 0.0, 0.0], &[0.3, 0.1, 0.1], opts);
        if best.as_ref().map_or(true, |b| m.value < b.value) {
            best = Some(m);
        }
    }
    let mut m = best.expect("at least one start");
    // Polish from the winner.
    let again = nelder_mead(objective, &m.x, &[0.05, 0.01, 0.01], opts);
    if again.value <= m.value {
        m = again;
    }
    let (dof, location, scale) = decode(&m.x);
    if !(m.value.is_finite() && dof > 0.0 && scale > 0.0) {
        return Err(StableError::Convergence("Student-t fit failed".into()));
    }
    Ok(TFitResult {
        dof,
        location,
        scale,
        log_likelihood: -m.value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_pdf_matches_cauchy_at_one_dof() {
        let lp = student_t_log_pdf(0.7, 1.0, 0.2, 1.5);
        let u: f64 = (0.7 - 0.2) / 1.5;
        let exact = -(std::f64::consts::PI * 1.5 * (1.0 + u * u)).ln();
        assert!((lp - exact).abs() < 1e-13);
    }

    #[test]
    fn cdf_is_symmetric() {
        let a = student_t_cdf(1.3, 3.5, 0.5, 2.0).unwrap();
        let b = student_t_cdf(-0.3, 3.5, 0.5, 2.0).unwrap();
        assert!((a + b - 1.0).abs() < 1e-12);
        assert!((student_t_cdf(0.5, 3.5, 0.5, 2.0).unwrap() - 0.5).abs() < 1e-14);
    }
}
