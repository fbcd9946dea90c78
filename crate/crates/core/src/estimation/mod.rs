//! Stable-parameter estimators and the Student-t comparison fit.
//!
//! All estimators return parameters in S1 form. Only maximum likelihood
//! reports standard errors and a log-likelihood.

mod ecf;
mod likelihood;
mod mle;
mod quantile;
mod refit;
mod student_t;
pub mod tables;

use serde::{Deserialize, Serialize};

pub use ecf::{ecf_regression, fit_ecf, EcfEstimate, ECF_GRID};
pub use likelihood::log_likelihood;
pub use mle::{fit_mle, fit_mle_with, information, Information, MleOptions};
pub use quantile::{fit_quantile, mcculloch_statistics, sample_quantile};
pub use refit::{fit_cauchy, fit_levy, FamilyFit};
pub use student_t::{fit_student_t, student_t_cdf, student_t_log_pdf, TFitResult};
pub use tables::McCullochTables;

use crate::data_io::ReturnSeries;
use crate::error::{Result, StableError};
use crate::stable_core::StableParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Mle,
    Quantile,
    Ecf,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Mle, Method::Quantile, Method::Ecf];

    pub fn label(self) -> &'static str {
        match self {
            Method::Mle => "ML Estimator",
            Method::Quantile => "Quantile Based",
            Method::Ecf => "Sample Characteristic",
        }
    }
}

/// Conditions met while fitting that did not prevent a result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FitWarning {
    /// A McCulloch statistic fell outside the table and was clamped.
    TableDomain { statistic: String, value: f64, clamped_to: f64 },
    /// An estimate left the admissible box and was clamped.
    Clamped { parameter: String, value: f64, clamped_to: f64 },
    /// The observed information was not positive definite.
    NoStandardErrors,
}

/// Standard errors in parameter order (alpha, beta, gamma, delta).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StdErrors {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub params: StableParams,
    pub std_errors: Option<StdErrors>,
    pub log_likelihood: Option<f64>,
    pub method: Method,
    pub n_obs: usize,
    pub converged: bool,
    pub warnings: Vec<FitWarning>,
}

/// Shared input checks: enough finite, non-constant observations.
pub(crate) fn check_data(data: &ReturnSeries, needed: usize) -> Result<&[f64]> {
    let x = data.as_slice();
    if x.len() < needed {
        return Err(StableError::InsufficientData {
            needed,
            got: x.len(),
        });
    }
    if let Some(v) = x.iter().find(|v| !v.is_finite()) {
        return Err(StableError::DegenerateData(format!("non-finite observation {v}")));
    }
    if x.iter().all(|&v| v == x[0]) {
        return Err(StableError::DegenerateData("all observations are equal".into()));
    }
    Ok(x)
}

pub(crate) fn clamp_param(name: &str, value: f64, lo: f64, hi: f64, warnings: &mut Vec<FitWarning>) -> f64 {
    let c = value.clamp(lo, hi);
    if c != value {
        warnings.push(FitWarning::Clamped {
            parameter: name.into(),
            value,
            clamped_to: c,
        });
    }
    c
}
