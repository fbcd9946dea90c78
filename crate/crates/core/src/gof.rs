//! Kolmogorov-Smirnov comparisons and the Jarque-Bera statistic.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::data_io::{ReturnSeries, SummaryStats};
use crate::density::{self, EvalOptions};
use crate::error::{Result, StableError};
use crate::estimation::{fit_cauchy, fit_levy, student_t_cdf, FitResult, TFitResult};
use crate::format::format_sig;
use crate::stable_core::StableParams;

/// Significance levels, in table order.
pub const LEVELS: [f64; 4] = [0.20, 0.10, 0.05, 0.01];
/// Asymptotic Kolmogorov quantiles for [`LEVELS`].
pub const KS_COEFFICIENTS: [f64; 4] = [1.073, 1.224, 1.358, 1.628];
/// Below this size the critical values are flagged as unreliable.
pub const SMALL_SAMPLE: usize = 35;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KsResult {
    pub statistic: f64,
    pub p_value: f64,
    pub n_obs: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalValues {
    pub n: usize,
    pub levels: [f64; 4],
    pub values: [f64; 4],
    pub small_sample: bool,
}

/// `D_n = max_i max(i/n - F(x_(i)), F(x_(i)) - (i-1)/n)`.
pub fn ks_statistic<F>(data: &[f64], mut cdf: F) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if data.is_empty() {
        return Err(StableError::InsufficientData { needed: 1, got: 0 });
    }
    let mut x = data.to_vec();
    x.sort_by(f64::total_cmp);
    let n = x.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &v) in x.iter().enumerate() {
        let f = cdf(v)?;
        if !(0.0..=1.0).contains(&f) {
            return Err(StableError::domain("cdf", f, "0 <= F(x) <= 1"));
        }
        d = d.max((i + 1) as f64 / n - f).max(f - i as f64 / n);
    }
    Ok(d)
}

/// Asymptotic Kolmogorov tail probability `P(sqrt(n) D > sqrt(n) d)`.
///
/// Uses `2 sum (-1)^{k-1} exp(-2 k^2 lambda^2)` with terms dropped below
/// 1e-12. For `lambda < 1` the equivalent theta-function form converges
/// faster and is used instead.
pub fn ks_p_value(statistic: f64, n: usize) -> f64 {
    if !(statistic > 0.0) {
        return 1.0;
    }
    let lambda = (n as f64).sqrt() * statistic;
    let p = if lambda < 1.0 {
        let mut k_sum = 0.0;
        for k in 1..=50 {
            let j = (2 * k - 1) as f64;
            let term = (-j * j * PI * PI / (8.0 * lambda * lambda)).exp();
            k_sum += term;
            if term < 1e-17 {
                break;
            }
        }
        1.0 - (2.0 * PI).sqrt() / lambda * k_sum
    } else {
        let mut s = 0.0;
        for k in 1..=200 {
            let kf = k as f64;
            let term = (-2.0 * kf * kf * lambda * lambda).exp();
            if term < 1e-12 {
                break;
            }
            s += if k % 2 == 1 { term } else { -term };
        }
        2.0 * s
    };
    p.clamp(0.0, 1.0)
}

/// Critical values `c / (sqrt(n) + 0.12 + 0.11 / sqrt(n))` for [`LEVELS`].
pub fn ks_critical_values(n: usize) -> CriticalValues {
    let rn = (n.max(1) as f64).sqrt();
    let denom = rn + 0.12 + 0.11 / rn;
    CriticalValues {
        n,
        levels: LEVELS,
        values: KS_COEFFICIENTS.map(|c| c / denom),
        small_sample: n < SMALL_SAMPLE,
    }
}

/// `JB = n/6 (S^2 + (K - 3)^2 / 4)` with raw kurtosis `K`.
pub fn jarque_bera_from_moments(n: usize, skewness: f64, kurtosis: f64) -> f64 {
    n as f64 / 6.0 * (skewness * skewness + 0.25 * (kurtosis - 3.0).powi(2))
}

pub fn jarque_bera(stats: &SummaryStats) -> f64 {
    jarque_bera_from_moments(stats.n_obs, stats.skewness, stats.kurtosis)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Candidate {
    Stable,
    Cauchy,
    StudentT,
    Levy,
}

impl Candidate {
    pub const ALL: [Candidate; 4] = [Candidate::Stable, Candidate::Cauchy, Candidate::StudentT, Candidate::Levy];

    pub fn label(self) -> &'static str {
        match self {
            Candidate::Stable => "Alpha-Stable",
            Candidate::Cauchy => "Cauchy",
            Candidate::StudentT => "Student-t",
            Candidate::Levy => "Levy",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum CandidateParams {
    Stable(StableParams),
    StudentT { dof: f64, location: f64, scale: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CandidateReport {
    pub candidate: Candidate,
    pub params: CandidateParams,
    pub ks: KsResult,
    /// `statistic < critical value` at each of [`LEVELS`].
    pub not_rejected: [bool; 4],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GofReport {
    pub n_obs: usize,
    pub critical_values: CriticalValues,
    pub candidates: Vec<CandidateReport>,
}

pub fn decisions(statistic: f64, cv: &CriticalValues) -> [bool; 4] {
    cv.values.map(|c| statistic < c)
}

fn candidate(c: Candidate, params: CandidateParams, statistic: f64, cv: &CriticalValues) -> CandidateReport {
    CandidateReport {
        candidate: c,
        params,
        ks: KsResult {
            statistic,
            p_value: ks_p_value(statistic, cv.n),
            n_obs: cv.n,
        },
        not_rejected: decisions(statistic, cv),
    }
}

/// K-S comparison of the fitted stable law, refitted Cauchy and Lévy laws
/// and the fitted Student-t.
pub fn compare_distributions(data: &ReturnSeries, stable: &FitResult, t: &TFitResult, opts: &EvalOptions) -> Result<GofReport> {
    let x = data.as_slice();
    let cv = ks_critical_values(x.len());
    let cauchy = fit_cauchy(data)?.params;
    let levy = fit_levy(data)?.params;

    let d_stable = ks_statistic(x, |v| density::cdf(&stable.params, v, opts))?;
    let d_cauchy = ks_statistic(x, |v| density::cdf(&cauchy, v, opts))?;
    let d_t = ks_statistic(x, |v| student_t_cdf(v, t.dof, t.location, t.scale))?;
    let d_levy = ks_statistic(x, |v| density::cdf(&levy, v, opts))?;

    Ok(GofReport {
        n_obs: x.len(),
        critical_values: cv,
        candidates: vec![
            candidate(Candidate::Stable, CandidateParams::Stable(stable.params), d_stable, &cv),
            candidate(Candidate::Cauchy, CandidateParams::Stable(cauchy), d_cauchy, &cv),
            candidate(
                Candidate::StudentT,
                CandidateParams::StudentT {
                    dof: t.dof,
                    location: t.location,
                    scale: t.scale,
                },
                d_t,
                &cv,
            ),
            candidate(Candidate::Levy, CandidateParams::Stable(levy), d_levy, &cv),
        ],
    })
}

impl GofReport {
    pub fn get(&self, c: Candidate) -> Option<&CandidateReport> {
        self.candidates.iter().find(|r| r.candidate == c)
    }

    /// Levels as rows, candidates as columns. A `*` marks "not rejected".
    pub fn render_table(&self) -> String {
        let row = |label: String, cells: Vec<String>| {
            let mut line = format!("{label:<12}");
            for c in cells {
                line.push_str(&format!("{c:>14}"));
            }
            line.trim_end().to_string() + "\n"
        };
        let mut out = row(
            "Sig. level".into(),
            self.candidates.iter().map(|c| format!("{} ", c.candidate.label())).collect(),
        );
        for (k, level) in self.critical_values.levels.iter().enumerate() {
            let cv = format_sig(self.critical_values.values[k], 4);
            out += &row(
                format!("{}%", level * 100.0),
                self.candidates
                    .iter()
                    .map(|c| format!("{cv}{}", if c.not_rejected[k] { "*" } else { " " }))
                    .collect(),
            );
        }
        out += &row(
            "test stat".into(),
            self.candidates.iter().map(|c| format!("{} ", format_sig(c.ks.statistic, 4))).collect(),
        );
        out += &row(
            "p-value".into(),
            self.candidates.iter().map(|c| format!("{} ", format_sig(c.ks.p_value, 4))).collect(),
        );
        out += &format!("n = {}; * = not rejected at that level", self.n_obs);
        if self.critical_values.small_sample {
            out += " (n < 35: asymptotic critical values unreliable)";
        }
        out.push('\n');
        out
    }
}
