//! Plain-text tables with four significant figures.

use stablefit::format::format_sig;
use stablefit::{FitResult, GofReport, Method, StableError, SummaryStats};

const SIG: usize = 4;

fn sig(x: f64) -> String {
    format_sig(x, SIG)
}

fn line(first: &str, first_width: usize, cells: &[String], width: usize) -> String {
    let mut s = format!("{first:<first_width$}");
    for c in cells {
        s.push_str(&format!("{c:>width$}"));
    }
    s.trim_end().to_string() + "\n"
}

pub fn summary_table(asset: &str, s: &SummaryStats) -> String {
    let head: Vec<String> = ["Mean", "Std.dev", "Skewness", "Kurtosis", "Min", "Max", "J-B test", "Obs"]
        .iter()
        .map(|h| h.to_string())
        .collect();
    let row: Vec<String> = [s.mean, s.std_dev, s.skewness, s.kurtosis, s.min, s.max, s.jarque_bera]
        .iter()
        .map(|&v| sig(v))
        .chain(std::iter::once(s.n_obs.to_string()))
        .collect();
    let w = asset.len().max(6) + 2;
    line("Asset", w, &head, 11) + &line(asset, w, &row, 11)
}

pub fn fit_table(asset: &str, n: usize, rows: &[(Method, Result<FitResult, StableError>)]) -> String {
    let mut out = format!("Stable estimates for {asset} (S1, n = {n})\n");
    let head: Vec<String> = ["alpha", "beta", "gamma", "delta"].iter().map(|h| h.to_string()).collect();
    out += &line("Estimator", 22, &head, 22);
    for (m, r) in rows {
        match r {
            Ok(f) => {
                let p = &f.params;
                let vals = [p.alpha, p.beta, p.gamma, p.delta];
                let cells: Vec<String> = match &f.std_errors {
                    Some(se) => vals
                        .iter()
                        .zip([se.alpha, se.beta, se.gamma, se.delta])
                        .map(|(v, e)| format!("{}±{}", sig(*v), sig(e)))
                        .collect(),
                    None => vals.iter().map(|v| sig(*v)).collect(),
                };
                out += &line(m.label(), 22, &cells, 22);
            }
            Err(e) => out += &format!("{:<22}error: {e}\n", m.label()),
        }
    }
    for (m, r) in rows {
        if let Ok(f) = r {
            if let Some(ll) = f.log_likelihood {
                out += &format!("{} log-likelihood: {}\n", m.label(), sig(ll));
            }
            if !f.warnings.is_empty() {
                let notes: Vec<String> = f.warnings.iter().map(describe).collect();
                out += &format!("{} notes: {}\n", m.label(), notes.join("; "));
            }
        }
    }
    out
}

fn describe(w: &stablefit::estimation::FitWarning) -> String {
    use stablefit::estimation::FitWarning::*;
    match w {
        TableDomain {
            statistic,
            value,
            clamped_to,
        } => format!("{statistic} = {} outside table, clamped to {}", sig(*value), sig(*clamped_to)),
        Clamped {
            parameter,
            value,
            clamped_to,
        } => format!("{parameter} = {} clamped to {}", sig(*value), sig(*clamped_to)),
        NoStandardErrors => "standard errors unavailable".into(),
    }
}

pub fn gof_table(asset: &str, report: &GofReport) -> String {
    format!("Kolmogorov-Smirnov tests for {asset}\n") + &report.render_table()
}
