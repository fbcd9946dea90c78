//! Price ingestion, log returns and summary statistics.
//!
//! CSV input needs a header row, comma delimiter, UTF-8 text and ISO dates
//! (`YYYY-MM-DD`). Row numbers in errors count data rows from 1, header
//! excluded.

use std::fs::File;
use std::io::Read;
use std::path::Path;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::error::{Result, StableError};
use crate::gof::jarque_bera;

/// Column names for the date and close fields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsvSchema {
    pub date_col: String,
    pub close_col: String,
}

impl Default for CsvSchema {
    fn default() -> Self {
        CsvSchema {
            date_col: "Date".into(),
            close_col: "Close".into(),
        }
    }
}

/// Daily closes, strictly increasing in date, all positive.
#[derive(Debug, Clone, PartialEq)]
pub struct PriceSeries {
    pub asset_id: String,
    pub observations: Vec<(NaiveDate, f64)>,
}

impl PriceSeries {
    /// Builds a series after sorting by date and checking the invariants.
    pub fn new(asset_id: impl Into<String>, mut observations: Vec<(NaiveDate, f64)>) -> Result<Self> {
        for (i, &(_, c)) in observations.iter().enumerate() {
            if !(c.is_finite() && c > 0.0) {
                return Err(StableError::Parse {
                    row: i + 1,
                    reason: format!("non-positive price {c}"),
                });
            }
        }
        observations.sort_by_key(|&(d, _)| d);
        if let Some(w) = observations.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(StableError::Parse {
                row: 0,
                reason: format!("duplicate date {}", w[0].0),
            });
        }
        Ok(PriceSeries {
            asset_id: asset_id.into(),
            observations,
        })
    }

    pub fn len(&self) -> usize {
        self.observations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observations.is_empty()
    }
}

/// Log returns with the asset id and the dates of the first and last return.
#[derive(Debug, Clone, PartialEq)]
pub struct ReturnSeries {
    pub asset_id: String,
    pub returns: Vec<f64>,
    pub date_range: Option<(NaiveDate, NaiveDate)>,
}

impl ReturnSeries {
    /// Wraps raw values (simulated data, files of bare numbers).
    pub fn from_values(asset_id: impl Into<String>, returns: Vec<f64>) -> Result<Self> {
        if let Some(i) = returns.iter().position(|r| !r.is_finite()) {
            return Err(StableError::Parse {
                row: i + 1,
                reason: format!("non-finite value {}", returns[i]),
            });
        }
        Ok(ReturnSeries {
            asset_id: asset_id.into(),
            returns,
            date_range: None,
        })
    }

    pub fn len(&self) -> usize {
        self.returns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.returns.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.returns
    }
}

/// One row of the summary-statistics table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SummaryStats {
    pub mean: f64,
    pub std_dev: f64,
    pub skewness: f64,
    /// Raw kurtosis (3 for the normal law).
    pub kurtosis: f64,
    pub min: f64,
    pub max: f64,
    pub jarque_bera: f64,
    pub n_obs: usize,
}

/// Reads a price CSV from disk. The asset id is the file stem.
pub fn load_price_csv(path: impl AsRef<Path>, schema: &CsvSchema) -> Result<PriceSeries> {
    let path = path.as_ref();
    let io_err = |e: std::io::Error| StableError::Io {
        path: path.to_path_buf(),
        reason: e.to_string(),
    };
    let mut text = String::new();
    File::open(path).map_err(io_err)?.read_to_string(&mut text).map_err(io_err)?;
    if text.trim().is_empty() {
        return Err(StableError::EmptyFile(path.to_path_buf()));
    }
    let asset = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let series = parse_price_csv(text.as_bytes(), asset, schema)?;
    if series.is_empty() {
        return Err(StableError::EmptyFile(path.to_path_buf()));
    }
    Ok(series)
}

/// Parses price CSV text from any reader.
pub fn parse_price_csv<R: Read>(reader: R, asset_id: impl Into<String>, schema: &CsvSchema) -> Result<PriceSeries> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| StableError::Schema(format!("unreadable header: {e}")))?
        .clone();
    let find = |name: &str| {
        headers
            .iter()
            .position(|h| h.trim_start_matches('\u{feff}') == name)
            .ok_or_else(|| StableError::Schema(format!("missing column '{name}' (found: {})", headers.iter().collect::<Vec<_>>().join(", "))))
    };
    let di = find(&schema.date_col)?;
    let ci = find(&schema.close_col)?;

    let mut obs = Vec::new();
    for (k, rec) in rdr.records().enumerate() {
        let row = k + 1;
        let rec = rec.map_err(|e| StableError::Parse {
            row,
            reason: e.to_string(),
        })?;
        let date_s = rec.get(di).unwrap_or("");
        let date = NaiveDate::parse_from_str(date_s, "%Y-%m-%d").map_err(|e| StableError::Parse {
            row,
            reason: format!("bad date '{date_s}': {e}"),
        })?;
        let close_s = rec.get(ci).unwrap_or("");
        if close_s.is_empty() {
            return Err(StableError::Parse {
                row,
                reason: "missing price".into(),
            });
        }
        let close: f64 = close_s.parse().map_err(|_| StableError::Parse {
            row,
            reason: format!("unparsable price '{close_s}'"),
        })?;
        if !(close.is_finite() && close > 0.0) {
            return Err(StableError::Parse {
                row,
                reason: "non-positive price".into(),
            });
        }
        obs.push((date, close, row));
    }

    obs.sort_by_key(|&(d, _, _)| d);
    if let Some(w) = obs.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(StableError::Parse {
            row: w[0].2.max(w[1].2),
            reason: format!("duplicate date {}", w[0].0),
        });
    }
    Ok(PriceSeries {
        asset_id: asset_id.into(),
        observations: obs.into_iter().map(|(d, c, _)| (d, c)).collect(),
    })
}

/// `r_i = ln c_{i+1} - ln c_i`.
pub fn log_returns(prices: &PriceSeries) -> Result<ReturnSeries> {
    let obs = &prices.observations;
    if obs.len() < 2 {
        return Err(StableError::InsufficientData {
            needed: 2,
            got: obs.len(),
        });
    }
    let returns = obs.windows(2).map(|w| w[1].1.ln() - w[0].1.ln()).collect();
    Ok(ReturnSeries {
        asset_id: prices.asset_id.clone(),
        returns,
        date_range: Some((obs[1].0, obs[obs.len() - 1].0)),
    })
}

/// Moments use `1/n` central sums except the `n - 1` standard deviation.
pub fn summary_stats(returns: &ReturnSeries) -> Result<SummaryStats> {
    let x = returns.as_slice();
    let n = x.len();
    if n < 4 {
        return Err(StableError::InsufficientData { needed: 4, got: n });
    }
    let nf = n as f64;
    // Order-independent sums so the result does not depend on row order.
    let mut sorted = x.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mean = (sorted.iter().sum::<f64>() / nf).clamp(sorted[0], sorted[n - 1]);
    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for &v in &sorted {
        let d = v - mean;
        let d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= nf;
    m3 /= nf;
    m4 /= nf;
    let (skewness, kurtosis) = if m2 > 0.0 {
        let s = m3 / m2.powf(1.5);
        (s, (m4 / (m2 * m2)).max(1.0 + s * s))
    } else {
        (0.0, 3.0)
    };
    let mut stats = SummaryStats {
        mean,
        std_dev: (m2 * nf / (nf - 1.0)).sqrt(),
        skewness,
        kurtosis,
        min: sorted[0],
        max: sorted[n - 1],
        jarque_bera: 0.0,
        n_obs: n,
    };
    stats.jarque_bera = jarque_bera(&stats);
    Ok(stats)
}
