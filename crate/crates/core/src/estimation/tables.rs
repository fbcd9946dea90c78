//! McCulloch lookup tables: parsing, checksum verification, interpolation.

use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{Result, StableError};

/// Bundled asset, compiled into the binary.
pub const EMBEDDED_TABLES: &str = include_str!("../../data/mcculloch_tables.txt");

/// Environment variable naming an alternative table file.
pub const TABLES_ENV_VAR: &str = "STABLEFIT_MCCULLOCH_TABLES";

/// A rectangular table on strictly increasing axes, bilinearly interpolated
/// and clamped at the edges.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub rows: Vec<f64>,
    pub cols: Vec<f64>,
    /// Row-major, `rows.len() * cols.len()` entries.
    pub values: Vec<f64>,
}

fn bracket(axis: &[f64], x: f64) -> (usize, f64) {
    let last = axis.len() - 1;
    if x <= axis[0] {
        return (0, 0.0);
    }
    if x >= axis[last] {
        return (last - 1, 1.0);
    }
    let i = axis.partition_point(|&a| a <= x) - 1;
    (i, (x - axis[i]) / (axis[i + 1] - axis[i]))
}

impl Grid {
    fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.cols.len() + j]
    }

    pub fn interpolate(&self, row: f64, col: f64) -> f64 {
        let (i, u) = bracket(&self.rows, row);
        let (j, v) = bracket(&self.cols, col);
        (1.0 - u) * ((1.0 - v) * self.at(i, j) + v * self.at(i, j + 1))
            + u * ((1.0 - v) * self.at(i + 1, j) + v * self.at(i + 1, j + 1))
    }

    pub fn row_range(&self) -> (f64, f64) {
        (self.rows[0], self.rows[self.rows.len() - 1])
    }

    pub fn col_range(&self) -> (f64, f64) {
        (self.cols[0], self.cols[self.cols.len() - 1])
    }
}

/// The four tables of the quantile estimator.
#[derive(Debug, Clone, PartialEq)]
pub struct McCullochTables {
    pub version: u32,
    /// alpha over (nu_alpha, nu_beta).
    pub psi1: Grid,
    /// beta over (nu_alpha, nu_beta); stored entries clipped to [0, 1].
    pub psi2: Grid,
    /// (x75 - x25) / gamma over (alpha, beta).
    pub phi3: Grid,
    /// (zeta - x50) / gamma over (alpha, beta).
    pub phi5: Grid,
}

fn parse_f(tok: &str, line: usize) -> Result<f64> {
    tok.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| StableError::Table(format!("line {line}: bad number '{tok}'")))
}

struct Builder {
    name: String,
    cols: Vec<f64>,
    rows: Vec<(f64, Vec<f64>)>,
}

impl Builder {
    fn finish(mut self) -> Result<(String, Grid)> {
        if self.cols.len() < 2 || self.rows.len() < 2 {
            return Err(StableError::Table(format!("[{}] needs at least a 2x2 grid", self.name)));
        }
        self.rows.sort_by(|a, b| a.0.total_cmp(&b.0));
        let rows: Vec<f64> = self.rows.iter().map(|r| r.0).collect();
        for (axis, what) in [(&rows, "row"), (&self.cols, "column")] {
            if axis.windows(2).any(|w| w[1] <= w[0]) {
                return Err(StableError::Table(format!("[{}] {what} axis is not strictly monotone", self.name)));
            }
        }
        let values = self.rows.into_iter().flat_map(|r| r.1).collect();
        Ok((
            self.name,
            Grid {
                rows,
                cols: self.cols,
                values,
            },
        ))
    }
}

impl McCullochTables {
    /// Parses and verifies table text in the asset format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut version = None;
        let mut digest = None;
        let mut body_start = None;
        let mut offset = 0;
        for line in text.split_inclusive('\n') {
            offset += line.len();
            let t = line.trim();
            if let Some(v) = t.strip_prefix("version ") {
                version = v.trim().parse::<u32>().ok();
            } else if let Some(h) = t.strip_prefix("sha256 ") {
                digest = Some(h.trim().to_ascii_lowercase());
                body_start = Some(offset);
                break;
            }
        }
        let version = version.ok_or_else(|| StableError::Table("missing version line".into()))?;
        let (digest, start) = digest
            .zip(body_start)
            .ok_or_else(|| StableError::Table("missing sha256 line".into()))?;
        let body = &text[start..];
        let actual = hex::encode(Sha256::digest(body.as_bytes()));
        if actual != digest {
            return Err(StableError::Table(format!("checksum mismatch: expected {digest}, got {actual}")));
        }

        let first_body_line = text[..start].lines().count() + 1;
        let mut done: Vec<(String, Grid)> = Vec::new();
        let mut cur: Option<Builder> = None;
        for (k, line) in body.lines().enumerate() {
            let ln = first_body_line + k;
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            if let Some(name) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                if let Some(b) = cur.take() {
                    done.push(b.finish()?);
                }
                cur = Some(Builder {
                    name: name.to_string(),
                    cols: Vec::new(),
                    rows: Vec::new(),
                });
                continue;
            }
            let b = cur
                .as_mut()
                .ok_or_else(|| StableError::Table(format!("line {ln}: data before any [table]")))?;
            let mut toks = t.split_whitespace();
            match toks.next() {
                Some("cols") => {
                    toks.next();
                    b.cols = toks.map(|s| parse_f(s, ln)).collect::<Result<_>>()?;
                }
                Some("row") => {
                    let key = toks
                        .next()
                        .and_then(|s| s.split_once('='))
                        .ok_or_else(|| StableError::Table(format!("line {ln}: expected axis=value")))?;
                    let node = parse_f(key.1, ln)?;
                    let vals: Vec<f64> = toks.map(|s| parse_f(s, ln)).collect::<Result<_>>()?;
                    if vals.len() != b.cols.len() {
                        return Err(StableError::Table(format!(
                            "line {ln}: {} entries for {} columns",
                            vals.len(),
                            b.cols.len()
                        )));
                    }
                    b.rows.push((node, vals));
                }
                _ => return Err(StableError::Table(format!("line {ln}: unrecognized '{t}'"))),
            }
        }
        if let Some(b) = cur.take() {
            done.push(b.finish()?);
        }
        let mut take = |name: &str| {
            done.iter()
                .position(|(n, _)| n == name)
                .map(|i| done.swap_remove(i).1)
                .ok_or_else(|| StableError::Table(format!("missing table [{name}]")))
        };
        let psi1 = take("psi1")?;
        let mut psi2 = take("psi2")?;
        let phi3 = take("phi3")?;
        let phi5 = take("phi5")?;

        if psi1.values.iter().any(|&a| !(a > 0.0 && a <= 2.0)) {
            return Err(StableError::Table("psi1 entries must lie in (0, 2]".into()));
        }
        if phi3.values.iter().any(|&c| c <= 0.0) {
            return Err(StableError::Table("phi3 entries must be positive".into()));
        }
        // The published beta table has entries above 1 where the inversion
        // leaves the admissible region.
        for v in &mut psi2.values {
            *v = v.clamp(-1.0, 1.0);
        }
        Ok(McCullochTables {
            version,
            psi1,
            psi2,
            phi3,
            phi5,
        })
    }

    /// The tables compiled into the crate.
    pub fn embedded() -> Self {
        Self::parse(EMBEDDED_TABLES).expect("bundled McCulloch tables are valid")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| StableError::Io {
            path: path.to_path_buf(),
            reason: e.to_string(),
        })?;
        Self::parse(&text)
    }

    /// Tables from the file named by [`TABLES_ENV_VAR`] when set, otherwise
    /// the embedded copy.
    pub fn from_env_or_embedded() -> Result<Self> {
        match std::env::var_os(TABLES_ENV_VAR) {
            Some(p) if !p.is_empty() => Self::load(p),
            _ => Ok(Self::embedded()),
        }
    }
}
