//! Stable log-likelihood, exact and tabulated.
//!
//! The optimizer evaluates the likelihood many times on the same data. It
//! uses a natural cubic spline of `ln f` for the standardized S0 density on
//! a fixed lattice in `u = asinh(z / S)`, built once per `(alpha, beta)`.

use crate::density::{self, EvalOptions};
use crate::error::Result;
use crate::stable_core::StableParams;

/// Width of the near-linear core of `u = asinh(z / S)`.
const S: f64 = 0.5;
/// Knot spacing in `u` by zone: `|z| < 10`, `|z| < 50`, beyond.
const ZONES: [(f64, f64); 3] = [(3.7, 0.03), (5.3, 0.045), (f64::INFINITY, 0.15)];
/// Extra knots past the data on each side, keeping spline end effects away.
const MARGIN: usize = 12;
/// Floor for `ln f` where the density underflows or vanishes.
pub(crate) const LN_FLOOR: f64 = -745.0;

fn step_at(u: f64) -> f64 {
    ZONES.iter().find(|z| u.abs() < z.0).map_or(0.15, |z| z.1)
}

/// Knots of the fixed lattice from 0 outward, covering `[u_lo, u_hi]`
/// plus [`MARGIN`] knots on each side.
fn knots(u_lo: f64, u_hi: f64) -> Vec<f64> {
    let walk = |limit: f64, sign: f64| {
        let mut out = Vec::new();
        let mut u: f64 = 0.0;
        let mut extra = 0;
        while extra < MARGIN {
            // Step from the inner side so the lattice is symmetric.
            u += sign * step_at(u + sign * 1e-12);
            if u * sign > limit * sign {
                extra += 1;
            }
            out.push(u);
        }
        out
    };
    let mut left: Vec<f64> = if u_lo < 0.0 { walk(u_lo, -1.0) } else { Vec::new() };
    let right: Vec<f64> = if u_hi > 0.0 { walk(u_hi, 1.0) } else { Vec::new() };
    left.reverse();
    left.push(0.0);
    left.extend(right);
    // Drop knots deep inside the uncovered side.
    let lo_keep = left.iter().rposition(|&u| u < u_lo).map_or(0, |i| i.saturating_sub(MARGIN - 1));
    let hi_keep = left.iter().position(|&u| u > u_hi).map_or(left.len(), |i| (i + MARGIN).min(left.len()));
    left[lo_keep..hi_keep].to_vec()
}

/// Exact `sum ln f(x_i)`, accumulated in input order.
pub fn log_likelihood(params: &StableParams, data: &[f64], opts: &EvalOptions) -> Result<f64> {
    let mut total = 0.0;
    for &x in data {
        let f = density::pdf(params, x, opts)?;
        total += if f > 0.0 { f.ln() } else { LN_FLOOR };
    }
    Ok(total)
}

/// Spline of `ln f` for `S0(alpha, beta, 1, 0)` on `[z_lo, z_hi]`.
#[derive(Debug, Clone)]
pub(crate) struct LogDensityTable {
    u: Vec<f64>,
    y: Vec<f64>,
    m: Vec<f64>,
}

impl LogDensityTable {
    pub(crate) fn build(alpha: f64, beta: f64, z_lo: f64, z_hi: f64, opts: &EvalOptions) -> Result<Self> {
        let std = StableParams::new_s0(alpha, beta, 1.0, 0.0)?;
        let u = knots((z_lo / S).asinh(), (z_hi / S).asinh());
        let mut y = Vec::with_capacity(u.len());
        for &uk in &u {
            let f = density::pdf(&std, S * uk.sinh(), opts)?;
            y.push(if f > 0.0 { f.ln().max(LN_FLOOR) } else { LN_FLOOR });
        }
        let m = natural_spline(&u, &y);
        Ok(LogDensityTable { u, y, m })
    }

    pub(crate) fn ln_pdf(&self, z: f64) -> f64 {
        let v = (z / S).asinh();
        let last = self.u.len() - 1;
        let i = self.u.partition_point(|&k| k <= v).clamp(1, last) - 1;
        let h = self.u[i + 1] - self.u[i];
        let t = (v - self.u[i]) / h;
        let s = 1.0 - t;
        let h2 = h * h / 6.0;
        let r = s * self.y[i] + t * self.y[i + 1] + h2 * ((s * s * s - s) * self.m[i] + (t * t * t - t) * self.m[i + 1]);
        r.max(LN_FLOOR)
    }
}

/// Second derivatives of the natural cubic spline through `(x, y)`.
fn natural_spline(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut m = vec![0.0; n];
    if n < 3 {
        return m;
    }
    // Tridiagonal system for interior knots, Thomas algorithm.
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    for i in 1..n - 1 {
        let (h0, h1) = (x[i] - x[i - 1], x[i + 1] - x[i]);
        let r = 6.0 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
        let diag = 2.0 * (h0 + h1) - h0 * c[i - 1];
        c[i] = h1 / diag;
        d[i] = (r - h0 * d[i - 1]) / diag;
    }
    for i in (1..n - 1).rev() {
        m[i] = d[i] - c[i] * m[i + 1];
    }
    m
}

/// Tabulated log-likelihood for S0 parameters.
pub(crate) fn table_log_likelihood(
    alpha: f64,
    beta: f64,
    gamma: f64,
    delta0: f64,
    data: &[f64],
    opts: &EvalOptions,
) -> Result<f64> {
    let (lo, hi) = data.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &x| (l.min(x), h.max(x)));
    let table = LogDensityTable::build(alpha, beta, (lo - delta0) / gamma, (hi - delta0) / gamma, opts)?;
    let ln_g = gamma.ln();
    Ok(data.iter().map(|&x| table.ln_pdf((x - delta0) / gamma) - ln_g).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_matches_direct_density() {
        let opts = EvalOptions::default();
        for &(a, b) in &[(1.2, 0.1), (0.7, -0.4), (1.8, 0.9), (1.0, 0.5), (2.0, 0.0)] {
            let t = LogDensityTable::build(a, b, -300.0, 300.0, &opts).unwrap();
            let p = StableParams::new_s0(a, b, 1.0, 0.0).unwrap();
            for i in -60..=60 {
                let z = (i as f64 * 0.093).sinh();
                let exact = density::pdf(&p, z, &opts).unwrap().ln();
                let approx = t.ln_pdf(z);
                if exact < -600.0 {
                    continue;
                }
                let rel = if exact > -100.0 { 1e-6 } else { 1e-5 };
                assert!((exact - approx).abs() < rel * (1.0 + exact.abs()), "a={a} b={b} z={z}: {exact} vs {approx}");
            }
        }
    }

    #[test]
    fn lattice_is_fixed_and_covers_range() {
        let a = knots(-2.0, 7.0);
        let b = knots(-1.0, 6.0);
        assert!(a[0] < -2.0 && *a.last().unwrap() > 7.0);
        assert!(a.windows(2).all(|w| w[1] > w[0]));
        // Shared knots coincide exactly.
        for k in &b {
            if *k > a[0] && *k < *a.last().unwrap() {
                assert!(a.iter().any(|x| x == k));
            }
        }
        let c = knots(0.5, 0.9);
        assert!(c[0] < 0.5 && *c.last().unwrap() > 0.9);
    }

    #[test]
    fn spline_reproduces_cubic_interior() {
        let x: Vec<f64> = (0..50).map(|i| (i as f64) * 0.1).collect();
        let y: Vec<f64> = x.iter().map(|v| v.sin()).collect();
        let m = natural_spline(&x, &y);
        // Second derivative of sin is -sin.
        assert!((m[25] + (2.5f64).sin()).abs() < 1e-3);
    }
}
