//! Maximum likelihood for all four stable parameters.
//!
//! Search runs in S0 coordinates `(u, v, w, d)` with
//! `alpha = 1.2 + 0.8 sin u`, `beta = sin v`, `gamma = g0 exp(w)` and
//! `delta0 = d0 + g0 d`, so every point maps into the admissible box
//! (`0.4 <= alpha <= 2`). Standard errors come from the observed
//! information in `(alpha, beta, ln gamma, delta0 / gamma)`, carried to S1
//! by the delta method.

use std::f64::consts::{FRAC_2_PI, FRAC_PI_2};

use super::likelihood::{log_likelihood, table_log_likelihood};
use super::quantile::fit_quantile;
use super::refit::{fit_cauchy, fit_levy};
use super::tables::McCullochTables;
use super::{check_data, FitResult, FitWarning, Method, StdErrors};
use crate::data_io::ReturnSeries;
use crate::density::EvalOptions;
use crate::error::{Result, StableError};
use crate::optimize::{nelder_mead, NelderMeadOptions};
use crate::stable_core::{is_alpha_one, tan_half_pi_alpha, StableParams};

const ALPHA_MID: f64 = 1.2;
const ALPHA_HALF_WIDTH: f64 = 0.8;
/// Finite-difference step in the information coordinates.
const H: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MleOptions {
    pub eval: EvalOptions,
    pub max_evals: usize,
    pub max_restarts: usize,
}

impl Default for MleOptions {
    fn default() -> Self {
        MleOptions {
            eval: EvalOptions::default(),
            max_evals: 3000,
            max_restarts: 4,
        }
    }
}

/// Gradient and Hessian of the log-likelihood in the coordinates
/// `(alpha, beta, ln gamma, delta0 / gamma)` at a parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Information {
    pub gradient: [f64; 4],
    pub hessian: [[f64; 4]; 4],
}

pub fn fit_mle(data: &ReturnSeries, opts: &EvalOptions) -> Result<FitResult> {
    fit_mle_with(
        data,
        &MleOptions {
            eval: *opts,
            ..MleOptions::default()
        },
    )
}

struct Coords {
    g0: f64,
    d0: f64,
}

impl Coords {
    fn decode(&self, p: &[f64]) -> (f64, f64, f64, f64) {
        (
            (ALPHA_MID + ALPHA_HALF_WIDTH * p[0].sin()).min(2.0),
            p[1].sin().clamp(-1.0, 1.0),
            self.g0 * p[2].exp(),
            self.d0 + self.g0 * p[3],
        )
    }

    fn encode(&self, s0: &StableParams) -> [f64; 4] {
        let a = ((s0.alpha - ALPHA_MID) / ALPHA_HALF_WIDTH).clamp(-1.0, 1.0);
        [
            a.asin(),
            s0.beta.clamp(-1.0, 1.0).asin(),
            (s0.gamma / self.g0).ln(),
            (s0.delta - self.d0) / self.g0,
        ]
    }
}

pub fn fit_mle_with(data: &ReturnSeries, opts: &MleOptions) -> Result<FitResult> {
    let x = check_data(data, 20)?;
    opts.eval.validate()?;
    let eval = opts.eval;

    let cauchy = fit_cauchy(data)?;
    let levy = fit_levy(data).ok();
    let mut starts: Vec<StableParams> = vec![cauchy.params];
    if x.len() >= 100 {
        let q = fit_quantile(data, &McCullochTables::embedded())?.params;
        starts.insert(0, q);
    }
    if let Some(l) = levy {
        starts.push(l.params);
    }

    let anchor = starts[0].to_s0()?;
    let coords = Coords {
        g0: anchor.gamma,
        d0: anchor.delta,
    };
    let objective = |p: &[f64]| {
        let (a, b, g, d) = coords.decode(p);
        match table_log_likelihood(a, b, g, d, x, &eval) {
            Ok(ll) => -ll,
            Err(_) => f64::INFINITY,
        }
    };

    let mut best_x = coords.encode(&starts[0].to_s0()?).to_vec();
    let mut best_f = objective(&best_x);
    for s in &starts[1..] {
        let p = coords.encode(&s.to_s0()?).to_vec();
        let f = objective(&p);
        if f < best_f {
            best_f = f;
            best_x = p;
        }
    }
    if !best_f.is_finite() {
        return Err(StableError::Convergence("likelihood is not finite at any starting point".into()));
    }

    let nm = NelderMeadOptions {
        max_evals: opts.max_evals,
        f_tol: 1e-10,
        x_tol: 1e-5,
    };
    let mut converged = false;
    let mut steps = [0.15, 0.15, 0.1, 0.1];
    for _ in 0..=opts.max_restarts {
        let m = nelder_mead(objective, &best_x, &steps, nm);
        let gain = best_f - m.value;
        if m.value <= best_f {
            best_f = m.value;
            best_x = m.x;
        }
        converged = m.converged;
        if m.converged && gain <= 1e-7 * (1.0 + best_f.abs()) {
            break;
        }
        steps = [0.02, 0.02, 0.01, 0.01];
    }
    let (a, b, g, d) = coords.decode(&best_x);
    let mut s0 = StableParams::new_s0(a, b, g, d)?;
    newton_polish(&mut s0, -best_f, x, &eval);
    let mut params = s0.to_s1()?;
    let mut ll = log_likelihood(&params, x, &eval)?;
    // The constrained families are points of the same box.
    for fam in std::iter::once(cauchy).chain(levy) {
        if fam.log_likelihood > ll {
            params = fam.params;
            ll = fam.log_likelihood;
        }
    }

    let mut warnings = Vec::new();
    let std_errors = match information(&params, x, &eval).ok().and_then(|info| standard_errors(&params, &info)) {
        Some(se) => Some(se),
        None => {
            warnings.push(FitWarning::NoStandardErrors);
            None
        }
    };
    Ok(FitResult {
        params,
        std_errors,
        log_likelihood: Some(ll),
        method: Method::Mle,
        n_obs: x.len(),
        converged,
        warnings,
    })
}

/// Safeguarded Newton steps on the tabulated likelihood from an
/// interior point. Stops quietly wherever the Hessian is unusable.
fn newton_polish(s0: &mut StableParams, mut ll: f64, data: &[f64], opts: &EvalOptions) {
    for _ in 0..6 {
        let Ok(info) = information(s0, data, opts) else { return };
        let neg: [[f64; 4]; 4] = std::array::from_fn(|i| std::array::from_fn(|j| -info.hessian[i][j]));
        let Some(cov) = spd_inverse(&neg) else { return };
        let step: [f64; 4] = std::array::from_fn(|i| (0..4).map(|j| cov[i][j] * info.gradient[j]).sum());
        let mut t = 1.0;
        let mut moved = false;
        for _ in 0..6 {
            let alpha = s0.alpha + t * step[0];
            let beta = s0.beta + t * step[1];
            if alpha > 0.4 && alpha <= 2.0 && beta.abs() <= 1.0 {
                let gamma = s0.gamma * (t * step[2]).exp();
                let delta = s0.delta + s0.gamma * t * step[3];
                if let Ok(cand) = table_log_likelihood(alpha, beta, gamma, delta, data, opts) {
                    if cand > ll {
                        if let Ok(p) = StableParams::new_s0(alpha, beta, gamma, delta) {
                            let gain = cand - ll;
                            *s0 = p;
                            ll = cand;
                            moved = true;
                            if gain < 1e-10 * (1.0 + ll.abs()) {
                                return;
                            }
                            break;
                        }
                    }
                }
            }
            t *= 0.5;
        }
        if !moved || step.iter().all(|v| v.abs() < 1e-8) {
            return;
        }
    }
}

/// Observed score and Hessian by central differences of the tabulated
/// log-likelihood. Fails when a step would leave the parameter box.
pub fn information(params: &StableParams, data: &[f64], opts: &EvalOptions) -> Result<Information> {
    let s0 = params.to_s0()?;
    if s0.alpha + H > 2.0 || s0.alpha - H <= 0.0 || s0.beta.abs() + H > 1.0 {
        return Err(StableError::domain(
            "alpha/beta",
            s0.alpha,
            "at least one finite-difference step inside the parameter box",
        ));
    }
    let g_hat = s0.gamma;
    let ll = |c: [f64; 4]| table_log_likelihood(c[0], c[1], g_hat * c[2].exp(), g_hat * c[3], data, opts);
    let c0 = [s0.alpha, s0.beta, 0.0, s0.delta / g_hat];
    let shifted = |i: usize, si: f64, j: usize, sj: f64| {
        let mut c = c0;
        c[i] += si * H;
        c[j] += sj * H;
        ll(c)
    };
    let f0 = ll(c0)?;
    let mut gradient = [0.0; 4];
    let mut hessian = [[0.0; 4]; 4];
    for i in 0..4 {
        let mut cp = c0;
        cp[i] += H;
        let mut cm = c0;
        cm[i] -= H;
        let (fp, fm) = (ll(cp)?, ll(cm)?);
        gradient[i] = (fp - fm) / (2.0 * H);
        hessian[i][i] = (fp - 2.0 * f0 + fm) / (H * H);
    }
    for i in 0..4 {
        for j in i + 1..4 {
            let v = (shifted(i, 1.0, j, 1.0)? - shifted(i, 1.0, j, -1.0)? - shifted(i, -1.0, j, 1.0)?
                + shifted(i, -1.0, j, -1.0)?)
                / (4.0 * H * H);
            hessian[i][j] = v;
            hessian[j][i] = v;
        }
    }
    Ok(Information { gradient, hessian })
}

/// Inverse of a symmetric positive definite 4x4 matrix, by Cholesky.
fn spd_inverse(a: &[[f64; 4]; 4]) -> Option<[[f64; 4]; 4]> {
    let mut l = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..=i {
            let s: f64 = a[i][j] - (0..j).map(|k| l[i][k] * l[j][k]).sum::<f64>();
            if i == j {
                if !(s > 0.0) {
                    return None;
                }
                l[i][i] = s.sqrt();
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    let mut inv = [[0.0; 4]; 4];
    for col in 0..4 {
        let mut y = [0.0; 4];
        for i in 0..4 {
            let rhs = if i == col { 1.0 } else { 0.0 };
            y[i] = (rhs - (0..i).map(|k| l[i][k] * y[k]).sum::<f64>()) / l[i][i];
        }
        for i in (0..4).rev() {
            inv[i][col] = (y[i] - (i + 1..4).map(|k| l[k][i] * inv[k][col]).sum::<f64>()) / l[i][i];
        }
    }
    Some(inv)
}

fn standard_errors(params: &StableParams, info: &Information) -> Option<StdErrors> {
    let neg: [[f64; 4]; 4] = std::array::from_fn(|i| std::array::from_fn(|j| -info.hessian[i][j]));
    let cov = spd_inverse(&neg)?;
    let s0 = params.to_s0().ok()?;
    let (a, b, g) = (s0.alpha, s0.beta, s0.gamma);
    // Rows: d(alpha, beta, gamma, delta1) / d(alpha, beta, ln gamma, delta0/gamma).
    let delta_row = if is_alpha_one(a) {
        [0.0, -FRAC_2_PI * g * g.ln(), -FRAC_2_PI * b * g * (g.ln() + 1.0), g]
    } else {
        let t = tan_half_pi_alpha(a);
        [-b * g * FRAC_PI_2 * (1.0 + t * t), -g * t, -b * g * t, g]
    };
    let jac = [[1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0], [0.0, 0.0, g, 0.0], delta_row];
    let var = |r: &[f64; 4]| -> f64 { (0..4).map(|i| (0..4).map(|j| r[i] * cov[i][j] * r[j]).sum::<f64>()).sum() };
    let se: Vec<f64> = jac.iter().map(|r| var(r).max(0.0).sqrt()).collect();
    se.iter().all(|v| v.is_finite()).then(|| StdErrors {
        alpha: se[0],
        beta: se[1],
        gamma: se[2],
        delta: se[3],
    })
}
