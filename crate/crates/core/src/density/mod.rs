//! PDF, CDF and quantile evaluation for the stable family.
//!
//! Gaussian (`alpha = 2`), Cauchy (`alpha = 1, beta = 0`) and Lévy
//! (`alpha = 1/2, beta = 1`) members use their closed forms. Everything else
//! goes through the Zolotarev-type integral over `(-theta0, pi/2)` evaluated
//! on the standardized S0 law.

mod closed_form;
mod fourier;
pub(crate) mod zolotarev;

use std::f64::consts::{FRAC_1_PI, FRAC_PI_2};

use libm::tgamma as gamma;

pub use closed_form::std_normal_cdf;
pub(crate) use closed_form::{cauchy_cdf, cauchy_pdf, levy_cdf, levy_pdf};

use crate::error::{Result, StableError};
use crate::quad::QuadTolerance;
use crate::stable_core::{is_alpha_one, tan_half_pi_alpha, StableParams};

/// Accuracy controls for the numerical density routes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            rel_tol: 1e-10,
            abs_tol: 1e-20,
            max_subdivisions: 1000,
        }
    }
}

impl EvalOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(StableError::domain("rel_tol", self.rel_tol, "rel_tol > 0"));
        }
        if !(self.abs_tol > 0.0) {
            return Err(StableError::domain("abs_tol", self.abs_tol, "abs_tol > 0"));
        }
        if self.max_subdivisions < 10 {
            return Err(StableError::domain(
                "max_subdivisions",
                self.max_subdivisions as f64,
                "max_subdivisions >= 10",
            ));
        }
        Ok(())
    }

    pub(crate) fn zol(&self) -> zolotarev::Tol {
        zolotarev::Tol {
            rel_tol: self.rel_tol,
            abs_tol: self.abs_tol,
            max_subdivisions: self.max_subdivisions,
        }
    }

    fn quad(&self) -> QuadTolerance {
        QuadTolerance {
            rel_tol: self.rel_tol,
            abs_tol: self.abs_tol,
            max_subdivisions: self.max_subdivisions,
        }
    }
}

/// Beyond this standardized distance a failed quadrature falls back to the
/// power-law tail.
pub const TAIL_THRESHOLD: f64 = 25.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ClosedForm {
    Gauss,
    Cauchy,
    Levy,
}

fn closed_form(p: &StableParams) -> Option<ClosedForm> {
    if p.alpha == 2.0 {
        Some(ClosedForm::Gauss)
    } else if p.alpha == 1.0 && p.beta == 0.0 {
        Some(ClosedForm::Cauchy)
    } else if p.alpha == 0.5 && p.beta == 1.0 {
        Some(ClosedForm::Levy)
    } else {
        None
    }
}

fn check_x(x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(StableError::domain("x", x, "x finite"))
    }
}

/// Leading power-law term of the standardized S1 density for large `|x|`.
fn tail_pdf(alpha: f64, beta: f64, x: f64) -> f64 {
    let c = gamma(alpha) * (FRAC_PI_2 * alpha).sin() * FRAC_1_PI;
    let side = if x > 0.0 { 1.0 + beta } else { 1.0 - beta };
    alpha * c * side * x.abs().powf(-1.0 - alpha)
}

fn tail_mass(alpha: f64, beta: f64, x: f64) -> f64 {
    let c = gamma(alpha) * (FRAC_PI_2 * alpha).sin() * FRAC_1_PI;
    let side = if x > 0.0 { 1.0 + beta } else { 1.0 - beta };
    c * side * x.abs().powf(-alpha)
}

/// S1 standardized coordinate from the S0 one (`gamma = 1`).
fn s1_from_s0(alpha: f64, beta: f64, z: f64) -> f64 {
    if is_alpha_one(alpha) {
        z
    } else {
        z - beta * tan_half_pi_alpha(alpha)
    }
}

/// Standardized S0 density, integral route, with the tail fallback.
pub(crate) fn std_pdf(alpha: f64, beta: f64, z: f64, opts: &EvalOptions) -> Result<f64> {
    match zolotarev::std_pdf(alpha, beta, z, opts.zol()) {
        Err(StableError::Convergence(_)) if z.abs() > TAIL_THRESHOLD => Ok(tail_pdf(alpha, beta, s1_from_s0(alpha, beta, z))),
        other => other,
    }
}

pub(crate) fn std_cdf(alpha: f64, beta: f64, z: f64, opts: &EvalOptions) -> Result<f64> {
    match zolotarev::std_cdf(alpha, beta, z, opts.zol()) {
        Err(StableError::Convergence(_)) if z.abs() > TAIL_THRESHOLD => {
            let x = s1_from_s0(alpha, beta, z);
            let m = tail_mass(alpha, beta, x);
            Ok(if x > 0.0 { 1.0 - m } else { m })
        }
        other => other,
    }
}

/// Density at `x`.
pub fn pdf(params: &StableParams, x: f64, opts: &EvalOptions) -> Result<f64> {
    let p = params.to_s1()?;
    opts.validate()?;
    check_x(x)?;
    match closed_form(&p) {
        Some(ClosedForm::Gauss) => Ok(closed_form::gauss_pdf(x, p.gamma, p.delta)),
        Some(ClosedForm::Cauchy) => Ok(cauchy_pdf(x, p.gamma, p.delta)),
        Some(ClosedForm::Levy) => Ok(levy_pdf(x, p.gamma, p.delta)),
        None => pdf_generic(&p, x, opts),
    }
}

/// Density through the numerical route even when a closed form exists.
pub fn pdf_generic(params: &StableParams, x: f64, opts: &EvalOptions) -> Result<f64> {
    let s0 = params.to_s0()?;
    opts.validate()?;
    check_x(x)?;
    let z = (x - s0.delta) / s0.gamma;
    if is_alpha_one(s0.alpha) && s0.beta == 0.0 {
        return match fourier::pdf(&params.to_s1()?, x, opts.quad()) {
            Err(StableError::Convergence(_)) if z.abs() > TAIL_THRESHOLD => Ok(tail_pdf(1.0, 0.0, z) / s0.gamma),
            other => other,
        };
    }
    Ok(std_pdf(s0.alpha, s0.beta, z, opts)? / s0.gamma)
}

/// Distribution function at `x`; `x` may be infinite.
pub fn cdf(params: &StableParams, x: f64, opts: &EvalOptions) -> Result<f64> {
    let p = params.to_s1()?;
    opts.validate()?;
    if x.is_nan() {
        return Err(StableError::domain("x", x, "x not NaN"));
    }
    if x == f64::INFINITY {
        return Ok(1.0);
    }
    if x == f64::NEG_INFINITY {
        return Ok(0.0);
    }
    match closed_form(&p) {
        Some(ClosedForm::Gauss) => Ok(closed_form::gauss_cdf(x, p.gamma, p.delta)),
        Some(ClosedForm::Cauchy) => Ok(cauchy_cdf(x, p.gamma, p.delta)),
        Some(ClosedForm::Levy) => Ok(levy_cdf(x, p.gamma, p.delta)),
        None => cdf_generic(&p, x, opts),
    }
}

/// Distribution function through the numerical route.
pub fn cdf_generic(params: &StableParams, x: f64, opts: &EvalOptions) -> Result<f64> {
    let s0 = params.to_s0()?;
    opts.validate()?;
    check_x(x)?;
    let z = (x - s0.delta) / s0.gamma;
    if is_alpha_one(s0.alpha) && s0.beta == 0.0 {
        return match fourier::cdf(&params.to_s1()?, x, opts.quad()) {
            Err(StableError::Convergence(_)) if z.abs() > TAIL_THRESHOLD => {
                let m = tail_mass(1.0, 0.0, z);
                Ok(if z > 0.0 { 1.0 - m } else { m })
            }
            other => other,
        };
    }
    std_cdf(s0.alpha, s0.beta, z, opts)
}

/// Inverse of [`cdf`] for `0 < p < 1`.
pub fn quantile(params: &StableParams, p: f64, opts: &EvalOptions) -> Result<f64> {
    let s1 = params.to_s1()?;
    opts.validate()?;
    if !(p > 0.0 && p < 1.0) {
        return Err(StableError::domain("p", p, "0 < p < 1"));
    }
    match closed_form(&s1) {
        Some(ClosedForm::Gauss) => return Ok(closed_form::gauss_quantile(p, s1.gamma, s1.delta)),
        Some(ClosedForm::Cauchy) => return Ok(closed_form::cauchy_quantile(p, s1.gamma, s1.delta)),
        Some(ClosedForm::Levy) => return Ok(closed_form::levy_quantile(p, s1.gamma, s1.delta)),
        None => {}
    }
    let s0 = s1.to_s0()?;
    let z = std_quantile(s0.alpha, s0.beta, p, opts)?;
    Ok(s0.delta + s0.gamma * z)
}

/// Quantile of the standardized S0 law: bracket, then safeguarded Newton.
pub(crate) fn std_quantile(alpha: f64, beta: f64, p: f64, opts: &EvalOptions) -> Result<f64> {
    let f = |z: f64| std_cdf(alpha, beta, z, opts);
    let center = if is_alpha_one(alpha) { 0.0 } else { zolotarev::zeta(alpha, beta) };
    // Cauchy-shaped first guess, widened geometrically until it brackets p.
    let guess = center + (std::f64::consts::PI * (p - 0.5)).tan();
    let mut step = 1.0f64.max(guess.abs() * 0.5);
    let (mut lo, mut hi) = (guess - step, guess + step);
    let mut f_lo = f(lo)?;
    let mut f_hi = f(hi)?;
    let mut expansions = 0;
    while f_lo > p {
        step *= 2.0;
        hi = lo;
        f_hi = f_lo;
        lo -= step;
        f_lo = f(lo)?;
        expansions += 1;
        if expansions > 2000 || !lo.is_finite() {
            return Err(StableError::Convergence(format!("could not bracket quantile p = {p}")));
        }
    }
    while f_hi < p {
        step *= 2.0;
        lo = hi;
        f_lo = f_hi;
        hi += step;
        f_hi = f(hi)?;
        expansions += 1;
        if expansions > 2000 || !hi.is_finite() {
            return Err(StableError::Convergence(format!("could not bracket quantile p = {p}")));
        }
    }
    let _ = (f_lo, f_hi);
    let mut x = 0.5 * (lo + hi);
    for _ in 0..300 {
        let fx = f(x)? - p;
        if fx.abs() <= 1e-14 {
            return Ok(x);
        }
        if fx < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        if hi - lo <= 4.0 * f64::EPSILON * x.abs().max(1e-300) {
            return Ok(0.5 * (lo + hi));
        }
        let dens = std_pdf(alpha, beta, x, opts)?;
        let newton = x - fx / dens;
        x = if dens > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    Err(StableError::Convergence(format!("quantile iteration did not settle for p = {p}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> EvalOptions {
        EvalOptions::default()
    }

    #[test]
    fn closed_form_dispatch() {
        let o = opts();
        let cauchy = StableParams::new(1.0, 0.0, 1.0, 0.0).unwrap();
        assert!((pdf(&cauchy, 0.0, &o).unwrap() - 0.318_310).abs() < 1e-6);
        let gauss = StableParams::new(2.0, 0.0, 1.0, 0.0).unwrap();
        assert!((pdf(&gauss, 0.0, &o).unwrap() - 0.282_095).abs() < 1e-6);
        let levy = StableParams::new(0.5, 1.0, 1.0, 0.0).unwrap();
        assert!((pdf(&levy, 1.0, &o).unwrap() - 0.241_971).abs() < 1e-6);
        assert!((cdf(&levy, 1.0, &o).unwrap() - 0.317_311).abs() < 1e-6);
    }

    #[test]
    fn cdf_examples() {
        let o = opts();
        let cauchy = StableParams::new(1.0, 0.0, 2.5, 0.0).unwrap();
        assert!((cdf(&cauchy, 2.5, &o).unwrap() - 0.75).abs() < 1e-15);
        for &(a, g, d) in &[(0.8, 1.0, 0.0), (1.3, 2.0, 1.0), (1.9, 0.5, -3.0), (1.0, 1.0, 0.7)] {
            let sym = StableParams::new(a, 0.0, g, d).unwrap();
            assert!((cdf(&sym, d, &o).unwrap() - 0.5).abs() < 1e-10, "alpha={a}");
        }
        assert_eq!(cdf(&cauchy, f64::INFINITY, &o).unwrap(), 1.0);
        assert_eq!(cdf(&cauchy, f64::NEG_INFINITY, &o).unwrap(), 0.0);
    }

    #[test]
    fn quantile_examples() {
        let o = opts();
        let cauchy = StableParams::new(1.0, 0.0, 1.0, 0.0).unwrap();
        assert!((quantile(&cauchy, 0.75, &o).unwrap() - 1.0).abs() < 1e-12);
        assert!((quantile(&cauchy, 0.95, &o).unwrap() - 6.313_751_514_675_04).abs() < 1e-9);
        let sym = StableParams::new(1.4, 0.0, 2.0, 3.0).unwrap();
        assert!((quantile(&sym, 0.5, &o).unwrap() - 3.0).abs() < 1e-9);
        assert!(quantile(&sym, 0.0, &o).is_err());
        assert!(quantile(&sym, 1.0, &o).is_err());
    }

    #[test]
    fn quantile_inverts_cdf() {
        let o = opts();
        for &(a, b) in &[(0.6, 0.9), (1.0, -0.5), (1.3, 0.0), (1.7, -0.9)] {
            let prm = StableParams::new(a, b, 1.5, 0.2).unwrap();
            for &p in &[1e-4, 0.05, 0.5, 0.9, 0.999] {
                let q = quantile(&prm, p, &o).unwrap();
                let back = cdf(&prm, q, &o).unwrap();
                assert!((back - p).abs() < 1e-9, "alpha={a} beta={b} p={p} back={back}");
            }
        }
    }

    #[test]
    fn options_are_validated() {
        let prm = StableParams::new(1.5, 0.0, 1.0, 0.0).unwrap();
        let bad = EvalOptions {
            max_subdivisions: 5,
            ..EvalOptions::default()
        };
        assert!(pdf(&prm, 0.0, &bad).is_err());
        let bad = EvalOptions {
            rel_tol: 0.0,
            ..EvalOptions::default()
        };
        assert!(cdf(&prm, 0.0, &bad).is_err());
        assert!(pdf(&prm, f64::NAN, &opts()).is_err());
    }
}
