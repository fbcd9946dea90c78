//! Single-integral representation of the standardized S0 density and CDF.
//!
//! For `alpha != 1` the density at `z > zeta` is
//!
//! ```text
//! f(z) = alpha / (pi |alpha - 1| (z - zeta)) * ∫_{-theta0}^{pi/2} g(θ) exp(-g(θ)) dθ
//! g(θ) = (z - zeta)^{alpha/(alpha-1)} V(θ)
//! ```
//!
//! and for `alpha == 1, beta > 0`, `g(θ) = exp(-pi z / (2 beta)) V(θ)` with
//! prefactor `1 / (2 beta)`. `g` is monotone in θ, so the integrand has a
//! single peak at `g = 1`. Every evaluation runs in the log domain and keeps
//! distances to both interval ends separately, so very narrow peaks pressed
//! against an endpoint stay resolvable.

use std::f64::consts::{FRAC_1_PI, FRAC_2_PI, FRAC_PI_2, PI};

use libm::tgamma as gamma;

use crate::error::{Result, StableError};
use crate::quad::{integrate, QuadTolerance};
use crate::stable_core::{is_alpha_one, tan_half_pi_alpha};

/// `ln g` levels used to split the θ range.
const SPLIT_LEVELS: [f64; 7] = [-36.0, -12.0, -4.0, -1.0, 0.0, 1.2, 2.6];
/// Beyond this `ln g` the integrands are below 1e-300 and the range is cut.
const CUT_LEVEL: f64 = 6.62;

/// A point of the θ range with its distances to both ends, each accurate.
#[derive(Debug, Clone, Copy)]
struct Pt {
    theta: f64,
    left: f64,
    right: f64,
}

#[derive(Debug, Clone, Copy)]
enum Shape {
    General {
        alpha: f64,
        theta0: f64,
        /// `alpha / (alpha - 1)`
        power: f64,
        /// `ln cos(alpha theta0) / (alpha - 1)`
        offset: f64,
    },
    AlphaOne {
        beta: f64,
    },
}

#[derive(Debug, Clone, Copy)]
struct Kernel {
    a: f64,
    b: f64,
    /// Additive constant of `ln g` carrying the dependence on `z`.
    shift: f64,
    /// `pi/2 - theta0`, the distance from `a` to `-pi/2`.
    lower_gap: f64,
    increasing: bool,
    shape: Shape,
}

impl Kernel {
    fn at_left(&self, left: f64) -> Pt {
        let theta = self.a + left;
        Pt {
            theta,
            left,
            right: self.b - theta,
        }
    }

    fn at_right(&self, right: f64) -> Pt {
        let theta = self.b - right;
        Pt {
            theta,
            left: theta - self.a,
            right,
        }
    }

    fn cos_theta(&self, p: Pt) -> f64 {
        if p.right < p.left {
            p.right.sin()
        } else {
            (p.left + self.lower_gap).sin()
        }
    }

    fn ln_g(&self, p: Pt) -> f64 {
        match self.shape {
            Shape::General {
                alpha,
                theta0,
                power,
                offset,
            } => {
                let cos_t = self.cos_theta(p);
                let sin_au = (alpha * p.left).sin();
                let cos_mix = (alpha * theta0 + (alpha - 1.0) * p.theta).cos();
                self.shift + offset + power * (cos_t.ln() - sin_au.ln()) + cos_mix.ln() - cos_t.ln()
            }
            Shape::AlphaOne { beta } => {
                let (cos_t, tan_t) = if p.right < p.left {
                    (p.right.sin(), p.right.cos() / p.right.sin())
                } else {
                    (p.left.sin(), -p.left.cos() / p.left.sin())
                };
                let lin = FRAC_PI_2 * (1.0 - beta) + beta * p.left;
                self.shift + FRAC_2_PI.ln() + lin.ln() - cos_t.ln() + lin * tan_t / beta
            }
        }
    }

    fn half_len(&self) -> f64 {
        0.5 * (self.b - self.a)
    }

    /// Point where `ln g` crosses `level`, if it does.
    fn crossing(&self, level: f64) -> Option<Pt> {
        let h = self.half_len();
        let mid = self.at_left(h);
        let f_mid = self.ln_g(mid) - level;
        if f_mid == 0.0 {
            return Some(mid);
        }
        // Left of the midpoint ln g is below `level` iff increasing and f_mid > 0, etc.
        let in_left = (f_mid > 0.0) == self.increasing;
        let eval = |s: f64| {
            let p = if in_left { self.at_left(s) } else { self.at_right(s) };
            (p, self.ln_g(p) - level)
        };
        // Sign near the end of the chosen half must differ from f_mid.
        let tiny = h * 1e-250;
        let (_, f_tiny) = eval(tiny);
        if !(f_tiny.signum() != f_mid.signum() || f_tiny.is_nan()) {
            return None;
        }
        let sign_far = f_mid.signum();
        let (mut lo, mut hi) = (tiny, h);
        let (mut f_lo, mut f_hi) = (f_tiny, f_mid);
        // Geometric bisection while the bracket spans orders of magnitude.
        let mut iter = 0;
        while hi > 4.0 * lo && iter < 80 {
            iter += 1;
            let s = (lo * hi).sqrt();
            let (_, fs) = eval(s);
            if fs.is_nan() || fs.signum() != sign_far {
                lo = s;
                f_lo = fs;
            } else {
                hi = s;
                f_hi = fs;
            }
        }
        // Illinois false position on the remaining bracket.
        let mut side = 0;
        for _ in 0..100 {
            if (hi - lo) <= 1e-13 * hi {
                break;
            }
            let s = if f_lo.is_finite() && f_hi.is_finite() && f_hi != f_lo {
                let s = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
                if s > lo && s < hi {
                    s
                } else {
                    0.5 * (lo + hi)
                }
            } else {
                0.5 * (lo + hi)
            };
            let (_, fs) = eval(s);
            if fs == 0.0 {
                lo = s;
                hi = s;
                break;
            }
            if fs.is_nan() || fs.signum() != sign_far {
                lo = s;
                f_lo = fs;
                if side == -1 {
                    f_hi *= 0.5;
                }
                side = -1;
            } else {
                hi = s;
                f_hi = fs;
                if side == 1 {
                    f_lo *= 0.5;
                }
                side = 1;
            }
        }
        let s = 0.5 * (lo + hi);
        Some(if in_left { self.at_left(s) } else { self.at_right(s) })
    }

    /// `∫ h(ln g(θ)) dθ` over the θ range, split at the level crossings.
    fn integrate<H: Fn(f64) -> f64>(&self, h: H, rel_tol: f64, abs_tol: f64, max_sub: usize) -> Result<f64> {
        let half = self.half_len();
        let mut points: Vec<Pt> = SPLIT_LEVELS.iter().filter_map(|&l| self.crossing(l)).collect();
        points.push(self.at_left(half));
        let cut = self.crossing(CUT_LEVEL);
        let (mut start, mut end) = (self.at_left(0.0), self.at_right(0.0));
        if let Some(c) = cut {
            if self.increasing {
                end = c;
            } else {
                start = c;
            }
        }
        points.retain(|p| p.theta > start.theta && p.theta < end.theta);
        points.push(start);
        points.push(end);
        points.sort_by(|x, y| x.theta.total_cmp(&y.theta));
        points.dedup_by(|x, y| x.theta == y.theta);

        let pieces = (points.len() - 1).max(1);
        let tol = QuadTolerance {
            rel_tol,
            abs_tol: abs_tol / pieces as f64,
            max_subdivisions: max_sub,
        };
        let mut total = 0.0;
        for w in points.windows(2) {
            let (p, q) = (w[0], w[1]);
            // Integrate in the coordinate measured from the nearer end.
            let value = if p.left < half * (1.0 + 1e-12) && q.left <= half * (1.0 + 1e-12) {
                integrate(|s| h(self.ln_g(self.at_left(s))), p.left, q.left, &[], tol)?.value
            } else {
                integrate(|s| h(self.ln_g(self.at_right(s))), q.right, p.right, &[], tol)?.value
            };
            total += value;
        }
        Ok(total)
    }
}

fn pdf_integrand(ln_g: f64) -> f64 {
    if ln_g > CUT_LEVEL + 1.0 || ln_g.is_nan() {
        return 0.0;
    }
    let g = ln_g.exp();
    g * (-g).exp()
}

fn cdf_integrand(ln_g: f64) -> f64 {
    if ln_g > CUT_LEVEL + 1.0 || ln_g.is_nan() {
        return 0.0;
    }
    (-ln_g.exp()).exp()
}

/// Evaluation settings passed down from [`super::EvalOptions`].
#[derive(Debug, Clone, Copy)]
pub(crate) struct Tol {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

/// `zeta = -beta tan(pi alpha / 2)`, the mode-adjacent point of the S0 form.
pub(crate) fn zeta(alpha: f64, beta: f64) -> f64 {
    -beta * tan_half_pi_alpha(alpha)
}

fn theta0(alpha: f64, beta: f64) -> f64 {
    (beta * tan_half_pi_alpha(alpha)).atan() / alpha
}

fn general_kernel(alpha: f64, beta: f64, dz: f64) -> Kernel {
    let th0 = theta0(alpha, beta);
    let power = alpha / (alpha - 1.0);
    Kernel {
        a: -th0,
        b: FRAC_PI_2,
        shift: power * dz.ln(),
        lower_gap: FRAC_PI_2 - th0,
        increasing: alpha < 1.0,
        shape: Shape::General {
            alpha,
            theta0: th0,
            power,
            offset: (alpha * th0).cos().ln() / (alpha - 1.0),
        },
    }
}

fn alpha_one_kernel(beta: f64, z: f64) -> Kernel {
    Kernel {
        a: -FRAC_PI_2,
        b: FRAC_PI_2,
        shift: -PI * z / (2.0 * beta),
        lower_gap: 0.0,
        increasing: true,
        shape: Shape::AlphaOne { beta },
    }
}

/// Density of `S0(alpha, beta, 1, 0)` at `z`. `alpha == 1` requires `beta != 0`.
pub(crate) fn std_pdf(alpha: f64, beta: f64, z: f64, tol: Tol) -> Result<f64> {
    if is_alpha_one(alpha) {
        if beta == 0.0 {
            return Err(StableError::Convergence(
                "integral representation is degenerate at alpha = 1, beta = 0".into(),
            ));
        }
        if beta < 0.0 {
            return std_pdf(alpha, -beta, -z, tol);
        }
        let k = alpha_one_kernel(beta, z);
        let i = k.integrate(pdf_integrand, tol.rel_tol, tol.abs_tol * 2.0 * beta, tol.max_subdivisions)?;
        return Ok((i / (2.0 * beta)).max(0.0));
    }
    let zt = zeta(alpha, beta);
    let dz = z - zt;
    if dz.abs() <= 1e-13 * zt.abs().max(1.0) {
        let th0 = theta0(alpha, beta);
        return Ok(gamma(1.0 + 1.0 / alpha) * th0.cos() / (PI * (1.0 + zt * zt).powf(0.5 / alpha)));
    }
    if dz < 0.0 {
        return std_pdf(alpha, -beta, -z, tol);
    }
    let k = general_kernel(alpha, beta, dz);
    let pref = alpha / (PI * (alpha - 1.0).abs() * dz);
    let i = k.integrate(pdf_integrand, tol.rel_tol, tol.abs_tol / pref, tol.max_subdivisions)?;
    Ok((pref * i).max(0.0))
}

/// CDF of `S0(alpha, beta, 1, 0)` at `z`. `alpha == 1` requires `beta != 0`.
pub(crate) fn std_cdf(alpha: f64, beta: f64, z: f64, tol: Tol) -> Result<f64> {
    if is_alpha_one(alpha) {
        if beta == 0.0 {
            return Err(StableError::Convergence(
                "integral representation is degenerate at alpha = 1, beta = 0".into(),
            ));
        }
        if beta < 0.0 {
            return Ok(1.0 - std_cdf(alpha, -beta, -z, tol)?);
        }
        let k = alpha_one_kernel(beta, z);
        let i = k.integrate(cdf_integrand, tol.rel_tol, tol.abs_tol * PI, tol.max_subdivisions)?;
        return Ok((FRAC_1_PI * i).clamp(0.0, 1.0));
    }
    let zt = zeta(alpha, beta);
    let dz = z - zt;
    let th0 = theta0(alpha, beta);
    if dz.abs() <= 1e-13 * zt.abs().max(1.0) {
        return Ok(FRAC_1_PI * (FRAC_PI_2 - th0));
    }
    if dz < 0.0 {
        return Ok(1.0 - std_cdf(alpha, -beta, -z, tol)?);
    }
    let k = general_kernel(alpha, beta, dz);
    let i = k.integrate(cdf_integrand, tol.rel_tol, tol.abs_tol * PI, tol.max_subdivisions)?;
    let f = if alpha < 1.0 {
        FRAC_1_PI * (FRAC_PI_2 - th0) + FRAC_1_PI * i
    } else {
        1.0 - FRAC_1_PI * i
    };
    Ok(f.clamp(0.0, 1.0))
}
