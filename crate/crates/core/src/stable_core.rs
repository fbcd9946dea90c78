//! Parameter object, validity rules, characteristic function and the
//! S1/S0 location conversions shared by the rest of the crate.

use std::f64::consts::{FRAC_2_PI, FRAC_PI_2};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, StableError};

/// Values of `alpha` closer than this to one are treated as exactly one.
pub const ALPHA_ONE_TOL: f64 = 1e-8;

/// Return type of [`StableParams::char_fn`].
pub type ComplexValue = Complex64;

/// Which convention the location parameter `delta` refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parameterization {
    /// Characteristic-function form `exp(-γ^α|t|^α[1 - iβ tan(πα/2) sign t] + iδt)`.
    S1,
    /// Location-shifted form, continuous in all four parameters.
    S0,
}

/// The four stable parameters plus the convention `delta` is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StableParams {
    /// Tail index, `0 < alpha <= 2`.
    pub alpha: f64,
    /// Skewness, `-1 <= beta <= 1`.
    pub beta: f64,
    /// Scale, `gamma > 0`.
    pub gamma: f64,
    /// Location.
    pub delta: f64,
    pub kind: Parameterization,
}

pub(crate) fn is_alpha_one(alpha: f64) -> bool {
    (alpha - 1.0).abs() < ALPHA_ONE_TOL
}

/// `tan(πα/2)`, exactly zero at `alpha == 2`.
pub(crate) fn tan_half_pi_alpha(alpha: f64) -> f64 {
    if alpha == 2.0 {
        0.0
    } else {
        (FRAC_PI_2 * alpha).tan()
    }
}

/// Amount added to an S1 location to obtain the S0 location.
pub(crate) fn s0_shift(alpha: f64, beta: f64, gamma: f64) -> f64 {
    if beta == 0.0 {
        return 0.0;
    }
    if is_alpha_one(alpha) {
        beta * FRAC_2_PI * gamma * gamma.ln()
    } else {
        beta * gamma * tan_half_pi_alpha(alpha)
    }
}

impl StableParams {
    /// Validated parameters in the S1 convention.
    pub fn new(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Result<Self> {
        let p = StableParams {
            alpha,
            beta,
            gamma,
            delta,
            kind: Parameterization::S1,
        };
        p.validate()?;
        Ok(p)
    }

    /// Validated parameters in the S0 convention.
    pub fn new_s0(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Result<Self> {
        let p = StableParams {
            alpha,
            beta,
            gamma,
            delta,
            kind: Parameterization::S0,
        };
        p.validate()?;
        Ok(p)
    }

    /// Standard member `(alpha, beta, 1, 0)`.
    pub fn standard(alpha: f64, beta: f64) -> Result<Self> {
        Self::new(alpha, beta, 1.0, 0.0)
    }

    /// Checks every invariant, naming the first violated bound.
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha <= 2.0) {
            return Err(StableError::domain("alpha", self.alpha, "0 < alpha <= 2"));
        }
        if !(-1.0..=1.0).contains(&self.beta) {
            return Err(StableError::domain("beta", self.beta, "-1 <= beta <= 1"));
        }
        if !(self.gamma > 0.0 && self.gamma.is_finite()) {
            return Err(StableError::domain("gamma", self.gamma, "gamma > 0"));
        }
        if !self.delta.is_finite() {
            return Err(StableError::domain("delta", self.delta, "delta finite"));
        }
        Ok(())
    }

    /// Same law, location expressed in S0.
    pub fn to_s0(&self) -> Result<Self> {
        self.validate()?;
        Ok(match self.kind {
            Parameterization::S0 => *self,
            Parameterization::S1 => StableParams {
                delta: self.delta + s0_shift(self.alpha, self.beta, self.gamma),
                kind: Parameterization::S0,
                ..*self
            },
        })
    }

    /// Same law, location expressed in S1.
    pub fn from_s0(&self) -> Result<Self> {
        self.validate()?;
        Ok(match self.kind {
            Parameterization::S1 => *self,
            Parameterization::S0 => StableParams {
                delta: self.delta - s0_shift(self.alpha, self.beta, self.gamma),
                kind: Parameterization::S1,
                ..*self
            },
        })
    }

    /// Alias of [`StableParams::from_s0`] that reads better at call sites.
    pub fn to_s1(&self) -> Result<Self> {
        self.from_s0()
    }

    /// `E[exp(itX)]` under these parameters.
    pub fn char_fn(&self, t: f64) -> Result<ComplexValue> {
        let p = self.to_s1()?;
        if t == 0.0 {
            return Ok(Complex64::new(1.0, 0.0));
        }
        let sign = t.signum();
        let abs_t = t.abs();
        let exponent = if is_alpha_one(p.alpha) {
            let scaled = p.gamma * abs_t;
            Complex64::new(
                -scaled,
                -scaled * p.beta * FRAC_2_PI * sign * abs_t.ln() + p.delta * t,
            )
        } else {
            let scaled = (p.gamma * abs_t).powf(p.alpha);
            Complex64::new(
                -scaled,
                scaled * p.beta * tan_half_pi_alpha(p.alpha) * sign + p.delta * t,
            )
        };
        Ok(exponent.exp())
    }
}

/// Free-function form of [`StableParams::validate`].
pub fn validate(params: &StableParams) -> Result<()> {
    params.validate()
}

/// Free-function form of [`StableParams::char_fn`].
pub fn char_fn(params: &StableParams, t: f64) -> Result<ComplexValue> {
    params.char_fn(t)
}
