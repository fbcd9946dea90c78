//! Closed-form members of the family: Gaussian, Cauchy and Lévy.

use std::f64::consts::{FRAC_1_PI, PI, SQRT_2};

use libm::erfc;

/// Standard normal CDF via `erfc`, accurate in both tails.
pub fn std_normal_cdf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    0.5 * erfc(-x / SQRT_2)
}

fn poly(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Wichura's AS241 (PPND16) with one Newton correction.
#[allow(clippy::excessive_precision)]
pub(crate) fn std_normal_quantile(p: f64) -> f64 {
    const A: [f64; 8] = [
        3.387_132_872_796_366_608_0,
        1.331_416_678_917_843_774_5e2,
        1.971_590_950_306_551_442_7e3,
        1.373_169_376_550_946_112_5e4,
        4.592_195_393_154_987_145_7e4,
        6.726_577_092_700_870_085_3e4,
        3.343_057_558_358_812_810_5e4,
        2.509_080_928_730_122_672_7e3,
    ];
    const B: [f64; 8] = [
        1.0,
        4.231_333_070_160_091_125_2e1,
        6.871_870_074_920_579_083_0e2,
        5.394_196_021_424_751_107_7e3,
        2.121_379_430_158_659_586_7e4,
        3.930_789_580_009_271_061_0e4,
        2.872_908_573_572_194_267_4e4,
        5.226_495_278_852_854_561_0e3,
    ];
    const C: [f64; 8] = [
        1.423_437_110_749_683_577_34,
        4.630_337_846_156_545_295_90,
        5.769_497_221_460_691_405_50,
        3.647_848_324_763_204_605_04,
        1.270_458_252_452_368_382_58,
        2.417_807_251_774_506_117_70e-1,
        2.272_384_498_926_918_458_33e-2,
        7.745_450_142_783_414_076_40e-4,
    ];
    const D: [f64; 8] = [
        1.0,
        2.053_191_626_637_758_821_87,
        1.676_384_830_183_803_849_40,
        6.897_673_349_851_000_045_50e-1,
        1.481_039_764_274_800_745_90e-1,
        1.519_866_656_361_645_719_66e-2,
        5.475_938_084_995_344_946_00e-4,
        1.050_750_071_644_416_843_24e-9,
    ];
    const E: [f64; 8] = [
        6.657_904_643_501_103_777_20,
        5.463_784_911_164_114_369_90,
        1.784_826_539_917_291_335_80,
        2.965_605_718_285_048_912_30e-1,
        2.653_218_952_657_612_309_30e-2,
        1.242_660_947_388_078_438_60e-3,
        2.711_555_568_743_487_578_15e-5,
        2.010_334_399_292_288_132_65e-7,
    ];
    const F: [f64; 8] = [
        1.0,
        5.998_322_065_558_879_376_90e-1,
        1.369_298_809_227_358_053_10e-1,
        1.487_536_129_085_061_485_25e-2,
        7.868_691_311_456_132_591_00e-4,
        1.846_318_317_510_054_681_80e-5,
        1.421_511_758_316_445_888_70e-7,
        2.044_263_103_389_939_785_64e-15,
    ];
    if p <= 0.0 {
        return f64::NEG_INFINITY;
    }
    if p >= 1.0 {
        return f64::INFINITY;
    }
    let q = p - 0.5;
    let x = if q.abs() <= 0.425 {
        let r = 0.180_625 - q * q;
        q * poly(&A, r) / poly(&B, r)
    } else {
        let tail = if q < 0.0 { p } else { 1.0 - p };
        let mut r = (-tail.ln()).sqrt();
        let v = if r <= 5.0 {
            r -= 1.6;
            poly(&C, r) / poly(&D, r)
        } else {
            r -= 5.0;
            poly(&E, r) / poly(&F, r)
        };
        if q < 0.0 {
            -v
        } else {
            v
        }
    };
    // Newton step on the side with the smaller tail probability.
    let density = (-0.5 * x * x).exp() / (2.0 * PI).sqrt();
    if density > 0.0 {
        let err = if x < 0.0 {
            std_normal_cdf(x) - p
        } else {
            (1.0 - p) - std_normal_cdf(-x)
        };
        x - err / density
    } else {
        x
    }
}

/// `S(2, ·, gamma, delta)` is normal with mean `delta` and variance `2 gamma^2`.
pub(crate) fn gauss_pdf(x: f64, gamma: f64, delta: f64) -> f64 {
    let u = (x - delta) / gamma;
    (-0.25 * u * u).exp() / (2.0 * gamma * PI.sqrt())
}

pub(crate) fn gauss_cdf(x: f64, gamma: f64, delta: f64) -> f64 {
    0.5 * erfc(-(x - delta) / (2.0 * gamma))
}

pub(crate) fn gauss_quantile(p: f64, gamma: f64, delta: f64) -> f64 {
    delta + SQRT_2 * gamma * std_normal_quantile(p)
}

pub(crate) fn cauchy_pdf(x: f64, gamma: f64, delta: f64) -> f64 {
    let d = x - delta;
    gamma * FRAC_1_PI / (d * d + gamma * gamma)
}

pub(crate) fn cauchy_cdf(x: f64, gamma: f64, delta: f64) -> f64 {
    let u = (x - delta) / gamma;
    if u < -1.0 {
        // atan(1/u) form keeps relative accuracy in the lower tail.
        FRAC_1_PI * (-1.0 / u).atan()
    } else {
        0.5 + FRAC_1_PI * u.atan()
    }
}

pub(crate) fn cauchy_quantile(p: f64, gamma: f64, delta: f64) -> f64 {
    delta + gamma * (PI * (p - 0.5)).tan()
}

/// Lévy law `S(1/2, 1, gamma, delta)`, supported on `(delta, inf)`.
pub(crate) fn levy_pdf(x: f64, gamma: f64, delta: f64) -> f64 {
    let d = x - delta;
    if d <= 0.0 {
        return 0.0;
    }
    (gamma / (2.0 * PI)).sqrt() * d.powf(-1.5) * (-gamma / (2.0 * d)).exp()
}

pub(crate) fn levy_cdf(x: f64, gamma: f64, delta: f64) -> f64 {
    let d = x - delta;
    if d <= 0.0 {
        return 0.0;
    }
    // 2(1 - Φ(sqrt(γ/d))) written as erfc to avoid cancellation.
    erfc((gamma / (2.0 * d)).sqrt())
}

pub(crate) fn levy_quantile(p: f64, gamma: f64, delta: f64) -> f64 {
    // erfc(sqrt(γ/2d)) = p  <=>  sqrt(γ/d) = -Φ^{-1}(p/2)
    let r = std_normal_quantile(0.5 * p);
    delta + gamma / (r * r)
}
