//! Fixed-significance number rendering for text tables.

/// `x` with `sig` significant figures: positional notation for magnitudes
/// in `[1e-4, 1e6)`, otherwise `d.dddE±k`.
pub fn format_sig(x: f64, sig: usize) -> String {
    let sig = sig.max(1);
    if x == 0.0 {
        return format!("{:.*}", sig - 1, 0.0);
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs();
    // Exponent after rounding, so 9.9996 becomes 10.00 rather than 9.9996.
    let rounded: f64 = format!("{:.*e}", sig - 1, mag).parse().unwrap_or(mag);
    let exp = rounded.log10().floor() as i32;
    if (-4..6).contains(&exp) {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        format!("{:.*}", decimals, x)
    } else {
        let s = format!("{:.*e}", sig - 1, x);
        match s.split_once('e') {
            Some((m, e)) => {
                let e: i32 = e.parse().unwrap_or(0);
                format!("{m}E{}{:02}", if e < 0 { '-' } else { '+' }, e.abs())
            }
            None => s,
        }
    }
}
