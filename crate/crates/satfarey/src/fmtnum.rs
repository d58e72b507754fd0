//! Deterministic float formatting for file output: 12 significant digits,
//! trailing zeros trimmed, scientific notation outside a moderate range.
//! Equal inputs always print equal bytes, so exported files diff cleanly.

/// Formats with 12 significant digits, `%.12g`-style.
pub fn g12(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return if v.is_nan() {
            "nan".to_string()
        } else if v > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        };
    }
    let sci = format!("{v:.11e}");
    let epos = sci.find('e').expect("scientific form has an exponent");
    let exp: i32 = sci[epos + 1..].parse().expect("exponent parses");
    if (-4..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(format!("{v:.decimals$}"))
    } else {
        let mantissa = trim_zeros(sci[..epos].to_string());
        format!("{mantissa}e{exp}")
    }
}

fn trim_zeros(mut s: String) -> String {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}
