//! Fixed-precision number formatting for human text and CSV.

/// Significant digits in text and CSV output.
pub const TEXT_DIGITS: usize = 12;

/// Magnitudes below this print as `0` in text and CSV.
const ZERO_SNAP: f64 = 1e-14;

/// `%.12g`-style formatting: 12 significant digits, trailing zeros trimmed,
/// scientific notation outside `1e-5 .. 1e12`.
pub fn sig(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x.abs() < ZERO_SNAP {
        return "0".into();
    }
    let sci = format!("{:.*e}", TEXT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..TEXT_DIGITS as i32).contains(&exp) {
        let decimals = (TEXT_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim(format!("{:.*}", decimals, x))
    } else {
        format!("{}e{}", trim(mantissa.to_string()), exp)
    }
}

fn trim(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats() {
        assert_eq!(sig(0.0), "0");
        assert_eq!(sig(-1e-17), "0");
        assert_eq!(sig(1.0), "1");
        assert_eq!(sig(-0.5), "-0.5");
        assert_eq!(sig(2.0 * std::f64::consts::PI / 5.0), "1.25663706144");
        assert_eq!(sig(123456.0), "123456");
        assert_eq!(sig(1.5e-9), "1.5e-9");
        assert_eq!(sig(2.5e13), "2.5e13");
        assert_eq!(sig(0.2), "0.2");
    }
}
