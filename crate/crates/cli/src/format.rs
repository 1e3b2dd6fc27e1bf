use fracsum_core::Complex64;

pub const SIGNIFICANT_DIGITS: usize = 12;

/// `%.12g`-style formatting: 12 significant digits, trailing zeros trimmed,
/// scientific notation outside [1e-5, 1e12), and never `-0`.
pub fn fmt_real(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exponent) = sci.split_once('e').expect("exponent marker");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    if mantissa.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        return "0".into();
    }
    if !(-5..SIGNIFICANT_DIGITS as i32).contains(&exponent) {
        let sign = if exponent < 0 { '-' } else { '+' };
        return format!("{}e{sign}{:02}", trim_zeros(mantissa), exponent.abs());
    }
    let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exponent).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Parts smaller than this fraction of |z| are roundoff and print as `0`.
const NEGLIGIBLE: f64 = 1e-14;

/// `a`, `bi`, `a+bi` or `a-bi`, with each part formatted by [`fmt_real`].
pub fn fmt_complex(z: Complex64) -> String {
    let cutoff = NEGLIGIBLE * z.norm();
    let part = |x: f64| if x.abs() < cutoff { "0".to_string() } else { fmt_real(x) };
    let (re, im) = (part(z.re), part(z.im));
    if im == "0" {
        re
    } else if re == "0" {
        format!("{im}i")
    } else if im.starts_with('-') {
        format!("{re}{im}i")
    } else {
        format!("{re}+{im}i")
    }
}
