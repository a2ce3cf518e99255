//! Text formatting shared by the CSV writers.

/// Significant digits in CSV output.
pub const CSV_DIGITS: usize = 12;

/// Formats `v` with [`CSV_DIGITS`] significant digits, fixed-point for
/// moderate magnitudes and scientific otherwise. Never locale dependent.
pub fn sig(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", CSV_DIGITS - 1, v);
    // exponent after rounding, so 9.9999999999995 lands on 1e1
    let exp: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    if (-5..CSV_DIGITS as i32).contains(&exp) {
        let decimals = (CSV_DIGITS as i32 - 1 - exp) as usize;
        format!("{v:.decimals$}")
    } else {
        sci
    }
}

pub fn opt(v: Option<f64>) -> String {
    v.map(sig).unwrap_or_default()
}

/// Joins fields with commas and terminates with `\n`.
pub fn line<I, S>(fields: I) -> String
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let mut out = String::new();
    for (i, f) in fields.into_iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(f.as_ref());
    }
    out.push('\n');
    out
}
