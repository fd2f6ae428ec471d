//! Diff-stable numeric formatting shared by the CLI and golden tests.

/// Fixed decimal formatting with 6 significant digits. Counts and other
/// exact integers print without a fractional part.
pub fn fmt6(x: f64) -> String {
    format_significant(x, 6)
}

pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    // normalize "-0.000000" style output
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        return "0".to_string();
    }
    s
}
