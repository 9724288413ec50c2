//! Output formatting shared by the record types and the CLI: integers as
//! decimal strings (values may exceed 2^53), reals with 6 significant digits.

/// Render with 6 significant digits, plain decimal notation.
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    let prec = (5 - mag).max(0) as usize;
    format!("{x:.prec$}")
}

/// JSON string literal (quoted and escaped).
pub fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}
