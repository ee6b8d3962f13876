//! Deterministic number and time formatting.

use super::Failure;

/// Formats with exactly twelve significant digits in scientific notation,
/// independent of locale. Negative zero collapses to zero.
pub fn sig12(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.11e}")
}

/// The value actually printed by [`sig12`], as a float again; used so JSON
/// output carries the same precision as CSV.
pub fn round12(x: f64) -> f64 {
    sig12(x).parse().expect("sig12 output always parses")
}

/// Parses a time flag: either a plain number or the token `pi/omega`, which
/// avoids the user re-entering pi to full precision.
pub fn parse_time(spec: &str, omega: f64) -> Result<(f64, String), Failure> {
    let trimmed = spec.trim();
    if trimmed == "pi/omega" {
        return Ok((std::f64::consts::PI / omega, trimmed.to_string()));
    }
    match trimmed.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok((v, trimmed.to_string())),
        _ => Err(Failure::Usage(format!(
            "cannot parse time {spec:?}; expected a number or \"pi/omega\""
        ))),
    }
}
