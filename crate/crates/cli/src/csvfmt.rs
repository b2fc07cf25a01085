//! Float formatting for the CSV outputs: 17 significant digits,
//! deterministic byte-for-byte.

pub fn sig17(x: f64) -> String {
    format!("{:.16e}", x)
}
