pub mod cli;
pub mod converse;
pub mod dsbs;
pub mod error;
pub mod lp;
pub mod oracle;
pub mod probability;
pub mod relaxations;

pub use error::{Error, Result};

/// Fixed-point rendering with at most twelve decimals and no trailing zeros.
pub fn fmt_num(v: f64) -> String {
    if !v.is_finite() {
        return format!("{}", v);
    }
    let s = format!("{:.12}", v);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}
