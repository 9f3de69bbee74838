use std::path::Path;

use conelattice::Vector;
use serde::Serialize;

use crate::CliError;

/// A float with 17 significant digits.
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn vec(v: &Vector) -> String {
    let parts: Vec<String> = v.iter().map(|&x| num(x)).collect();
    format!("({})", parts.join(", "))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

pub fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> Result<(), CliError> {
    if let Some(path) = path {
        std::fs::write(path, to_json(value))
            .map_err(|e| CliError::Schema(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}
