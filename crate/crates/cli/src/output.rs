use std::io::Write;
use std::path::Path;

use polyharm::scalar::format_rational;
use polyharm::{ExactReal, Rational};
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::Format;

pub fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

pub fn q(x: &Rational) -> String {
    format_rational(x)
}

pub fn f(x: &Rational) -> f64 {
    x.to_real()
}

/// Resolves `--format` against the formats a command can produce; the first
/// entry is the default.
pub fn pick(format: Option<Format>, allowed: &[Format], command: &str) -> Result<Format> {
    match format {
        None => Ok(allowed[0]),
        Some(fmt) if allowed.contains(&fmt) => Ok(fmt),
        Some(fmt) => Err(CliError::Usage(format!("{command} cannot write {fmt:?} output"))),
    }
}
