//! Deterministic CSV and JSON writers.
//!
//! Floats are written with 17 significant digits in scientific notation,
//! headers carry the crate version and the effective configuration.

use std::io::Write;

use serde::Serialize;

use crate::error::Result;

/// `x` with 17 significant digits.
pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes `# kgws <version>` and `# config: <json>` comment lines.
pub fn csv_header(out: &mut dyn Write, config: &impl Serialize) -> Result<()> {
    writeln!(out, "# kgws {}", kgws::VERSION)?;
    writeln!(out, "# config: {}", serde_json::to_string(config)?)?;
    Ok(())
}

/// Extra `# key: value` comment line.
pub fn csv_comment(out: &mut dyn Write, key: &str, value: impl std::fmt::Display) -> Result<()> {
    writeln!(out, "# {key}: {value}")?;
    Ok(())
}

/// JSON document wrapping a payload with the version and config.
#[derive(Debug, Serialize)]
pub struct Document<'a, C: Serialize, P: Serialize> {
    pub version: &'a str,
    pub config: &'a C,
    #[serde(flatten)]
    pub payload: P,
}

pub fn write_json<C: Serialize, P: Serialize>(
    out: &mut dyn Write,
    config: &C,
    payload: P,
) -> Result<()> {
    let doc = Document {
        version: kgws::VERSION,
        config,
        payload,
    };
    serde_json::to_writer_pretty(&mut *out, &doc)?;
    writeln!(out)?;
    Ok(())
}
