//! Channel matrices from CSV or JSON.
//!
//! CSV: one row per input symbol, comma-separated, optional header line.
//! JSON: `{"matrix": [[...], ...]}`. Either way row `x` is `T(·|x)`.

use std::fs;
use std::path::Path;

use relent_core::apps::Channel;

use crate::CliError;

pub fn read_channel(path: &Path) -> Result<Channel, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let matrix = if text.trim_start().starts_with('{') {
        parse_json(&text)?
    } else {
        parse_csv(&text)?
    };
    Ok(Channel::new(matrix)?)
}

pub fn parse_json(text: &str) -> Result<Vec<Vec<f64>>, CliError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("invalid JSON: {e}")))?;
    let rows = value
        .get("matrix")
        .and_then(|m| m.as_array())
        .ok_or_else(|| CliError::Input("JSON channel needs a \"matrix\" array".into()))?;
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            row.as_array()
                .ok_or_else(|| CliError::Input(format!("matrix row {i} is not an array")))?
                .iter()
                .map(|v| {
                    v.as_f64()
                        .ok_or_else(|| CliError::Input(format!("matrix row {i} has a non-number")))
                })
                .collect()
        })
        .collect()
}

pub fn parse_csv(text: &str) -> Result<Vec<Vec<f64>>, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::Input(format!("invalid CSV: {e}")))?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        let parsed: Result<Vec<f64>, _> = record.iter().map(str::parse::<f64>).collect();
        match parsed {
            Ok(row) => rows.push(row),
            // Only the first line may be a header.
            Err(_) if i == 0 => continue,
            Err(e) => {
                return Err(CliError::Input(format!(
                    "CSV line {}: {e}",
                    record.position().map_or(i as u64 + 1, |p| p.line())
                )))
            }
        }
    }
    if rows.is_empty() {
        return Err(CliError::Input("channel file has no rows".into()));
    }
    Ok(rows)
}
