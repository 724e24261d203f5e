//! Profile, sample and quantile-table files.
//!
//! Profile CSV has the header `alpha,lo,hi` and one row per grid level in
//! ascending order, the last row at `alpha = 1`. Profile JSON carries the
//! same three columns as arrays `grid`, `lo`, `hi`. Numbers are written in
//! their shortest round-trip form, so reading and re-writing a file
//! reproduces it byte for byte.

use std::fs;
use std::io::Write;
use std::path::Path;

use fuzzyvar_core::profile::QuantileTable;
use fuzzyvar_core::{AlphaGrid, AlphaProfile, Sample};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

const PROFILE_HEADER: [&str; 3] = ["alpha", "lo", "hi"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProfileFormat {
    Csv,
    Json,
}

impl ProfileFormat {
    /// JSON for a `.json` extension, CSV otherwise.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => ProfileFormat::Json,
            _ => ProfileFormat::Csv,
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProfileJson {
    grid: Vec<f64>,
    lo: Vec<f64>,
    hi: Vec<f64>,
}

fn parse_number(field: &str, what: &str, row: usize) -> Result<f64, String> {
    let value: f64 = field
        .trim()
        .parse()
        .map_err(|_| format!("row {row}: {what} `{field}` is not a number"))?;
    if !value.is_finite() {
        return Err(format!("row {row}: {what} `{field}` is not finite"));
    }
    Ok(value)
}

fn build_profile(grid: Vec<f64>, lo: Vec<f64>, hi: Vec<f64>) -> Result<AlphaProfile, String> {
    if grid.iter().filter(|&&a| a == 1.0).count() != 1 {
        return Err("exactly one row must have alpha = 1".into());
    }
    let grid = AlphaGrid::from_levels(grid).map_err(|e| e.to_string())?;
    AlphaProfile::new(grid, lo, hi).map_err(|e| e.to_string())
}

pub fn profile_from_csv(text: &str) -> Result<AlphaProfile, String> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| e.to_string())?;
    if header.iter().ne(PROFILE_HEADER) {
        return Err(format!(
            "expected header `alpha,lo,hi`, got `{}`",
            header.iter().collect::<Vec<_>>().join(",")
        ));
    }
    let (mut grid, mut lo, mut hi) = (Vec::new(), Vec::new(), Vec::new());
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| e.to_string())?;
        let row = i + 2;
        if record.len() != 3 {
            return Err(format!(
                "row {row}: expected 3 fields, got {}",
                record.len()
            ));
        }
        grid.push(parse_number(&record[0], "alpha", row)?);
        lo.push(parse_number(&record[1], "lo", row)?);
        hi.push(parse_number(&record[2], "hi", row)?);
    }
    if grid.is_empty() {
        return Err("profile has no rows".into());
    }
    build_profile(grid, lo, hi)
}

pub fn profile_to_csv(profile: &AlphaProfile) -> String {
    let mut out = String::from("alpha,lo,hi\n");
    for ((a, l), h) in profile.levels().iter().zip(profile.lo()).zip(profile.hi()) {
        out.push_str(&format!("{a},{l},{h}\n"));
    }
    out
}

pub fn profile_from_json(text: &str) -> Result<AlphaProfile, String> {
    let raw: ProfileJson = serde_json::from_str(text).map_err(|e| e.to_string())?;
    build_profile(raw.grid, raw.lo, raw.hi)
}

pub fn profile_to_json(profile: &AlphaProfile) -> String {
    let raw = ProfileJson {
        grid: profile.levels().to_vec(),
        lo: profile.lo().to_vec(),
        hi: profile.hi().to_vec(),
    };
    let mut text = serde_json::to_string(&raw).expect("profile arrays are finite");
    text.push('\n');
    text
}

pub fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

pub fn write_text(path: &Path, text: &str) -> CliResult<()> {
    let mut file = fs::File::create(path).map_err(|e| CliError::io(path, e))?;
    file.write_all(text.as_bytes())
        .map_err(|e| CliError::io(path, e))
}

pub fn read_profile(path: &Path) -> CliResult<AlphaProfile> {
    let text = read_text(path)?;
    let parsed = match ProfileFormat::from_path(path) {
        ProfileFormat::Csv => profile_from_csv(&text),
        ProfileFormat::Json => profile_from_json(&text),
    };
    parsed.map_err(|e| CliError::in_file(path, e))
}

pub fn write_profile(path: &Path, profile: &AlphaProfile) -> CliResult<()> {
    let text = match ProfileFormat::from_path(path) {
        ProfileFormat::Csv => profile_to_csv(profile),
        ProfileFormat::Json => profile_to_json(profile),
    };
    write_text(path, &text)
}

/// One number per line, or CSV with a column named `x`. Blank lines are
/// skipped in the plain form.
pub fn sample_from_text(text: &str) -> Result<Sample, String> {
    let first = text.lines().map(str::trim).find(|l| !l.is_empty());
    let values = match first {
        None => return Err("no observations".into()),
        Some(line) if line.parse::<f64>().is_ok() => text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| parse_number(l, "value", i + 1))
            .collect::<Result<Vec<_>, _>>()?,
        Some(_) => sample_column(text)?,
    };
    if values.is_empty() {
        return Err("no observations".into());
    }
    Sample::new(values).map_err(|e| e.to_string())
}

fn sample_column(text: &str) -> Result<Vec<f64>, String> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let column = reader
        .headers()
        .map_err(|e| e.to_string())?
        .iter()
        .position(|h| h == "x")
        .ok_or("CSV samples need a column named `x`")?;
    reader
        .records()
        .enumerate()
        .map(|(i, record)| {
            let record = record.map_err(|e| e.to_string())?;
            let field = record
                .get(column)
                .ok_or(format!("row {}: missing `x`", i + 2))?;
            parse_number(field, "x", i + 2)
        })
        .collect()
}

pub fn read_sample(path: &Path) -> CliResult<Sample> {
    sample_from_text(&read_text(path)?).map_err(|e| CliError::in_file(path, e))
}

/// CSV with header `p,x`: probabilities strictly ascending in `[0, 1]` and
/// non-decreasing quantiles.
pub fn quantile_table_from_csv(text: &str) -> Result<QuantileTable, String> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| e.to_string())?;
    if header.iter().ne(["p", "x"]) {
        return Err("expected header `p,x`".into());
    }
    let (mut p, mut x) = (Vec::new(), Vec::new());
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| e.to_string())?;
        if record.len() != 2 {
            return Err(format!("row {}: expected 2 fields", i + 2));
        }
        p.push(parse_number(&record[0], "p", i + 2)?);
        x.push(parse_number(&record[1], "x", i + 2)?);
    }
    QuantileTable::new(p, x).map_err(|e| e.to_string())
}

pub fn read_quantile_table(path: &Path) -> CliResult<QuantileTable> {
    quantile_table_from_csv(&read_text(path)?).map_err(|e| CliError::in_file(path, e))
}
