//! Readers and writers for the on-disk formats: JSON for polynomials, 2-D
//! signals, and reports; CSV for sampling sets, samples, evaluation grids,
//! level traces, and eigenvalue lists. Column layouts are documented in
//! docs/formats.md.
//!
//! Every writer has a matching reader and the pair round-trips exactly:
//! floats are printed in shortest round-trip decimal, complex numbers are
//! split into re/im columns (JSON: [re, im] pairs). CSV files open with
//! `# key: value` metadata lines (interval halfwidth, noise level, grid
//! period) so each file is self-contained.

use crate::error::{Error, Result};
use crate::report::{LevelRecord, ReconstructionReport};
use crate::signals::{SampleVector, SamplingSet, SamplingSet2D, Signal2D, TrigPoly};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fs;
use std::io::Write;
use std::path::Path;

#[derive(Serialize, Deserialize)]
struct TrigPolyFile {
    degree: usize,
    period: f64,
    coeffs: Vec<[f64; 2]>,
}

/// JSON form of a polynomial: {degree, period, coeffs as [re, im] pairs}.
pub fn trig_poly_to_json(p: &TrigPoly) -> Result<String> {
    let file = TrigPolyFile {
        degree: p.degree(),
        period: p.period(),
        coeffs: p.coeffs().iter().map(|c| [c.re, c.im]).collect(),
    };
    Ok(serde_json::to_string_pretty(&file)?)
}

pub fn trig_poly_from_json(text: &str) -> Result<TrigPoly> {
    let file: TrigPolyFile = serde_json::from_str(text)?;
    let coeffs = file.coeffs.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
    TrigPoly::new(file.degree, file.period, coeffs)
}

pub fn write_trig_poly<P: AsRef<Path>>(path: P, p: &TrigPoly) -> Result<()> {
    fs::write(path, trig_poly_to_json(p)?)?;
    Ok(())
}

pub fn read_trig_poly<P: AsRef<Path>>(path: P) -> Result<TrigPoly> {
    trig_poly_from_json(&fs::read_to_string(path)?)
}

/// JSON form of a 2-D signal: same fields, coefficients row-major over the
/// (2M+1)×(2M+1) grid.
pub fn signal_2d_to_json(p: &Signal2D) -> Result<String> {
    let file = TrigPolyFile {
        degree: p.degree(),
        period: p.period(),
        coeffs: p.coeffs().iter().map(|c| [c.re, c.im]).collect(),
    };
    Ok(serde_json::to_string_pretty(&file)?)
}

pub fn signal_2d_from_json(text: &str) -> Result<Signal2D> {
    let file: TrigPolyFile = serde_json::from_str(text)?;
    let coeffs = file.coeffs.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
    Signal2D::new(file.degree, file.period, coeffs)
}

pub fn write_signal_2d<P: AsRef<Path>>(path: P, p: &Signal2D) -> Result<()> {
    fs::write(path, signal_2d_to_json(p)?)?;
    Ok(())
}

pub fn read_signal_2d<P: AsRef<Path>>(path: P) -> Result<Signal2D> {
    signal_2d_from_json(&fs::read_to_string(path)?)
}

/// JSON form of a sampling set with optional attached sample values.
#[derive(Debug, Serialize, Deserialize)]
pub struct SamplesJson {
    pub halfwidth: f64,
    pub points: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub noise_level: Option<f64>,
}

pub fn samples_to_json(set: &SamplingSet, b: Option<&SampleVector>) -> Result<String> {
    if let Some(b) = b {
        if b.len() != set.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} values for {} points",
                b.len(),
                set.len()
            )));
        }
    }
    let file = SamplesJson {
        halfwidth: set.interval_halfwidth(),
        points: set.points().to_vec(),
        weights: set.weights().map(|w| w.to_vec()),
        values: b.map(|b| b.values.iter().map(|v| [v.re, v.im]).collect()),
        noise_level: b.and_then(|b| b.noise_level),
    };
    Ok(serde_json::to_string_pretty(&file)?)
}

pub fn samples_from_json(text: &str) -> Result<(SamplingSet, Option<SampleVector>)> {
    let file: SamplesJson = serde_json::from_str(text)?;
    let mut set = SamplingSet::new(file.points, file.halfwidth)?;
    if let Some(w) = file.weights {
        set = set.with_weights(w)?;
    }
    let b = match file.values {
        Some(values) => {
            if values.len() != set.len() {
                return Err(Error::DimensionMismatch(format!(
                    "{} values for {} points",
                    values.len(),
                    set.len()
                )));
            }
            let values = values.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
            Some(SampleVector { values, noise_level: file.noise_level })
        }
        None => None,
    };
    Ok((set, b))
}

// Leading `# key: value` lines of a CSV file; returns the parsed pairs and
// the byte offset where the tabular part begins.
fn split_leading_comments(text: &str) -> (Vec<(String, String)>, usize) {
    let mut meta = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let Some(rest) = line.trim_start().strip_prefix('#') else { break };
        if let Some((k, v)) = rest.split_once(':') {
            meta.push((k.trim().to_string(), v.trim().to_string()));
        }
        offset += line.len();
    }
    (meta, offset)
}

fn meta_value<'a>(meta: &'a [(String, String)], key: &str) -> Option<&'a str> {
    meta.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
}

fn meta_f64(meta: &[(String, String)], key: &str) -> Result<f64> {
    meta_value(meta, key)
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| {
            Error::InvalidParameter(format!("missing or malformed '# {key}:' metadata line"))
        })
}

fn parse_f64(field: &str, column: &str) -> Result<f64> {
    field.parse().map_err(|_| {
        Error::InvalidParameter(format!("malformed {column} value {field:?}"))
    })
}

fn check_header(got: &csv::StringRecord, want: &[&str]) -> Result<()> {
    if got.len() != want.len() || got.iter().zip(want).any(|(g, w)| g != *w) {
        return Err(Error::InvalidParameter(format!(
            "unexpected CSV header {:?}, want {:?}",
            got.iter().collect::<Vec<_>>(),
            want
        )));
    }
    Ok(())
}

// Shared weight-column reader: all fields empty → None, all present → Some,
// mixed → error.
fn collect_weights(raw: Vec<String>) -> Result<Option<Vec<f64>>> {
    if raw.iter().all(|w| w.is_empty()) {
        return Ok(None);
    }
    if raw.iter().any(|w| w.is_empty()) {
        return Err(Error::InvalidParameter(
            "weight column must be entirely present or entirely empty".into(),
        ));
    }
    Ok(Some(raw.iter().map(|w| parse_f64(w, "w")).collect::<Result<_>>()?))
}

/// CSV: `# halfwidth:` metadata, then columns t,w (w empty when the set has
/// no explicit weights).
pub fn write_sampling_set<P: AsRef<Path>>(path: P, set: &SamplingSet) -> Result<()> {
    let mut buf = Vec::new();
    writeln!(buf, "# halfwidth: {}", set.interval_halfwidth())?;
    let mut w = csv::Writer::from_writer(&mut buf);
    w.write_record(["t", "w"])?;
    for (j, &t) in set.points().iter().enumerate() {
        let weight = set.weights().map_or(String::new(), |ws| ws[j].to_string());
        w.write_record(&[t.to_string(), weight])?;
    }
    w.flush()?;
    drop(w);
    fs::write(path, buf)?;
    Ok(())
}

pub fn read_sampling_set<P: AsRef<Path>>(path: P) -> Result<SamplingSet> {
    let text = fs::read_to_string(path)?;
    let (meta, offset) = split_leading_comments(&text);
    let halfwidth = meta_f64(&meta, "halfwidth")?;
    let mut rdr = csv::Reader::from_reader(text[offset..].as_bytes());
    check_header(rdr.headers()?, &["t", "w"])?;
    let mut points = Vec::new();
    let mut weights = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        points.push(parse_f64(&rec[0], "t")?);
        weights.push(rec[1].to_string());
    }
    let mut set = SamplingSet::new(points, halfwidth)?;
    if let Some(w) = collect_weights(weights)? {
        set = set.with_weights(w)?;
    }
    Ok(set)
}

/// CSV: `# halfwidth:` and (when known) `# delta:` metadata, then columns
/// t,w,re_b,im_b.
pub fn write_samples<P: AsRef<Path>>(path: P, set: &SamplingSet, b: &SampleVector) -> Result<()> {
    if b.len() != set.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} values for {} points",
            b.len(),
            set.len()
        )));
    }
    let mut buf = Vec::new();
    writeln!(buf, "# halfwidth: {}", set.interval_halfwidth())?;
    if let Some(delta) = b.noise_level {
        writeln!(buf, "# delta: {delta}")?;
    }
    let mut w = csv::Writer::from_writer(&mut buf);
    w.write_record(["t", "w", "re_b", "im_b"])?;
    for (j, (&t, v)) in set.points().iter().zip(&b.values).enumerate() {
        let weight = set.weights().map_or(String::new(), |ws| ws[j].to_string());
        w.write_record(&[t.to_string(), weight, v.re.to_string(), v.im.to_string()])?;
    }
    w.flush()?;
    drop(w);
    fs::write(path, buf)?;
    Ok(())
}

pub fn read_samples<P: AsRef<Path>>(path: P) -> Result<(SamplingSet, SampleVector)> {
    let text = fs::read_to_string(path)?;
    let (meta, offset) = split_leading_comments(&text);
    let halfwidth = meta_f64(&meta, "halfwidth")?;
    let delta = meta_value(&meta, "delta").map(|v| parse_f64(v, "delta")).transpose()?;
    let mut rdr = csv::Reader::from_reader(text[offset..].as_bytes());
    check_header(rdr.headers()?, &["t", "w", "re_b", "im_b"])?;
    let mut points = Vec::new();
    let mut weights = Vec::new();
    let mut values = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        points.push(parse_f64(&rec[0], "t")?);
        weights.push(rec[1].to_string());
        values.push(Complex64::new(parse_f64(&rec[2], "re_b")?, parse_f64(&rec[3], "im_b")?));
    }
    let mut set = SamplingSet::new(points, halfwidth)?;
    if let Some(w) = collect_weights(weights)? {
        set = set.with_weights(w)?;
    }
    Ok((set, SampleVector { values, noise_level: delta }))
}

/// CSV: `# halfwidth:` and optional `# delta:` metadata, then columns
/// u,v,w,re_b,im_b.
pub fn write_samples_2d<P: AsRef<Path>>(
    path: P,
    set: &SamplingSet2D,
    b: &SampleVector,
) -> Result<()> {
    if b.len() != set.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} values for {} points",
            b.len(),
            set.len()
        )));
    }
    let mut buf = Vec::new();
    writeln!(buf, "# halfwidth: {}", set.interval_halfwidth())?;
    if let Some(delta) = b.noise_level {
        writeln!(buf, "# delta: {delta}")?;
    }
    let mut w = csv::Writer::from_writer(&mut buf);
    w.write_record(["u", "v", "w", "re_b", "im_b"])?;
    for (j, (&(u, v), val)) in set.points().iter().zip(&b.values).enumerate() {
        let weight = set.weights().map_or(String::new(), |ws| ws[j].to_string());
        w.write_record(&[
            u.to_string(),
            v.to_string(),
            weight,
            val.re.to_string(),
            val.im.to_string(),
        ])?;
    }
    w.flush()?;
    drop(w);
    fs::write(path, buf)?;
    Ok(())
}

pub fn read_samples_2d<P: AsRef<Path>>(path: P) -> Result<(SamplingSet2D, SampleVector)> {
    let text = fs::read_to_string(path)?;
    let (meta, offset) = split_leading_comments(&text);
    let halfwidth = meta_f64(&meta, "halfwidth")?;
    let delta = meta_value(&meta, "delta").map(|v| parse_f64(v, "delta")).transpose()?;
    let mut rdr = csv::Reader::from_reader(text[offset..].as_bytes());
    check_header(rdr.headers()?, &["u", "v", "w", "re_b", "im_b"])?;
    let mut points = Vec::new();
    let mut weights = Vec::new();
    let mut values = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        points.push((parse_f64(&rec[0], "u")?, parse_f64(&rec[1], "v")?));
        weights.push(rec[2].to_string());
        values.push(Complex64::new(parse_f64(&rec[3], "re_b")?, parse_f64(&rec[4], "im_b")?));
    }
    let mut set = SamplingSet2D::new(points, halfwidth)?;
    if let Some(w) = collect_weights(weights)? {
        set = set.with_weights(w)?;
    }
    Ok((set, SampleVector { values, noise_level: delta }))
}

/// CSV: `# period:` metadata, then columns t,re,im; one row per grid node
/// t_s = -P/2 + sP/n.
pub fn write_grid<P: AsRef<Path>>(path: P, period: f64, values: &[Complex64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::InvalidParameter("grid must be non-empty".into()));
    }
    let n = values.len();
    let mut buf = Vec::new();
    writeln!(buf, "# period: {period}")?;
    let mut w = csv::Writer::from_writer(&mut buf);
    w.write_record(["t", "re", "im"])?;
    for (s, v) in values.iter().enumerate() {
        let t = -period / 2.0 + s as f64 * period / n as f64;
        w.write_record(&[t.to_string(), v.re.to_string(), v.im.to_string()])?;
    }
    w.flush()?;
    drop(w);
    fs::write(path, buf)?;
    Ok(())
}

pub fn read_grid<P: AsRef<Path>>(path: P) -> Result<(f64, Vec<Complex64>)> {
    let text = fs::read_to_string(path)?;
    let (meta, offset) = split_leading_comments(&text);
    let period = meta_f64(&meta, "period")?;
    let mut rdr = csv::Reader::from_reader(text[offset..].as_bytes());
    check_header(rdr.headers()?, &["t", "re", "im"])?;
    let mut values = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        values.push(Complex64::new(parse_f64(&rec[1], "re")?, parse_f64(&rec[2], "im")?));
    }
    if values.is_empty() {
        return Err(Error::InvalidParameter("grid file has no rows".into()));
    }
    Ok((period, values))
}

/// CSV: `# period:` and `# n:` metadata, then columns u,v,re,im for the
/// row-major n×n grid.
pub fn write_grid_2d<P: AsRef<Path>>(path: P, period: f64, values: &[Complex64]) -> Result<()> {
    let n = (values.len() as f64).sqrt().round() as usize;
    if n == 0 || n * n != values.len() {
        return Err(Error::DimensionMismatch(format!(
            "2-D grid needs a square number of values, got {}",
            values.len()
        )));
    }
    let mut buf = Vec::new();
    writeln!(buf, "# period: {period}")?;
    writeln!(buf, "# n: {n}")?;
    let mut w = csv::Writer::from_writer(&mut buf);
    w.write_record(["u", "v", "re", "im"])?;
    let coord = |s: usize| -period / 2.0 + s as f64 * period / n as f64;
    for (idx, val) in values.iter().enumerate() {
        w.write_record(&[
            coord(idx / n).to_string(),
            coord(idx % n).to_string(),
            val.re.to_string(),
            val.im.to_string(),
        ])?;
    }
    w.flush()?;
    drop(w);
    fs::write(path, buf)?;
    Ok(())
}

pub fn read_grid_2d<P: AsRef<Path>>(path: P) -> Result<(f64, usize, Vec<Complex64>)> {
    let text = fs::read_to_string(path)?;
    let (meta, offset) = split_leading_comments(&text);
    let period = meta_f64(&meta, "period")?;
    let n = meta_f64(&meta, "n")? as usize;
    let mut rdr = csv::Reader::from_reader(text[offset..].as_bytes());
    check_header(rdr.headers()?, &["u", "v", "re", "im"])?;
    let mut values = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        values.push(Complex64::new(parse_f64(&rec[2], "re")?, parse_f64(&rec[3], "im")?));
    }
    if values.len() != n * n {
        return Err(Error::DimensionMismatch(format!(
            "expected {} grid rows for n = {n}, got {}",
            n * n,
            values.len()
        )));
    }
    Ok((period, n, values))
}

/// CSV columns: level,iterations,residual,tail,rule.
pub fn write_level_trace<P: AsRef<Path>>(path: P, records: &[LevelRecord]) -> Result<()> {
    let mut buf = Vec::new();
    let mut w = csv::Writer::from_writer(&mut buf);
    w.write_record(["level", "iterations", "residual", "tail", "rule"])?;
    for r in records {
        w.write_record(&[
            r.level.to_string(),
            r.iterations.to_string(),
            r.data_residual.to_string(),
            r.tail_estimate.to_string(),
            r.rule.clone(),
        ])?;
    }
    w.flush()?;
    drop(w);
    fs::write(path, buf)?;
    Ok(())
}

pub fn read_level_trace<P: AsRef<Path>>(path: P) -> Result<Vec<LevelRecord>> {
    let text = fs::read_to_string(path)?;
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    check_header(rdr.headers()?, &["level", "iterations", "residual", "tail", "rule"])?;
    let mut records = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        records.push(LevelRecord {
            level: parse_f64(&rec[0], "level")? as usize,
            iterations: parse_f64(&rec[1], "iterations")? as usize,
            data_residual: parse_f64(&rec[2], "residual")?,
            tail_estimate: parse_f64(&rec[3], "tail")?,
            rule: rec[4].to_string(),
        });
    }
    Ok(records)
}

/// CSV columns: index,lambda; eigenvalue or singular-value lists from the
/// spectral diagnostics.
pub fn write_eigenvalues<P: AsRef<Path>>(path: P, lambdas: &[f64]) -> Result<()> {
    let mut buf = Vec::new();
    let mut w = csv::Writer::from_writer(&mut buf);
    w.write_record(["index", "lambda"])?;
    for (i, l) in lambdas.iter().enumerate() {
        w.write_record(&[i.to_string(), l.to_string()])?;
    }
    w.flush()?;
    drop(w);
    fs::write(path, buf)?;
    Ok(())
}

pub fn read_eigenvalues<P: AsRef<Path>>(path: P) -> Result<Vec<f64>> {
    let text = fs::read_to_string(path)?;
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    check_header(rdr.headers()?, &["index", "lambda"])?;
    let mut lambdas = Vec::new();
    for rec in rdr.records() {
        lambdas.push(parse_f64(&rec?[1], "lambda")?);
    }
    Ok(lambdas)
}

pub fn write_report<P: AsRef<Path>>(path: P, report: &ReconstructionReport) -> Result<()> {
    fs::write(path, serde_json::to_string_pretty(report)?)?;
    Ok(())
}

pub fn read_report<P: AsRef<Path>>(path: P) -> Result<ReconstructionReport> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}
