//! Subcommand implementations behind the thin `bandlimited` binary: signal
//! generation, sampling, perturbation, reconstruction, and spectral
//! diagnostics.
//!
//! Each run is driven by one JSON [`RunConfig`] (every field optional) plus
//! flag overrides; the fully resolved configuration is embedded in the
//! emitted report so any artifact can be replayed from its report alone.
//! Commands communicate through files in the output directory under fixed
//! names (see the `*_FILE` constants and docs/formats.md) so that
//! `generate → noise → reconstruct` pipelines need no explicit paths.

use crate::act::{act_reconstruct, ActOptions};
use crate::error::{Error, Result};
use crate::frame::{reconstruct_cg, reconstruct_tsvd};
use crate::io;
use crate::multilevel::{multilevel_reconstruct, MultilevelOptions};
use crate::plot::{ChartPanel, Figure, HeatmapPanel, Series};
use crate::report::ReconstructionReport;
use crate::signals::{
    add_noise, gap_set, generate_bandlimited, jittered_set, relative_error, sample_poly,
    SamplingSet, SpectrumDecay,
};
use crate::spectra;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fs;
use std::path::{Path, PathBuf};

pub const SIGNAL_FILE: &str = "signal.json";
pub const SET_FILE: &str = "set.csv";
pub const SAMPLES_FILE: &str = "samples.csv";
pub const NOISY_FILE: &str = "noisy.csv";
pub const RECONSTRUCTION_FILE: &str = "reconstruction.json";
pub const COEFFICIENTS_FILE: &str = "coefficients.csv";
pub const GRID_FILE: &str = "grid.csv";
pub const REPORT_FILE: &str = "report.json";
pub const TRACE_FILE: &str = "trace.csv";
pub const OVERLAY_FILE: &str = "overlay.svg";
pub const EIGENVALUES_FILE: &str = "eigenvalues.csv";
pub const SPECTRUM_SVG_FILE: &str = "spectrum.svg";

/// Sampling-set recipe inside a [`RunConfig`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SetConfig {
    /// "jittered" or "gap".
    pub kind: String,
    pub n_points: usize,
    pub gap_ratio: f64,
    /// Interval halfwidth; defaults to (2·degree+1)/2 so the torus period
    /// matches the default polynomial period.
    pub halfwidth: Option<f64>,
    // Gap-set parameters.
    pub n_half: usize,
    pub oversampling: usize,
    pub gap_factor: usize,
}

impl Default for SetConfig {
    fn default() -> Self {
        SetConfig {
            kind: "jittered".into(),
            n_points: 64,
            gap_ratio: 0.8,
            halfwidth: None,
            n_half: 16,
            oversampling: 2,
            gap_factor: 2,
        }
    }
}

/// Diagnostics recipe for `spectrum`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SpectrumConfig {
    /// "prolate", "gap", or "samples" (Toeplitz spectrum of the set on disk).
    pub source: String,
    /// Prolate section half-size n (dimension 2n+1).
    pub n: usize,
    /// Oversampling rate m.
    pub m: usize,
    pub n_half: usize,
    pub oversampling: usize,
    pub gap_factor: usize,
    pub bins: usize,
}

impl Default for SpectrumConfig {
    fn default() -> Self {
        SpectrumConfig {
            source: "prolate".into(),
            n: 64,
            m: 2,
            n_half: 64,
            oversampling: 2,
            gap_factor: 2,
            bins: 40,
        }
    }
}

/// One run's configuration; a JSON file with any subset of these fields,
/// optionally overridden by the `--seed/--method/--delta/--degree` flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub seed: Option<u64>,
    pub degree: Option<usize>,
    /// Polynomial period; defaults to the sampling set's torus period.
    pub period: Option<f64>,
    /// Spectral envelope e^{-rate·|k|} for generated truths; 0 = flat.
    pub decay_rate: Option<f64>,
    pub set: Option<SetConfig>,
    // Input-path overrides (default: fixed names inside --out).
    pub signal: Option<String>,
    pub set_file: Option<String>,
    pub samples: Option<String>,
    /// Reference signal for error reporting; defaults to signal.json when
    /// that file exists.
    pub truth: Option<String>,
    pub method: Option<String>,
    pub delta: Option<f64>,
    /// Exponent p of the threshold rule τ = B(δ/p)^{1/(p+1)}.
    pub tau_exponent: Option<u32>,
    pub tau_stop: Option<f64>,
    pub max_level: Option<usize>,
    pub max_iter: Option<usize>,
    /// Evaluation grid size for reconstruction output.
    pub grid: Option<usize>,
    /// Emit the truth/samples/reconstruction overlay SVG; defaults to true
    /// when a truth signal is available.
    pub svg: Option<bool>,
    pub spectrum: Option<SpectrumConfig>,
}

/// Parse a config file; `None` yields the all-defaults config.
pub fn load_config(path: Option<&Path>) -> Result<RunConfig> {
    match path {
        None => Ok(RunConfig::default()),
        Some(p) => Ok(serde_json::from_str(&fs::read_to_string(p)?)?),
    }
}

/// Fold the cross-cutting flags into the config (flags win).
pub fn apply_overrides(
    cfg: &mut RunConfig,
    seed: Option<u64>,
    method: Option<&str>,
    delta: Option<f64>,
    degree: Option<usize>,
) {
    if seed.is_some() {
        cfg.seed = seed;
    }
    if let Some(m) = method {
        cfg.method = Some(m.to_string());
    }
    if delta.is_some() {
        cfg.delta = delta;
    }
    if degree.is_some() {
        cfg.degree = degree;
    }
}

fn usage(msg: &str) -> Error {
    Error::InvalidParameter(msg.into())
}

fn build_set(set_cfg: &SetConfig, degree: usize, seed: u64) -> Result<SamplingSet> {
    match set_cfg.kind.as_str() {
        "jittered" => {
            let halfwidth = set_cfg.halfwidth.unwrap_or((2 * degree + 1) as f64 / 2.0);
            jittered_set(set_cfg.n_points, set_cfg.gap_ratio, halfwidth, seed)
        }
        "gap" => gap_set(set_cfg.n_half, set_cfg.oversampling, set_cfg.gap_factor),
        other => Err(usage(&format!(
            "unknown set kind {other:?}; expected \"jittered\" or \"gap\""
        ))),
    }
}

// Input resolution: explicit config path wins, otherwise the first of the
// fixed names that exists inside the output directory.
fn resolve_input(explicit: Option<&str>, out: &Path, names: &[&str]) -> Result<PathBuf> {
    if let Some(p) = explicit {
        return Ok(PathBuf::from(p));
    }
    for name in names {
        let p = out.join(name);
        if p.exists() {
            return Ok(p);
        }
    }
    Err(usage(&format!(
        "no input found: expected one of {names:?} in {} or an explicit path in the config",
        out.display()
    )))
}

/// Paths written by [`cmd_generate`].
pub struct GeneratedArtifacts {
    pub signal: PathBuf,
    pub set: PathBuf,
    pub samples: PathBuf,
    pub seed: u64,
}

/// Generate a pseudo-random truth signal, a sampling set, and clean samples.
pub fn cmd_generate(cfg: &RunConfig, out: &Path) -> Result<GeneratedArtifacts> {
    fs::create_dir_all(out)?;
    let seed = cfg.seed.unwrap_or(0);
    let degree = cfg.degree.unwrap_or(10);
    let decay = match cfg.decay_rate {
        None => SpectrumDecay::Flat,
        Some(r) if r == 0.0 => SpectrumDecay::Flat,
        Some(r) => SpectrumDecay::Exponential(r),
    };
    let set_cfg = cfg.set.clone().unwrap_or_default();
    let set = build_set(&set_cfg, degree, seed)?;
    let period = cfg.period.unwrap_or(set.period());
    let truth = generate_bandlimited(degree, period, seed, decay)?;
    let b = sample_poly(&truth, &set);

    let artifacts = GeneratedArtifacts {
        signal: out.join(SIGNAL_FILE),
        set: out.join(SET_FILE),
        samples: out.join(SAMPLES_FILE),
        seed,
    };
    io::write_trig_poly(&artifacts.signal, &truth)?;
    io::write_sampling_set(&artifacts.set, &set)?;
    io::write_samples(&artifacts.samples, &set, &b)?;
    println!("seed: {seed}");
    println!(
        "wrote {} {} {}",
        artifacts.signal.display(),
        artifacts.set.display(),
        artifacts.samples.display()
    );
    Ok(artifacts)
}

/// Evaluate a signal on a sampling set and write the sample file.
pub fn cmd_sample(cfg: &RunConfig, out: &Path) -> Result<PathBuf> {
    fs::create_dir_all(out)?;
    let signal = io::read_trig_poly(resolve_input(cfg.signal.as_deref(), out, &[SIGNAL_FILE])?)?;
    let set = io::read_sampling_set(resolve_input(cfg.set_file.as_deref(), out, &[SET_FILE])?)?;
    let b = sample_poly(&signal, &set);
    let path = out.join(SAMPLES_FILE);
    io::write_samples(&path, &set, &b)?;
    println!("wrote {} ({} samples)", path.display(), b.len());
    Ok(path)
}

/// Perturb samples to an exact relative noise level δ.
pub fn cmd_noise(cfg: &RunConfig, out: &Path) -> Result<PathBuf> {
    fs::create_dir_all(out)?;
    let delta = cfg.delta.ok_or_else(|| usage("noise requires --delta"))?;
    let seed = cfg.seed.unwrap_or(0);
    let input = resolve_input(cfg.samples.as_deref(), out, &[SAMPLES_FILE])?;
    let (set, b) = io::read_samples(&input)?;
    let noisy = add_noise(&b, delta, seed)?;
    let path = out.join(NOISY_FILE);
    io::write_samples(&path, &set, &noisy)?;
    println!("seed: {seed}");
    println!("wrote {} (delta = {delta})", path.display());
    Ok(path)
}

/// Reconstruction method ids accepted by `--method`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    FrameTsvd,
    FrameCg,
    Act,
    Multilevel,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Method> {
        match s {
            "frame-tsvd" => Ok(Method::FrameTsvd),
            "frame-cg" => Ok(Method::FrameCg),
            "act" => Ok(Method::Act),
            "multilevel" => Ok(Method::Multilevel),
            other => Err(Error::InvalidParameter(format!(
                "unknown method {other:?}; expected frame-tsvd, frame-cg, act, or multilevel"
            ))),
        }
    }
}

/// Run one reconstruction method on the samples in the output directory
/// (noisy.csv preferred over samples.csv) and write the grid, report, trace,
/// and overlay files.
pub fn cmd_reconstruct(cfg: &RunConfig, out: &Path) -> Result<ReconstructionReport> {
    fs::create_dir_all(out)?;
    let method: Method = cfg
        .method
        .as_deref()
        .ok_or_else(|| usage("reconstruct requires --method"))?
        .parse()?;
    let input = resolve_input(cfg.samples.as_deref(), out, &[NOISY_FILE, SAMPLES_FILE])?;
    let (set, b) = io::read_samples(&input)?;
    // δ: flag/config first, then the noise level recorded in the sample file.
    let delta = cfg.delta.or(b.noise_level);
    let need_delta = |what: &str| {
        delta.ok_or_else(|| {
            usage(&format!(
                "{what} requires --delta (no noise level recorded in {})",
                input.display()
            ))
        })
    };
    let grid_n = cfg.grid.unwrap_or(1024);
    let period = set.period();

    let (grid_values, mut report) = match method {
        Method::FrameTsvd => {
            let delta = need_delta("frame-tsvd")?;
            let p = cfg.tau_exponent.unwrap_or(1);
            let (expansion, report) = reconstruct_tsvd(&set, &b, delta, p)?;
            let coeffs = crate::signals::SampleVector::new(expansion.coeffs.clone());
            io::write_samples(out.join(COEFFICIENTS_FILE), &set, &coeffs)?;
            (expansion.eval_grid(-period / 2.0, period / 2.0, grid_n), report)
        }
        Method::FrameCg => {
            let delta = need_delta("frame-cg")?;
            let tau_stop = cfg.tau_stop.unwrap_or(1.1);
            let max_iter = cfg.max_iter.unwrap_or(4 * set.len());
            let (expansion, report) = reconstruct_cg(&set, &b, delta, tau_stop, max_iter)?;
            let coeffs = crate::signals::SampleVector::new(expansion.coeffs.clone());
            io::write_samples(out.join(COEFFICIENTS_FILE), &set, &coeffs)?;
            (expansion.eval_grid(-period / 2.0, period / 2.0, grid_n), report)
        }
        Method::Act => {
            let degree = cfg.degree.ok_or_else(|| usage("act requires --degree"))?;
            let opts = ActOptions {
                period: Some(period),
                max_iter: cfg.max_iter,
                ..ActOptions::default()
            };
            let (poly, report) = act_reconstruct(&set, &b, degree, &opts)?;
            io::write_trig_poly(out.join(RECONSTRUCTION_FILE), &poly)?;
            (poly.eval_grid(grid_n), report)
        }
        Method::Multilevel => {
            let delta = need_delta("multilevel")?;
            let mut opts = MultilevelOptions::default();
            if let Some(t) = cfg.tau_stop {
                opts.tau_stop = t;
            }
            // --degree caps the sweep.
            if let Some(m) = cfg.max_level.or(cfg.degree) {
                opts.max_level = m;
            } else {
                opts.max_level = opts.max_level.min((set.len() - 1) / 2);
            }
            opts.max_iter_per_level = cfg.max_iter;
            let (poly, trace, report) = multilevel_reconstruct(&set, &b, delta, &opts)?;
            io::write_trig_poly(out.join(RECONSTRUCTION_FILE), &poly)?;
            io::write_level_trace(out.join(TRACE_FILE), &trace.records)?;
            for r in &trace.records {
                println!(
                    "level {:>3}: iterations={:<3} residual={:.6e} tail={:.6e} rule={}",
                    r.level, r.iterations, r.data_residual, r.tail_estimate, r.rule
                );
            }
            (poly.eval_grid(grid_n), report)
        }
    };

    io::write_grid(out.join(GRID_FILE), period, &grid_values)?;

    // Relative error and overlay need a reference signal.
    let truth_path = match &cfg.truth {
        Some(p) => Some(PathBuf::from(p)),
        None => {
            let p = out.join(SIGNAL_FILE);
            p.exists().then_some(p)
        }
    };
    let truth = truth_path.map(io::read_trig_poly).transpose()?;
    let ts: Vec<f64> =
        (0..grid_n).map(|s| -period / 2.0 + s as f64 * period / grid_n as f64).collect();
    if let Some(truth) = &truth {
        let truth_values = truth.eval_many(&ts);
        let rel = relative_error(&truth_values, &grid_values)?;
        report.relative_error = Some(rel);
        println!("relative_error: {rel}");

        if cfg.svg.unwrap_or(true) {
            let line = |vals: &[Complex64]| -> Vec<(f64, f64)> {
                ts.iter().zip(vals).map(|(&t, v)| (t, v.re)).collect()
            };
            let dots: Vec<(f64, f64)> =
                set.points().iter().zip(&b.values).map(|(&t, v)| (t, v.re)).collect();
            let panel = ChartPanel::new(&format!("{} reconstruction", report.method))
                .labels("t", "Re f(t)")
                .with(Series::line("truth", line(&truth_values)).with_color("#999999"))
                .with(Series::line("reconstruction", line(&grid_values)).with_color("#d62728"))
                .with(Series::dots("samples", dots).with_color("#1f77b4"));
            crate::plot::save_figure(out.join(OVERLAY_FILE), &Figure::new("", 1).panel(panel))?;
        }
    }

    report.config = Some(resolved_config(cfg, &input, method));
    io::write_report(out.join(REPORT_FILE), &report)?;
    println!(
        "method: {}  iterations: {}  data_residual: {:.6e}",
        report.method, report.iterations, report.data_residual
    );
    Ok(report)
}

fn resolved_config(cfg: &RunConfig, input: &Path, method: Method) -> serde_json::Value {
    let mut value = serde_json::to_value(cfg).unwrap_or_default();
    if let Some(map) = value.as_object_mut() {
        map.insert("resolved_input".into(), input.display().to_string().into());
        map.insert(
            "resolved_method".into(),
            match method {
                Method::FrameTsvd => "frame-tsvd",
                Method::FrameCg => "frame-cg",
                Method::Act => "act",
                Method::Multilevel => "multilevel",
            }
            .into(),
        );
    }
    value
}

/// Spectral diagnostics: eigenvalue list CSV plus a histogram/decay SVG.
pub fn cmd_spectrum(cfg: &RunConfig, out: &Path) -> Result<PathBuf> {
    fs::create_dir_all(out)?;
    let scfg = cfg.spectrum.clone().unwrap_or_default();
    let (title, eigs, concentration): (String, Vec<f64>, Vec<f64>) = match scfg.source.as_str() {
        "prolate" => {
            let r = spectra::prolate_matrix(scfg.n, scfg.m)?;
            let eigs = spectra::eigenvalues_real(&r)?;
            let conc = eigs.iter().map(|l| l / scfg.m as f64).collect();
            (format!("prolate section n={} m={}", scfg.n, scfg.m), eigs, conc)
        }
        "gap" => {
            let t = spectra::gap_toeplitz(scfg.n_half, scfg.oversampling, scfg.gap_factor)?;
            let eigs = spectra::eigenvalues(&t.dense())?;
            (
                format!(
                    "gap-set Toeplitz M={} m={} L={}",
                    scfg.n_half, scfg.oversampling, scfg.gap_factor
                ),
                eigs.clone(),
                eigs,
            )
        }
        "samples" => {
            let set =
                io::read_sampling_set(resolve_input(cfg.set_file.as_deref(), out, &[SET_FILE])?)?;
            let degree = cfg.degree.ok_or_else(|| usage("spectrum from samples requires --degree"))?;
            let weights = crate::act::default_weights(&set)?;
            let t = crate::act::build_toeplitz(&set, &weights, degree, set.period())?;
            let eigs = spectra::eigenvalues(&t.dense())?;
            (format!("Toeplitz spectrum M={degree}"), eigs.clone(), eigs)
        }
        other => {
            return Err(usage(&format!(
                "unknown spectrum source {other:?}; expected prolate, gap, or samples"
            )))
        }
    };

    let csv_path = out.join(EIGENVALUES_FILE);
    io::write_eigenvalues(&csv_path, &eigs)?;

    let hist = crate::plot::histogram(&concentration, scfg.bins)?;
    let hist_panel = ChartPanel::new(&format!("{title}: spectrum"))
        .labels("eigenvalue", "count")
        .with(Series::bars("eigenvalues", hist));
    // Exponential decay is the story; clamp at 1e-18 to keep the log axis
    // finite in the presence of rounding-level negatives.
    let decay: Vec<(f64, f64)> = eigs
        .iter()
        .rev()
        .enumerate()
        .map(|(i, &l)| (i as f64, l.max(1e-18)))
        .collect();
    let decay_panel = ChartPanel::new(&format!("{title}: decay"))
        .labels("index (descending)", "eigenvalue")
        .log_y()
        .with(Series::line("lambda", decay));
    let svg_path = out.join(SPECTRUM_SVG_FILE);
    crate::plot::save_figure(&svg_path, &Figure::new("", 2).panel(hist_panel).panel(decay_panel))?;

    let lmin = eigs.first().copied().unwrap_or(0.0);
    let lmax = eigs.last().copied().unwrap_or(0.0);
    println!("{title}: {} eigenvalues, min {lmin:.6e}, max {lmax:.6e}", eigs.len());
    println!("wrote {} {}", csv_path.display(), svg_path.display());
    Ok(csv_path)
}

// Heatmap helper shared by the 2-D demo; re-exported here so examples can
// render fields without repeating the plumbing.
pub fn heatmap_from_grid(
    title: &str,
    period: f64,
    n: usize,
    values: &[Complex64],
) -> Result<HeatmapPanel> {
    let field: Vec<f64> = values.iter().map(|v| v.re).collect();
    HeatmapPanel::new(title, field, n, n, (-period / 2.0, period / 2.0), (-period / 2.0, period / 2.0))
}
