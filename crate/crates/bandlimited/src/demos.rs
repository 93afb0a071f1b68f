//! Desk-scale demonstration experiments, each writing a self-contained
//! bundle of CSV tables, SVG figures, and reports:
//!
//! * `spectroscopy`: a synthetic line-spectrum signal sampled at 107
//!   scattered points with 10% noise, reconstructed by every method plus
//!   deliberately under- and over-fitted polynomial degrees;
//! * `gap1d`: conditioning diagnostics contrasting the sinc-frame prolate
//!   sections with the gap-set trigonometric Toeplitz matrices;
//! * `geo2d`: gridding of a smooth 2-D field from 1000 scattered noisy
//!   observations via the 2-D multilevel sweep.
//!
//! The laboratory datasets these experiments are modeled after are not
//! distributed with the crate, so each table prints the error magnitudes
//! reported for the original data as order-of-magnitude context, clearly
//! marked as non-targets: the seeded synthetic analogs match the dimensions
//! of the originals (1024-point grid, 107 samples, δ = 0.1; 1000 samples,
//! δ = 0.05), not their waveforms.

use crate::act::{act_reconstruct, ActOptions};
use crate::error::{Error, Result};
use crate::frame::{reconstruct_cg, reconstruct_tsvd};
use crate::io;
use crate::multilevel::{multilevel_reconstruct, multilevel_reconstruct_2d, MultilevelOptions};
use crate::plot::{histogram, save_figure, ChartPanel, Figure, HeatmapPanel, Series};
use crate::report::ReconstructionReport;
use crate::signals::{
    add_noise, generate_bandlimited, generate_bandlimited_2d, jittered_set, relative_error,
    sample_poly, sample_signal_2d, SampleVector, SamplingSet, SamplingSet2D, Signal2D,
    SpectrumDecay, TrigPoly,
};
use crate::spectra;
use num_complex::Complex64;
use std::fs;
use std::io::Write as _;
use std::path::Path;

/// Grid resolution standing in for the densely sampled original signal.
pub const SPECTRO_GRID: usize = 1024;
pub const SPECTRO_SAMPLES: usize = 107;
pub const SPECTRO_DELTA: f64 = 0.1;
/// Nominal polynomial degree implied by the a-priori bandwidth estimate.
pub const SPECTRO_DEGREE: usize = 30;
/// Degree where the signal content actually ends; the nominal estimate
/// overshoots it, which is the situation bandwidth selection must handle.
pub const SPECTRO_EDGE: usize = 20;
const SPECTRO_GAP: f64 = 0.8;
/// Energy share of the dominant line pair at the effective band edge.
const LINE_FRACTION: f64 = 0.30;
const BULK_DECAY: f64 = 0.12;

pub const GEO_SAMPLES: usize = 1000;
pub const GEO_DELTA: f64 = 0.05;
pub const GEO_DEGREE: usize = 4;
const GEO_DECAY: f64 = 0.7;
pub const GEO_MAX_LEVEL: usize = 10;

// Sub-seeds so truth, sampling locations, and noise use independent streams.
const SET_SEED: u64 = 0x5e7_f00d;
const NOISE_SEED: u64 = 0xbeef;

/// Error magnitudes reported for the original laboratory datasets. The
/// originals are unavailable, so these are context for the table, not
/// reproduction targets; the overfit entry was reported inconsistently at
/// its source (0.2805 in prose, 0.2412 in the figure) and the larger value
/// is listed.
pub const REFERENCE_ERRORS: [(&str, f64); 6] = [
    ("frame-tsvd", 0.0944),
    ("frame-cg", 0.1097),
    ("act-m30", 0.0876),
    ("act-m11", 0.4648),
    ("act-m40", 0.2805),
    ("multilevel", 0.0959),
];

/// Synthetic emission-spectrum analog: a smooth exponentially decaying bulk
/// ending in a dominant line pair at |k| = [`SPECTRO_EDGE`], held in a
/// polynomial of the larger nominal degree whose top coefficients are zero.
/// The line pair carries [`LINE_FRACTION`] of the total energy: enough that
/// no degree below the edge can explain the data, which is what the
/// bandwidth-selection comparison needs, while methods run at the nominal
/// degree waste coefficients on empty rings.
pub fn spectroscopy_truth(seed: u64) -> Result<TrigPoly> {
    let m = SPECTRO_DEGREE;
    let edge = SPECTRO_EDGE;
    let period = (2 * m + 1) as f64;
    let base = generate_bandlimited(m, period, seed, SpectrumDecay::Exponential(BULK_DECAY))?;
    let mut coeffs = base.coeffs().to_vec();
    let unit = |c: Complex64| if c.norm() == 0.0 { Complex64::ONE } else { c / c.norm() };
    let dir_low = unit(coeffs[m - edge]);
    let dir_high = unit(coeffs[m + edge]);
    coeffs[m - edge] = Complex64::ZERO;
    coeffs[m + edge] = Complex64::ZERO;
    for k in (edge + 1)..=m {
        coeffs[m - k] = Complex64::ZERO;
        coeffs[m + k] = Complex64::ZERO;
    }
    let bulk: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
    let amp = (bulk * LINE_FRACTION / (1.0 - LINE_FRACTION) / 2.0).sqrt();
    coeffs[m - edge] = dir_low * amp;
    coeffs[m + edge] = dir_high * amp;
    TrigPoly::new(m, period, coeffs)
}

/// Truth, scattered sampling set, and noisy samples for one spectroscopy
/// instance. Deterministic per seed.
pub fn spectroscopy_instance(seed: u64) -> Result<(TrigPoly, SamplingSet, SampleVector)> {
    let truth = spectroscopy_truth(seed)?;
    let halfwidth = truth.period() / 2.0;
    let set = jittered_set(SPECTRO_SAMPLES, SPECTRO_GAP, halfwidth, seed ^ SET_SEED)?;
    let clean = sample_poly(&truth, &set);
    let noisy = add_noise(&clean, SPECTRO_DELTA, seed ^ NOISE_SEED)?;
    Ok((truth, set, noisy))
}

/// One labeled reconstruction inside a demo bundle.
pub struct DemoRun {
    pub label: String,
    pub relative_error: f64,
    /// Published magnitude for the original dataset; context, not a target.
    pub reference_error: Option<f64>,
    pub report: ReconstructionReport,
    pub grid: Vec<Complex64>,
}

pub struct SpectroscopyBundle {
    pub truth: TrigPoly,
    pub set: SamplingSet,
    pub noisy: SampleVector,
    pub truth_grid: Vec<Complex64>,
    /// frame-tsvd, frame-cg, act-m30, act-m11, act-m40, multilevel.
    pub runs: Vec<DemoRun>,
}

fn reference_for(label: &str) -> Option<f64> {
    REFERENCE_ERRORS.iter().find(|(l, _)| *l == label).map(|&(_, e)| e)
}

/// Run the full spectroscopy comparison and write signal.json, samples.csv,
/// table.csv, trace.csv, and spectroscopy.svg into `out`.
pub fn run_spectroscopy(seed: u64, out: &Path) -> Result<SpectroscopyBundle> {
    fs::create_dir_all(out)?;
    let (truth, set, noisy) = spectroscopy_instance(seed)?;
    let period = truth.period();
    let halfwidth = period / 2.0;
    let truth_grid = truth.eval_grid(SPECTRO_GRID);

    let act_opts = ActOptions { period: Some(period), ..ActOptions::default() };
    let mut runs = Vec::new();
    let push = |label: &str,
                    grid: Vec<Complex64>,
                    report: ReconstructionReport,
                    runs: &mut Vec<DemoRun>|
     -> Result<()> {
        let rel = relative_error(&truth_grid, &grid)?;
        let mut report = report;
        report.relative_error = Some(rel);
        runs.push(DemoRun {
            label: label.to_string(),
            relative_error: rel,
            reference_error: reference_for(label),
            report,
            grid,
        });
        Ok(())
    };

    let (exp, report) = reconstruct_tsvd(&set, &noisy, SPECTRO_DELTA, 1)?;
    push("frame-tsvd", exp.eval_grid(-halfwidth, halfwidth, SPECTRO_GRID), report, &mut runs)?;

    let (exp, report) = reconstruct_cg(&set, &noisy, SPECTRO_DELTA, 1.1, 4 * set.len())?;
    push("frame-cg", exp.eval_grid(-halfwidth, halfwidth, SPECTRO_GRID), report, &mut runs)?;

    for (label, degree) in
        [("act-m30", SPECTRO_DEGREE), ("act-m11", 11), ("act-m40", 40)]
    {
        let (poly, report) = act_reconstruct(&set, &noisy, degree, &act_opts)?;
        push(label, poly.eval_grid(SPECTRO_GRID), report, &mut runs)?;
    }

    let ml_opts = MultilevelOptions { max_level: 36, ..MultilevelOptions::default() };
    let (poly, trace, report) = multilevel_reconstruct(&set, &noisy, SPECTRO_DELTA, &ml_opts)?;
    io::write_level_trace(out.join("trace.csv"), &trace.records)?;
    push("multilevel", poly.eval_grid(SPECTRO_GRID), report, &mut runs)?;

    io::write_trig_poly(out.join("signal.json"), &truth)?;
    io::write_samples(out.join("samples.csv"), &set, &noisy)?;
    write_comparison_table(out.join("table.csv"), &runs)?;

    // Six panels, each truth + reconstruction + the noisy samples.
    let ts: Vec<f64> =
        (0..SPECTRO_GRID).map(|s| -halfwidth + s as f64 * period / SPECTRO_GRID as f64).collect();
    let line = |vals: &[Complex64]| -> Vec<(f64, f64)> {
        ts.iter().zip(vals).map(|(&t, v)| (t, v.re)).collect()
    };
    let dots: Vec<(f64, f64)> =
        set.points().iter().zip(&noisy.values).map(|(&t, v)| (t, v.re)).collect();
    let mut fig = Figure::new("scattered-sample reconstruction comparison", 2);
    for run in &runs {
        let title = format!("{} (error {:.4})", run.label, run.relative_error);
        fig = fig.panel(
            ChartPanel::new(&title)
                .labels("t", "Re f(t)")
                .with(Series::line("truth", line(&truth_grid)).with_color("#9a9a9a"))
                .with(Series::line("reconstruction", line(&run.grid)).with_color("#d62728"))
                .with(Series::dots("samples", dots.clone()).with_color("#1f77b4")),
        );
    }
    save_figure(out.join("spectroscopy.svg"), &fig)?;

    for run in &runs {
        let reference = run
            .reference_error
            .map(|e| format!("  [reference {e}, not a target]"))
            .unwrap_or_default();
        println!("{:<11} error {:.4}{}", run.label, run.relative_error, reference);
    }
    Ok(SpectroscopyBundle { truth, set, noisy, truth_grid, runs })
}

fn write_comparison_table(path: std::path::PathBuf, runs: &[DemoRun]) -> Result<()> {
    let mut buf = Vec::new();
    writeln!(
        buf,
        "# reference_error: magnitude reported for the original (undistributed) dataset;"
    )?;
    writeln!(
        buf,
        "# context only, not a reproduction target. The overfit reference was reported"
    )?;
    writeln!(buf, "# inconsistently at its source (0.2805 prose, 0.2412 figure).")?;
    let mut w = csv::Writer::from_writer(&mut buf);
    w.write_record(["label", "degree", "iterations", "termination", "relative_error", "reference_error"])?;
    for run in runs {
        w.write_record(&[
            run.label.clone(),
            run.report.degree.map(|d| d.to_string()).unwrap_or_default(),
            run.report.iterations.to_string(),
            run.report.termination.clone(),
            run.relative_error.to_string(),
            run.reference_error.map(|e| e.to_string()).unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    drop(w);
    fs::write(path, buf)?;
    Ok(())
}

/// Conditioning study: prolate spectra of the sinc-frame sections next to
/// the gap-set Toeplitz spectra of the polynomial model. Deterministic; no
/// seed involved.
pub fn run_gap1d(out: &Path) -> Result<()> {
    fs::create_dir_all(out)?;
    let n = 64;
    let m = 2;
    let gap_factor = 2;

    let prolate = spectra::prolate_matrix(n, m)?;
    let prolate_eigs = spectra::eigenvalues_real(&prolate)?;
    // Concentration spectrum: eigenvalues relative to the tight-frame bound
    // m, clustering at {0, 1}.
    let concentration: Vec<f64> = prolate_eigs.iter().map(|l| l / m as f64).collect();
    io::write_eigenvalues(out.join("prolate_eigenvalues.csv"), &prolate_eigs)?;

    let toeplitz = spectra::gap_toeplitz(n, m, gap_factor)?;
    let gap_eigs = spectra::eigenvalues(&toeplitz.dense())?;
    io::write_eigenvalues(out.join("gap_eigenvalues.csv"), &gap_eigs)?;

    let fractions = spectra::cluster_fractions(&concentration, &[0.0, 1.0], 0.1)?;
    let gap_fractions = spectra::cluster_fractions(&gap_eigs, &[0.0, 1.0], 0.1)?;

    let decay: Vec<(f64, f64)> = concentration
        .iter()
        .rev()
        .enumerate()
        .map(|(i, &l)| (i as f64, l.max(1e-18)))
        .collect();
    let symbol: Vec<(f64, f64)> = (0..=256)
        .map(|i| {
            let x = -0.5 + i as f64 / 256.0;
            (x, spectra::symbol_partial_sum(&toeplitz.first_column, x).re)
        })
        .collect();
    let block = 1.0 / (2.0 * gap_factor as f64);
    let indicator: Vec<(f64, f64)> = vec![
        (-0.5, 0.0),
        (-block, 0.0),
        (-block, 1.0),
        (block, 1.0),
        (block, 0.0),
        (0.5, 0.0),
    ];

    let fig = Figure::new("why one model is ill-posed and the other is not", 2)
        .panel(
            ChartPanel::new("sinc-frame section: concentration spectrum")
                .labels("eigenvalue / m", "count")
                .with(Series::bars("prolate", histogram(&concentration, 40)?)),
        )
        .panel(
            ChartPanel::new("sinc-frame section: eigenvalue decay")
                .labels("index (descending)", "eigenvalue / m")
                .log_y()
                .with(Series::line("prolate", decay)),
        )
        .panel(
            ChartPanel::new("gap-set Toeplitz spectrum")
                .labels("eigenvalue", "count")
                .with(Series::bars("toeplitz", histogram(&gap_eigs, 40)?)),
        )
        .panel(
            ChartPanel::new("Toeplitz symbol vs block indicator")
                .labels("x", "f(x)")
                .with(Series::line("symbol", symbol))
                .with(Series::line("indicator", indicator).with_color("#9a9a9a")),
        );
    save_figure(out.join("gap1d.svg"), &fig)?;

    println!(
        "prolate n={n} m={m}: cluster fractions at 0/1 (radius 0.1): {:.3}/{:.3}",
        fractions[0], fractions[1]
    );
    println!(
        "gap-set M={n} m={m} L={gap_factor}: cluster fractions at 0/1: {:.3}/{:.3}",
        gap_fractions[0], gap_fractions[1]
    );
    Ok(())
}

/// Smooth 2-D field analog: exponentially decaying spectrum of degree 4 on
/// the square torus of period 9. Each square ring of coefficients is
/// rescaled to the envelope's expected energy, so the ring-energy profile
/// (hence the level at which the residual drops below the discrepancy
/// threshold) is the same for every seed; within a ring the draw stays
/// random.
pub fn geo_truth(seed: u64) -> Result<Signal2D> {
    let period = (2 * GEO_DEGREE + 1) as f64;
    let base =
        generate_bandlimited_2d(GEO_DEGREE, period, seed, SpectrumDecay::Exponential(GEO_DECAY))?;
    let m = GEO_DEGREE as i64;
    let side = 2 * GEO_DEGREE + 1;
    let mut coeffs = base.coeffs().to_vec();
    let mut actual = [0.0f64; GEO_DEGREE + 1];
    let mut target = [0.0f64; GEO_DEGREE + 1];
    for k in -m..=m {
        for l in -m..=m {
            let ring = k.unsigned_abs().max(l.unsigned_abs()) as usize;
            let idx = ((k + m) as usize) * side + (l + m) as usize;
            actual[ring] += coeffs[idx].norm_sqr();
            target[ring] +=
                (-2.0 * GEO_DECAY * (k.unsigned_abs() + l.unsigned_abs()) as f64).exp();
        }
    }
    for k in -m..=m {
        for l in -m..=m {
            let ring = k.unsigned_abs().max(l.unsigned_abs()) as usize;
            let idx = ((k + m) as usize) * side + (l + m) as usize;
            if actual[ring] > 0.0 {
                coeffs[idx] *= (target[ring] / actual[ring]).sqrt();
            }
        }
    }
    Signal2D::new(GEO_DEGREE, period, coeffs)
}

/// Truth, scattered observation points, and noisy observations for one
/// gridding instance.
pub fn geo_instance(seed: u64) -> Result<(Signal2D, SamplingSet2D, SampleVector)> {
    let truth = geo_truth(seed)?;
    let set = SamplingSet2D::random_uniform(GEO_SAMPLES, truth.period() / 2.0, seed ^ SET_SEED)?;
    let clean = sample_signal_2d(&truth, &set);
    let noisy = add_noise(&clean, GEO_DELTA, seed ^ NOISE_SEED)?;
    Ok((truth, set, noisy))
}

pub struct GeoBundle {
    pub truth: Signal2D,
    pub reconstruction: Signal2D,
    pub chosen_level: usize,
    pub outer_satisfied: bool,
    pub relative_error: f64,
}

/// Run the 2-D gridding demo and write truth.json, samples2d.csv, grids,
/// trace.csv, report.json, and geo2d.svg into `out`.
pub fn run_geo2d(seed: u64, out: &Path) -> Result<GeoBundle> {
    fs::create_dir_all(out)?;
    let (truth, set, noisy) = geo_instance(seed)?;
    let opts = MultilevelOptions { max_level: GEO_MAX_LEVEL, ..MultilevelOptions::default() };
    let (rec, trace, mut report) = multilevel_reconstruct_2d(&set, &noisy, GEO_DELTA, &opts)?;

    let n = 64;
    let period = truth.period();
    let truth_grid = truth.eval_grid(n);
    let rec_grid = rec.eval_grid(n);
    let rel = relative_error(&truth_grid, &rec_grid)?;
    report.relative_error = Some(rel);

    io::write_signal_2d(out.join("truth.json"), &truth)?;
    io::write_samples_2d(out.join("samples2d.csv"), &set, &noisy)?;
    io::write_grid_2d(out.join("truth_grid.csv"), period, &truth_grid)?;
    io::write_grid_2d(out.join("reconstruction_grid.csv"), period, &rec_grid)?;
    io::write_level_trace(out.join("trace.csv"), &trace.records)?;
    io::write_report(out.join("report.json"), &report)?;

    let field = |vals: &[Complex64]| -> Vec<f64> { vals.iter().map(|v| v.re).collect() };
    let err_field: Vec<f64> =
        truth_grid.iter().zip(&rec_grid).map(|(a, b)| (a - b).norm()).collect();
    let range = (-period / 2.0, period / 2.0);
    let dots: Vec<(f64, f64)> = set.points().iter().map(|&(u, v)| (v, u)).collect();
    let residuals: Vec<(f64, f64)> = trace
        .records
        .iter()
        .map(|r| (r.level as f64, r.data_residual.max(1e-18)))
        .collect();
    // Heatmap rows run along the first coordinate u, so u is the vertical
    // axis and v the horizontal one; the dot overlay above is swapped to
    // match.
    let fig = Figure::new("gridding scattered 2-D observations", 2)
        .panel(
            HeatmapPanel::new("truth with observation points", field(&truth_grid), n, n, range, range)?
                .labels("v", "u")
                .with_dots(dots),
        )
        .panel(
            HeatmapPanel::new(
                &format!("reconstruction (level {})", trace.chosen_level),
                field(&rec_grid),
                n,
                n,
                range,
                range,
            )?
            .labels("v", "u"),
        )
        .panel(
            HeatmapPanel::new("pointwise error |truth - reconstruction|", err_field, n, n, range, range)?
                .labels("v", "u"),
        )
        .panel(
            ChartPanel::new("accepted residual by level")
                .labels("level", "residual")
                .log_y()
                .with(Series::line("residual", residuals)),
        );
    save_figure(out.join("geo2d.svg"), &fig)?;

    println!(
        "terminated at level {} (outer rule satisfied: {}), relative_error {rel:.4} [reference 0.0517, not a target]",
        trace.chosen_level, trace.outer_satisfied
    );
    Ok(GeoBundle {
        truth,
        reconstruction: rec,
        chosen_level: trace.chosen_level,
        outer_satisfied: trace.outer_satisfied,
        relative_error: rel,
    })
}

/// Demo dispatcher for the CLI.
pub fn cmd_demo(name: &str, seed: Option<u64>, out: &Path) -> Result<()> {
    let seed = seed.unwrap_or(1);
    match name {
        "spectroscopy" => run_spectroscopy(seed, out).map(|_| ()),
        "gap1d" => run_gap1d(out),
        "geo2d" => run_geo2d(seed, out).map(|_| ()),
        other => Err(Error::InvalidParameter(format!(
            "unknown demo {other:?}; expected spectroscopy, gap1d, or geo2d"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tmp_dir(name: &str) -> std::path::PathBuf {
        let dir = std::env::temp_dir().join("bandlimited-demo-tests").join(name);
        let _ = fs::remove_dir_all(&dir);
        fs::create_dir_all(&dir).unwrap();
        dir
    }

    #[test]
    fn spectroscopy_truth_has_the_designed_band_structure() {
        let p = spectroscopy_truth(3).unwrap();
        assert_eq!(p.degree(), 30);
        assert_eq!(p.period(), 61.0);
        let edge = SPECTRO_EDGE as i64;
        let line = p.coeff(-edge).norm_sqr() + p.coeff(edge).norm_sqr();
        let share = line / p.norm_sq();
        assert!((share - LINE_FRACTION).abs() < 1e-12, "line share {share}");
        // The two lines have equal amplitude by construction.
        assert!((p.coeff(-edge).norm() - p.coeff(edge).norm()).abs() < 1e-12);
        // Nothing above the effective edge.
        for k in (edge + 1)..=30 {
            assert_eq!(p.coeff(k), Complex64::ZERO);
            assert_eq!(p.coeff(-k), Complex64::ZERO);
        }
    }

    #[test]
    fn geo_truth_ring_energies_are_seed_independent() {
        let shares = |s: &Signal2D| -> Vec<f64> {
            let m = GEO_DEGREE as i64;
            let side = 2 * GEO_DEGREE + 1;
            let mut rings = [0.0f64; GEO_DEGREE + 1];
            for k in -m..=m {
                for l in -m..=m {
                    let ring = k.unsigned_abs().max(l.unsigned_abs()) as usize;
                    rings[ring] += s.coeffs()[((k + m) as usize) * side + (l + m) as usize]
                        .norm_sqr();
                }
            }
            let total: f64 = rings.iter().sum();
            rings.iter().map(|e| e / total).collect()
        };
        let a = shares(&geo_truth(1).unwrap());
        let b = shares(&geo_truth(77).unwrap());
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-12, "ring share differs across seeds: {x} vs {y}");
        }
        // The profile that makes the stopping level deterministic: energy
        // beyond ring 1 well above the discrepancy threshold, beyond ring 2
        // well below it.
        let beyond1: f64 = a[2..].iter().sum();
        let beyond2: f64 = a[3..].iter().sum();
        assert!(beyond1 > 0.15 && beyond1 < 0.25, "beyond-1 share {beyond1}");
        assert!(beyond2 < 0.06, "beyond-2 share {beyond2}");
    }

    #[test]
    fn spectroscopy_bundle_has_six_labeled_results() {
        let out = tmp_dir("spectro");
        let bundle = run_spectroscopy(1, &out).unwrap();
        let labels: Vec<&str> = bundle.runs.iter().map(|r| r.label.as_str()).collect();
        assert_eq!(
            labels,
            ["frame-tsvd", "frame-cg", "act-m30", "act-m11", "act-m40", "multilevel"]
        );
        for run in &bundle.runs {
            assert_eq!(run.grid.len(), SPECTRO_GRID);
            assert!(run.relative_error.is_finite());
        }
        for name in ["signal.json", "samples.csv", "table.csv", "trace.csv", "spectroscopy.svg"] {
            assert!(out.join(name).exists(), "{name} missing");
        }
    }

    #[test]
    fn spectroscopy_rerun_is_bit_identical() {
        let a = tmp_dir("spectro-a");
        let b = tmp_dir("spectro-b");
        run_spectroscopy(9, &a).unwrap();
        run_spectroscopy(9, &b).unwrap();
        for name in ["signal.json", "samples.csv", "table.csv", "trace.csv", "spectroscopy.svg"] {
            assert_eq!(
                fs::read(a.join(name)).unwrap(),
                fs::read(b.join(name)).unwrap(),
                "{name} differs between reruns"
            );
        }
    }

    #[test]
    fn gap1d_emits_both_eigenvalue_lists() {
        let out = tmp_dir("gap1d");
        run_gap1d(&out).unwrap();
        let prolate = io::read_eigenvalues(out.join("prolate_eigenvalues.csv")).unwrap();
        let gap = io::read_eigenvalues(out.join("gap_eigenvalues.csv")).unwrap();
        assert_eq!(prolate.len(), 129);
        assert_eq!(gap.len(), 129);
        assert!(out.join("gap1d.svg").exists());
    }

    #[test]
    fn geo2d_reports_terminating_level_and_error() {
        let out = tmp_dir("geo2d");
        let bundle = run_geo2d(1, &out).unwrap();
        assert!(bundle.chosen_level <= GEO_MAX_LEVEL);
        assert!(bundle.relative_error.is_finite());
        for name in [
            "truth.json",
            "samples2d.csv",
            "truth_grid.csv",
            "reconstruction_grid.csv",
            "trace.csv",
            "report.json",
            "geo2d.svg",
        ] {
            assert!(out.join(name).exists(), "{name} missing");
        }
        let report = io::read_report(out.join("report.json")).unwrap();
        assert_eq!(report.chosen_level, Some(bundle.chosen_level));
    }

    #[test]
    fn unknown_demo_name_is_rejected() {
        assert!(cmd_demo("nonsense", None, &tmp_dir("x")).is_err());
    }

}
