//! Deterministic SVG figures without a plotting toolkit: line charts with
//! scatter overlays, histograms, and heatmaps with colorbars, composed into
//! multi-panel grids.
//!
//! Output bytes are a pure function of the input data: no timestamps, no
//! randomized ids, fixed palette and layout constants, and every coordinate
//! printed with a fixed two-decimal format. Rendering twice from the same
//! data yields identical files, which the CLI round-trip tests rely on.

use crate::error::{Error, Result};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

const PANEL_W: f64 = 460.0;
const PANEL_H: f64 = 320.0;
const MARGIN_L: f64 = 64.0;
const MARGIN_R: f64 = 18.0;
const MARGIN_T: f64 = 34.0;
const MARGIN_B: f64 = 46.0;
const GAP: f64 = 14.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

/// How a data series is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    Line,
    Dots,
    Bars,
}

/// One labeled data series inside a chart panel.
#[derive(Debug, Clone)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
    pub kind: SeriesKind,
    /// Empty string means "assign from the palette by position".
    pub color: String,
}

impl Series {
    pub fn line(label: &str, points: Vec<(f64, f64)>) -> Self {
        Self { label: label.into(), points, kind: SeriesKind::Line, color: String::new() }
    }

    pub fn dots(label: &str, points: Vec<(f64, f64)>) -> Self {
        Self { label: label.into(), points, kind: SeriesKind::Dots, color: String::new() }
    }

    pub fn bars(label: &str, points: Vec<(f64, f64)>) -> Self {
        Self { label: label.into(), points, kind: SeriesKind::Bars, color: String::new() }
    }

    pub fn with_color(mut self, color: &str) -> Self {
        self.color = color.into();
        self
    }
}

/// Cartesian panel: series drawn over shared linear (or log-y) axes.
#[derive(Debug, Clone, Default)]
pub struct ChartPanel {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
    /// Log10 y-axis; every y value must be positive.
    pub log_y: bool,
}

impl ChartPanel {
    pub fn new(title: &str) -> Self {
        Self { title: title.into(), ..Self::default() }
    }

    pub fn labels(mut self, x: &str, y: &str) -> Self {
        self.x_label = x.into();
        self.y_label = y.into();
        self
    }

    pub fn with(mut self, s: Series) -> Self {
        self.series.push(s);
        self
    }

    pub fn log_y(mut self) -> Self {
        self.log_y = true;
        self
    }
}

/// Row-major scalar field over a rectangle, drawn as colored cells plus a
/// colorbar; optional scatter overlay in data coordinates.
#[derive(Debug, Clone)]
pub struct HeatmapPanel {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub values: Vec<f64>,
    pub rows: usize,
    pub cols: usize,
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub overlay_dots: Vec<(f64, f64)>,
}

impl HeatmapPanel {
    pub fn new(
        title: &str,
        values: Vec<f64>,
        rows: usize,
        cols: usize,
        x_range: (f64, f64),
        y_range: (f64, f64),
    ) -> Result<Self> {
        if rows == 0 || cols == 0 || values.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "heatmap needs rows*cols = {} values, got {}",
                rows * cols,
                values.len()
            )));
        }
        if !(x_range.0 < x_range.1) || !(y_range.0 < y_range.1) {
            return Err(Error::InvalidParameter("heatmap ranges must be increasing".into()));
        }
        Ok(Self {
            title: title.into(),
            x_label: String::new(),
            y_label: String::new(),
            values,
            rows,
            cols,
            x_range,
            y_range,
            overlay_dots: vec![],
        })
    }

    pub fn labels(mut self, x: &str, y: &str) -> Self {
        self.x_label = x.into();
        self.y_label = y.into();
        self
    }

    pub fn with_dots(mut self, dots: Vec<(f64, f64)>) -> Self {
        self.overlay_dots = dots;
        self
    }
}

#[derive(Debug, Clone)]
pub enum Panel {
    Chart(ChartPanel),
    Heatmap(HeatmapPanel),
}

impl From<ChartPanel> for Panel {
    fn from(p: ChartPanel) -> Self {
        Panel::Chart(p)
    }
}

impl From<HeatmapPanel> for Panel {
    fn from(p: HeatmapPanel) -> Self {
        Panel::Heatmap(p)
    }
}

/// A figure is a row-major grid of panels under one title.
#[derive(Debug, Clone)]
pub struct Figure {
    pub title: String,
    pub columns: usize,
    pub panels: Vec<Panel>,
}

impl Figure {
    pub fn new(title: &str, columns: usize) -> Self {
        Self { title: title.into(), columns: columns.max(1), panels: vec![] }
    }

    pub fn panel(mut self, p: impl Into<Panel>) -> Self {
        self.panels.push(p.into());
        self
    }
}

/// Fixed-width histogram: (bin center, count) pairs over `bins` equal bins
/// spanning [min, max]; the top edge is inclusive.
pub fn histogram(values: &[f64], bins: usize) -> Result<Vec<(f64, f64)>> {
    if values.is_empty() || bins == 0 {
        return Err(Error::InvalidParameter("histogram needs data and at least one bin".into()));
    }
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let width = if max > min { (max - min) / bins as f64 } else { 1.0 };
    let mut counts = vec![0usize; bins];
    for &v in values {
        let idx = (((v - min) / width) as usize).min(bins - 1);
        counts[idx] += 1;
    }
    Ok(counts
        .iter()
        .enumerate()
        .map(|(i, &c)| (min + (i as f64 + 0.5) * width, c as f64))
        .collect())
}

// Two-decimal pixel coordinates keep files small and byte-stable.
fn px(v: f64) -> String {
    format!("{v:.2}")
}

// Tick labels: plain decimals in a humane range, exponent form outside it.
fn fmt_tick(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let a = v.abs();
    if !(1e-3..1e5).contains(&a) {
        return format!("{v:.1e}");
    }
    let s = format!("{v:.4}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    s.to_string()
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

// Five-anchor viridis-like colormap, linear in RGB between anchors.
fn colormap(t: f64) -> String {
    const ANCHORS: [(f64, f64, f64); 5] = [
        (0.267, 0.005, 0.329),
        (0.229, 0.322, 0.546),
        (0.128, 0.567, 0.551),
        (0.369, 0.789, 0.383),
        (0.993, 0.906, 0.144),
    ];
    let t = t.clamp(0.0, 1.0) * (ANCHORS.len() - 1) as f64;
    let i = (t as usize).min(ANCHORS.len() - 2);
    let f = t - i as f64;
    let (r0, g0, b0) = ANCHORS[i];
    let (r1, g1, b1) = ANCHORS[i + 1];
    let ch = |a: f64, b: f64| ((a + f * (b - a)) * 255.0).round() as u8;
    format!("#{:02x}{:02x}{:02x}", ch(r0, r1), ch(g0, g1), ch(b0, b1))
}

struct Frame {
    x0: f64,
    y0: f64,
    w: f64,
    h: f64,
    xmin: f64,
    xmax: f64,
    ymin: f64,
    ymax: f64,
}

impl Frame {
    fn sx(&self, x: f64) -> f64 {
        self.x0 + (x - self.xmin) / (self.xmax - self.xmin) * self.w
    }

    fn sy(&self, y: f64) -> f64 {
        // SVG y grows downward.
        self.y0 + self.h - (y - self.ymin) / (self.ymax - self.ymin) * self.h
    }
}

fn pad_bounds(min: f64, max: f64) -> (f64, f64) {
    if min < max {
        let pad = 0.04 * (max - min);
        (min - pad, max + pad)
    } else {
        (min - 1.0, max + 1.0)
    }
}

fn draw_frame_and_ticks(out: &mut String, f: &Frame, title: &str, x_label: &str, y_label: &str, log_y: bool) {
    let _ = write!(
        out,
        "<rect x='{}' y='{}' width='{}' height='{}' fill='none' stroke='#444' stroke-width='1'/>\n",
        px(f.x0),
        px(f.y0),
        px(f.w),
        px(f.h)
    );
    let _ = write!(
        out,
        "<text x='{}' y='{}' text-anchor='middle' font-size='13' font-weight='bold'>{}</text>\n",
        px(f.x0 + f.w / 2.0),
        px(f.y0 - 10.0),
        xml_escape(title)
    );
    let ticks = 5usize;
    for i in 0..=ticks {
        let fr = i as f64 / ticks as f64;
        let xv = f.xmin + fr * (f.xmax - f.xmin);
        let x = f.sx(xv);
        let _ = write!(
            out,
            "<line x1='{}' y1='{}' x2='{}' y2='{}' stroke='#444' stroke-width='1'/>\n",
            px(x),
            px(f.y0 + f.h),
            px(x),
            px(f.y0 + f.h + 4.0)
        );
        let _ = write!(
            out,
            "<text x='{}' y='{}' text-anchor='middle' font-size='10'>{}</text>\n",
            px(x),
            px(f.y0 + f.h + 16.0),
            fmt_tick(xv)
        );
        let yv = f.ymin + fr * (f.ymax - f.ymin);
        let y = f.sy(yv);
        let _ = write!(
            out,
            "<line x1='{}' y1='{}' x2='{}' y2='{}' stroke='#444' stroke-width='1'/>\n",
            px(f.x0 - 4.0),
            px(y),
            px(f.x0),
            px(y)
        );
        let label = if log_y { format!("1e{}", fmt_tick(yv)) } else { fmt_tick(yv) };
        let _ = write!(
            out,
            "<text x='{}' y='{}' text-anchor='end' font-size='10'>{}</text>\n",
            px(f.x0 - 7.0),
            px(y + 3.5),
            label
        );
    }
    if !x_label.is_empty() {
        let _ = write!(
            out,
            "<text x='{}' y='{}' text-anchor='middle' font-size='11'>{}</text>\n",
            px(f.x0 + f.w / 2.0),
            px(f.y0 + f.h + 34.0),
            xml_escape(x_label)
        );
    }
    if !y_label.is_empty() {
        let _ = write!(
            out,
            "<text x='{}' y='{}' text-anchor='middle' font-size='11' transform='rotate(-90 {} {})'>{}</text>\n",
            px(f.x0 - 48.0),
            px(f.y0 + f.h / 2.0),
            px(f.x0 - 48.0),
            px(f.y0 + f.h / 2.0),
            xml_escape(y_label)
        );
    }
}

fn render_chart(out: &mut String, p: &ChartPanel, ox: f64, oy: f64) -> Result<()> {
    let mut pts: Vec<(f64, f64)> = Vec::new();
    for s in &p.series {
        for &(x, y) in &s.points {
            if !(x.is_finite() && y.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "non-finite point in series {:?}",
                    s.label
                )));
            }
            if p.log_y && !(y > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "log-scale panel {:?} requires positive y values, got {y}",
                    p.title
                )));
            }
            pts.push((x, if p.log_y { y.log10() } else { y }));
        }
    }
    if pts.is_empty() {
        return Err(Error::InvalidParameter(format!("panel {:?} has no data", p.title)));
    }
    let (xmin, xmax) =
        pad_bounds(pts.iter().map(|p| p.0).fold(f64::INFINITY, f64::min), pts.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max));
    let (ymin, ymax) =
        pad_bounds(pts.iter().map(|p| p.1).fold(f64::INFINITY, f64::min), pts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max));
    let frame = Frame {
        x0: ox + MARGIN_L,
        y0: oy + MARGIN_T,
        w: PANEL_W - MARGIN_L - MARGIN_R,
        h: PANEL_H - MARGIN_T - MARGIN_B,
        xmin,
        xmax,
        ymin,
        ymax,
    };
    draw_frame_and_ticks(out, &frame, &p.title, &p.x_label, &p.y_label, p.log_y);

    for (si, s) in p.series.iter().enumerate() {
        let color = if s.color.is_empty() { PALETTE[si % PALETTE.len()] } else { &s.color };
        let ys = |y: f64| if p.log_y { y.log10() } else { y };
        match s.kind {
            SeriesKind::Line => {
                let mut path = String::new();
                for &(x, y) in &s.points {
                    let _ = write!(path, "{},{} ", px(frame.sx(x)), px(frame.sy(ys(y))));
                }
                let _ = write!(
                    out,
                    "<polyline points='{}' fill='none' stroke='{}' stroke-width='1.5'/>\n",
                    path.trim_end(),
                    color
                );
            }
            SeriesKind::Dots => {
                for &(x, y) in &s.points {
                    let _ = write!(
                        out,
                        "<circle cx='{}' cy='{}' r='2.4' fill='{}' fill-opacity='0.85'/>\n",
                        px(frame.sx(x)),
                        px(frame.sy(ys(y))),
                        color
                    );
                }
            }
            SeriesKind::Bars => {
                // Bar width from the minimal center spacing.
                let mut spacing = f64::INFINITY;
                for w in s.points.windows(2) {
                    spacing = spacing.min((w[1].0 - w[0].0).abs());
                }
                if !spacing.is_finite() {
                    spacing = (frame.xmax - frame.xmin) / 2.0;
                }
                let half = 0.45 * spacing;
                let base = frame.sy(ys(if p.log_y { 1e-300 } else { 0.0 }).max(frame.ymin));
                let base = base.min(frame.y0 + frame.h);
                for &(x, y) in &s.points {
                    let top = frame.sy(ys(y));
                    let _ = write!(
                        out,
                        "<rect x='{}' y='{}' width='{}' height='{}' fill='{}' fill-opacity='0.8'/>\n",
                        px(frame.sx(x - half)),
                        px(top.min(base)),
                        px(frame.sx(x + half) - frame.sx(x - half)),
                        px((base - top).abs()),
                        color
                    );
                }
            }
        }
        // Legend entry.
        let ly = frame.y0 + 14.0 + 14.0 * si as f64;
        let _ = write!(
            out,
            "<rect x='{}' y='{}' width='10' height='10' fill='{}'/>\n",
            px(frame.x0 + frame.w - 120.0),
            px(ly - 9.0),
            color
        );
        let _ = write!(
            out,
            "<text x='{}' y='{}' font-size='10'>{}</text>\n",
            px(frame.x0 + frame.w - 106.0),
            px(ly),
            xml_escape(&s.label)
        );
    }
    Ok(())
}

fn render_heatmap(out: &mut String, p: &HeatmapPanel, ox: f64, oy: f64) {
    let vmin = p.values.iter().cloned().fold(f64::INFINITY, f64::min);
    let vmax = p.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let span = if vmax > vmin { vmax - vmin } else { 1.0 };
    let bar_w = 14.0;
    let frame = Frame {
        x0: ox + MARGIN_L,
        y0: oy + MARGIN_T,
        w: PANEL_W - MARGIN_L - MARGIN_R - bar_w - 34.0,
        h: PANEL_H - MARGIN_T - MARGIN_B,
        xmin: p.x_range.0,
        xmax: p.x_range.1,
        ymin: p.y_range.0,
        ymax: p.y_range.1,
    };
    let cw = frame.w / p.cols as f64;
    let chh = frame.h / p.rows as f64;
    for r in 0..p.rows {
        for c in 0..p.cols {
            let t = (p.values[r * p.cols + c] - vmin) / span;
            // Row 0 is the bottom of the y-range.
            let _ = write!(
                out,
                "<rect x='{}' y='{}' width='{}' height='{}' fill='{}'/>\n",
                px(frame.x0 + c as f64 * cw),
                px(frame.y0 + frame.h - (r + 1) as f64 * chh),
                px(cw + 0.5),
                px(chh + 0.5),
                colormap(t)
            );
        }
    }
    for &(x, y) in &p.overlay_dots {
        let _ = write!(
            out,
            "<circle cx='{}' cy='{}' r='1.6' fill='#ffffff' stroke='#000000' stroke-width='0.4'/>\n",
            px(frame.sx(x)),
            px(frame.sy(y))
        );
    }
    draw_frame_and_ticks(out, &frame, &p.title, &p.x_label, &p.y_label, false);
    // Colorbar.
    let bx = frame.x0 + frame.w + 10.0;
    let steps = 48;
    for i in 0..steps {
        let t = (i as f64 + 0.5) / steps as f64;
        let y = frame.y0 + frame.h * (1.0 - (i + 1) as f64 / steps as f64);
        let _ = write!(
            out,
            "<rect x='{}' y='{}' width='{}' height='{}' fill='{}'/>\n",
            px(bx),
            px(y),
            px(bar_w),
            px(frame.h / steps as f64 + 0.5),
            colormap(t)
        );
    }
    let _ = write!(
        out,
        "<text x='{}' y='{}' font-size='9'>{}</text>\n",
        px(bx + bar_w + 3.0),
        px(frame.y0 + 8.0),
        fmt_tick(vmax)
    );
    let _ = write!(
        out,
        "<text x='{}' y='{}' font-size='9'>{}</text>\n",
        px(bx + bar_w + 3.0),
        px(frame.y0 + frame.h),
        fmt_tick(vmin)
    );
}

/// Render a figure to SVG text.
pub fn render_figure(fig: &Figure) -> Result<String> {
    if fig.panels.is_empty() {
        return Err(Error::InvalidParameter("figure has no panels".into()));
    }
    let cols = fig.columns.min(fig.panels.len());
    let rows = fig.panels.len().div_ceil(cols);
    let title_h = if fig.title.is_empty() { 0.0 } else { 28.0 };
    let w = cols as f64 * (PANEL_W + GAP) + GAP;
    let h = rows as f64 * (PANEL_H + GAP) + GAP + title_h;
    let mut out = String::new();
    let _ = write!(
        out,
        "<svg xmlns='http://www.w3.org/2000/svg' width='{}' height='{}' viewBox='0 0 {} {}' font-family='Menlo, monospace'>\n",
        px(w),
        px(h),
        px(w),
        px(h)
    );
    out.push_str("<rect width='100%' height='100%' fill='#ffffff'/>\n");
    if !fig.title.is_empty() {
        let _ = write!(
            out,
            "<text x='{}' y='20' text-anchor='middle' font-size='15' font-weight='bold'>{}</text>\n",
            px(w / 2.0),
            xml_escape(&fig.title)
        );
    }
    for (i, panel) in fig.panels.iter().enumerate() {
        let ox = GAP + (i % cols) as f64 * (PANEL_W + GAP);
        let oy = title_h + GAP + (i / cols) as f64 * (PANEL_H + GAP);
        match panel {
            Panel::Chart(p) => render_chart(&mut out, p, ox, oy)?,
            Panel::Heatmap(p) => render_heatmap(&mut out, p, ox, oy),
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

pub fn save_figure<P: AsRef<Path>>(path: P, fig: &Figure) -> Result<()> {
    fs::write(path, render_figure(fig)?)?;
    Ok(())
}
