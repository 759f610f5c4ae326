use std::fmt::Write as _;
use std::path::Path;

use crate::error::Result;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 40.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"];

#[derive(Debug, Clone, Copy)]
pub struct PlotSeries<'a> {
    pub label: &'a str,
    pub values: &'a [f64],
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Static SVG line plot, one polyline per series on shared axes.
/// Series may differ in length; x is the sample index.
pub fn render_plot_svg(series: &[PlotSeries<'_>]) -> String {
    let finite = series.iter().flat_map(|s| s.values.iter().copied()).filter(|v| v.is_finite());
    let (mut lo, mut hi) = finite.fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), v| {
        (l.min(v), h.max(v))
    });
    if lo > hi {
        lo = -1.0;
        hi = 1.0;
    } else if lo == hi {
        lo -= 1.0;
        hi += 1.0;
    }
    let max_len = series.iter().map(|s| s.values.len()).max().unwrap_or(0);
    let x_span = (max_len.max(2) - 1) as f64;
    let plot_w = WIDTH - 2.0 * MARGIN;
    let plot_h = HEIGHT - 2.0 * MARGIN;

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<rect x="{MARGIN}" y="{MARGIN}" width="{plot_w}" height="{plot_h}" fill="none" stroke="grey" stroke-width="1"/>"#
    );
    let _ = writeln!(
        out,
        r#"<text x="{MARGIN}" y="{:.1}" font-size="11" font-family="sans-serif">{}</text>"#,
        MARGIN - 6.0,
        format_args!("{hi:.6e}")
    );
    let _ = writeln!(
        out,
        r#"<text x="{MARGIN}" y="{:.1}" font-size="11" font-family="sans-serif">{}</text>"#,
        HEIGHT - MARGIN + 14.0,
        format_args!("{lo:.6e}")
    );
    for (k, s) in series.iter().enumerate() {
        let colour = PALETTE[k % PALETTE.len()];
        let mut points = String::new();
        for (i, v) in s.values.iter().enumerate() {
            if !v.is_finite() {
                continue;
            }
            let x = MARGIN + plot_w * i as f64 / x_span;
            let y = MARGIN + plot_h * (hi - v) / (hi - lo);
            if !points.is_empty() {
                points.push(' ');
            }
            let _ = write!(points, "{x:.3},{y:.3}");
        }
        let _ = writeln!(
            out,
            r#"<polyline id="series-{k}" class="series-{k}" fill="none" stroke="{colour}" stroke-width="1.2" points="{points}"><title>{}</title></polyline>"#,
            escape(s.label)
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" font-size="11" font-family="sans-serif" fill="{colour}">{}</text>"#,
            WIDTH - MARGIN - 150.0,
            MARGIN + 14.0 * (k as f64 + 1.0),
            escape(s.label)
        );
    }
    out.push_str("</svg>\n");
    out
}

pub fn write_plot_svg(series: &[PlotSeries<'_>], path: &Path) -> Result<()> {
    std::fs::write(path, render_plot_svg(series))?;
    Ok(())
}
