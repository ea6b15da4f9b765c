//! Mean time against `log_256(N)`, one series per algorithm, as SVG.
//!
//! Every data point is emitted as a `<circle>` carrying its exact plot
//! coordinates in `data-x` / `data-y`, so the file can be checked without
//! reverse-mapping pixels.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};

use crate::algo::Algo;
use crate::bench::BenchRow;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN_LEFT: f64 = 80.0;
const MARGIN_RIGHT: f64 = 150.0;
const MARGIN_TOP: f64 = 30.0;
const MARGIN_BOTTOM: f64 = 60.0;
const COLORS: [&str; 5] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd"];

/// The x-axis transform.
pub fn log256(n: usize) -> f64 {
    (n as f64).ln() / 256f64.ln()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub algo: Algo,
    /// (log_256 N, mean seconds), ascending in x.
    pub points: Vec<(f64, f64)>,
}

/// Groups rows into one series per algorithm, averaging trials per size.
pub fn plot_series(rows: &[BenchRow]) -> Result<Vec<Series>> {
    let mut algos: Vec<Algo> = rows.iter().map(|r| r.algo).collect();
    algos.sort();
    algos.dedup();
    let mut series = Vec::new();
    for algo in algos {
        let mut sizes: Vec<usize> = rows.iter().filter(|r| r.algo == algo).map(|r| r.n).collect();
        sizes.sort_unstable();
        sizes.dedup();
        if sizes.len() < 2 {
            bail!("{algo} needs at least two input sizes to plot, found {}", sizes.len());
        }
        let points = sizes
            .into_iter()
            .map(|n| {
                let times: Vec<f64> = rows
                    .iter()
                    .filter(|r| r.algo == algo && r.n == n)
                    .map(|r| r.elapsed_ns as f64 * 1e-9)
                    .collect();
                (log256(n), times.iter().sum::<f64>() / times.len() as f64)
            })
            .collect();
        series.push(Series { algo, points });
    }
    if series.is_empty() {
        bail!("no rows to plot");
    }
    Ok(series)
}

pub fn render_svg(series: &[Series]) -> String {
    let xs = series.iter().flat_map(|s| s.points.iter().map(|p| p.0));
    let (x_min, x_max) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)));
    let y_max = series
        .iter()
        .flat_map(|s| s.points.iter().map(|p| p.1))
        .fold(0.0f64, f64::max)
        .max(1e-9)
        * 1.1;
    let x_span = (x_max - x_min).max(1e-9);
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let px = |x: f64| MARGIN_LEFT + (x - x_min) / x_span * plot_w;
    let py = |y: f64| MARGIN_TOP + plot_h - y / y_max * plot_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);

    // axes
    let (x0, y0) = (MARGIN_LEFT, MARGIN_TOP + plot_h);
    let _ = writeln!(
        svg,
        r#"<path d="M{x0} {MARGIN_TOP} V{y0} H{}" fill="none" stroke="black"/>"#,
        MARGIN_LEFT + plot_w
    );
    for i in 0..=4 {
        let x = x_min + x_span * i as f64 / 4.0;
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{x:.2}</text>"#,
            px(x),
            y0 + 18.0
        );
        let y = y_max * i as f64 / 4.0;
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{y:.3e}</text>"#,
            x0 - 6.0,
            py(y) + 4.0
        );
    }
    let _ = writeln!(
        svg,
        r#"<text class="x-label" x="{:.2}" y="{:.2}" text-anchor="middle">log_256(N)</text>"#,
        MARGIN_LEFT + plot_w / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        svg,
        r#"<text class="y-label" x="20" y="{:.2}" text-anchor="middle" transform="rotate(-90 20 {:.2})">time (s)</text>"#,
        MARGIN_TOP + plot_h / 2.0,
        MARGIN_TOP + plot_h / 2.0
    );

    for (i, s) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let pts: Vec<String> = s
            .points
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline class="series" data-algo="{}" points="{}" fill="none" stroke="{color}" stroke-width="2"/>"#,
            s.algo,
            pts.join(" ")
        );
        for &(x, y) in &s.points {
            let _ = writeln!(
                svg,
                r#"<circle data-algo="{}" data-x="{x:?}" data-y="{y:?}" cx="{:.2}" cy="{:.2}" r="3" fill="{color}"/>"#,
                s.algo,
                px(x),
                py(y)
            );
        }
        let ly = MARGIN_TOP + 10.0 + 20.0 * i as f64;
        let lx = WIDTH - MARGIN_RIGHT + 20.0;
        let _ = writeln!(
            svg,
            r#"<g class="legend"><line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/><text x="{}" y="{}">{}</text></g>"#,
            lx + 25.0,
            lx + 32.0,
            ly + 4.0,
            s.algo
        );
    }
    svg.push_str("</svg>\n");
    svg
}

pub fn emit_plot(rows: &[BenchRow], path: &Path) -> Result<()> {
    let svg = render_svg(&plot_series(rows)?);
    std::fs::write(path, svg).with_context(|| format!("cannot write {}", path.display()))
}

/// Reads back `(algo, x, y)` for every data point of a rendered plot.
pub fn parse_points(svg: &str) -> Vec<(String, f64, f64)> {
    fn attr<'a>(tag: &'a str, name: &str) -> Option<&'a str> {
        let start = tag.find(&format!(r#"{name}=""#))? + name.len() + 2;
        let len = tag[start..].find('"')?;
        Some(&tag[start..start + len])
    }
    svg.lines()
        .filter(|l| l.starts_with("<circle"))
        .filter_map(|l| {
            Some((
                attr(l, "data-algo")?.to_owned(),
                attr(l, "data-x")?.parse().ok()?,
                attr(l, "data-y")?.parse().ok()?,
            ))
        })
        .collect()
}
