//! Trajectory CSV, JSON manifest and SVG charts.
//!
//! Floats are written in their shortest round-trip form, so reading a CSV
//! and writing it again reproduces the file byte for byte.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scenario::{CriteriaReport, Trajectory};

pub const CSV_HEADER: [&str; 20] = [
    "T",
    "Y",
    "K1",
    "K2",
    "K",
    "L",
    "r",
    "w",
    "G_cap",
    "t",
    "G_ms",
    "t_w",
    "growth",
    "capital_share",
    "net_return",
    "net_wage",
    "transfer_share",
    "ubi",
    "se",
    "regime",
];

/// One CSV line. Optional cells are written empty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub period: u32,
    pub values: [f64; 9],
    pub ms: Option<(f64, f64)>,
    pub growth: Option<f64>,
    pub derived: [f64; 6],
    pub regime: String,
}

pub fn csv_rows(traj: &Trajectory) -> Vec<CsvRow> {
    traj.snapshots
        .iter()
        .zip(&traj.params)
        .map(|(s, p)| CsvRow {
            period: s.period,
            values: [s.y, s.k1, s.k2, s.k, s.l, s.r, s.w, s.cap.g, s.cap.tax],
            ms: s.ms.map(|m| (m.g, m.tax)),
            growth: traj.growth(s.period),
            derived: [
                s.capital_share(),
                s.net_return(),
                s.net_wage(),
                s.transfer_share(p),
                s.cap.ubi,
                s.cap.se,
            ],
            regime: s.regime.as_str().to_string(),
        })
        .collect()
}

pub fn write_csv(rows: &[CsvRow]) -> String {
    let mut out = CSV_HEADER.join(",");
    out.push('\n');
    for row in rows {
        let mut cells: Vec<String> = vec![row.period.to_string()];
        cells.extend(row.values.iter().map(f64::to_string));
        match row.ms {
            Some((g, t)) => cells.extend([g.to_string(), t.to_string()]),
            None => cells.extend([String::new(), String::new()]),
        }
        cells.push(row.growth.map(|g| g.to_string()).unwrap_or_default());
        cells.extend(row.derived.iter().map(f64::to_string));
        cells.push(row.regime.clone());
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn trajectory_csv(traj: &Trajectory) -> String {
    write_csv(&csv_rows(traj))
}

pub fn read_csv(text: &str) -> Result<Vec<CsvRow>> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::Parse("empty CSV".into()))?;
    if header != CSV_HEADER.join(",") {
        return Err(Error::Parse(format!("unexpected CSV header `{header}`")));
    }
    let num = |s: &str, line: usize| -> Result<f64> {
        s.parse()
            .map_err(|_| Error::Parse(format!("line {line}: bad number `{s}`")))
    };
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let lineno = i + 2;
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != CSV_HEADER.len() {
            return Err(Error::Parse(format!(
                "line {lineno}: {} fields, expected {}",
                f.len(),
                CSV_HEADER.len()
            )));
        }
        let period = f[0]
            .parse()
            .map_err(|_| Error::Parse(format!("line {lineno}: bad period `{}`", f[0])))?;
        let mut values = [0.0; 9];
        for (v, s) in values.iter_mut().zip(&f[1..10]) {
            *v = num(s, lineno)?;
        }
        let ms = match (f[10], f[11]) {
            ("", "") => None,
            (g, t) => Some((num(g, lineno)?, num(t, lineno)?)),
        };
        let growth = match f[12] {
            "" => None,
            g => Some(num(g, lineno)?),
        };
        let mut derived = [0.0; 6];
        for (v, s) in derived.iter_mut().zip(&f[13..19]) {
            *v = num(s, lineno)?;
        }
        rows.push(CsvRow {
            period,
            values,
            ms,
            growth,
            derived,
            regime: f[19].to_string(),
        });
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub package: String,
    pub version: String,
    pub format_version: u32,
    /// SHA-256 of the canonical config, excluding output settings.
    pub config_hash: String,
    pub files: Vec<String>,
    pub trajectory: Trajectory,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub criteria: Option<CriteriaReport>,
}

impl Manifest {
    pub fn new(config_hash: String, trajectory: Trajectory, criteria: Option<CriteriaReport>) -> Self {
        Manifest {
            package: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            format_version: 1,
            config_hash,
            files: Vec::new(),
            trajectory,
            criteria,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmitFlags {
    pub csv: bool,
    pub charts: bool,
}

impl Default for EmitFlags {
    fn default() -> Self {
        EmitFlags {
            csv: true,
            charts: false,
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

/// Writes the enabled outputs and `manifest.json` into `dir`. Returns the
/// paths written.
pub fn emit_outputs(dir: &Path, mut manifest: Manifest, flags: EmitFlags) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut written = Vec::new();
    if flags.csv {
        let path = dir.join("trajectory.csv");
        write_file(&path, &trajectory_csv(&manifest.trajectory))?;
        written.push(path);
    }
    if flags.charts {
        for (name, svg) in charts(&manifest.trajectory) {
            let path = dir.join(format!("{name}.svg"));
            write_file(&path, &svg)?;
            written.push(path);
        }
    }
    manifest.files = written
        .iter()
        .filter_map(|p| p.file_name().map(|n| n.to_string_lossy().into_owned()))
        .collect();
    let path = dir.join("manifest.json");
    let json = serde_json::to_string_pretty(&manifest).map_err(|e| Error::Parse(e.to_string()))?;
    write_file(&path, &(json + "\n"))?;
    written.push(path);
    Ok(written)
}

/// Line charts of labor, transfer, tax rate and capital share.
pub fn charts(traj: &Trajectory) -> Vec<(&'static str, String)> {
    let series = |f: &dyn Fn(&crate::model::Snapshot) -> f64| -> Vec<(f64, f64)> {
        traj.snapshots.iter().map(|s| (s.period as f64, f(s))).collect()
    };
    vec![
        ("labor", line_chart("Labor L", &series(&|s| s.l))),
        ("transfer", line_chart("Transfer G (CAP)", &series(&|s| s.cap.g))),
        ("tax", line_chart("Tax rate t (CAP)", &series(&|s| s.cap.tax))),
        (
            "capital_share",
            line_chart("Capital share rK/Y", &series(&|s| s.capital_share())),
        ),
    ]
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 360.0;
const MARGIN: f64 = 48.0;

pub fn line_chart(title: &str, points: &[(f64, f64)]) -> String {
    let bounds = |f: fn(&(f64, f64)) -> f64| {
        points
            .iter()
            .map(f)
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
    };
    let (x0, mut x1) = bounds(|p| p.0);
    let (mut y0, mut y1) = bounds(|p| p.1);
    if !(x1 > x0) {
        x1 = x0 + 1.0;
    }
    if !(y1 > y0) {
        y0 -= 0.5;
        y1 += 0.5;
    }
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="24" font-family="sans-serif" font-size="16" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );
    let (left, right, top, bottom) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
    let _ = writeln!(
        svg,
        r#"<polyline fill="none" stroke="black" points="{left},{top} {left},{bottom} {right},{bottom}"/>"#
    );
    for (v, y) in [(y0, bottom), (y1, top)] {
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11" text-anchor="end">{}</text>"#,
            left - 4.0,
            y + 4.0,
            tick(v)
        );
    }
    for (v, x) in [(x0, left), (x1, right)] {
        let _ = writeln!(
            svg,
            r#"<text x="{x}" y="{}" font-family="sans-serif" font-size="11" text-anchor="middle">T={}</text>"#,
            bottom + 16.0,
            v
        );
    }
    let pts: Vec<String> = points
        .iter()
        .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
        .collect();
    let _ = writeln!(
        svg,
        r#"<polyline fill="none" stroke="steelblue" stroke-width="2" points="{}"/>"#,
        pts.join(" ")
    );
    svg.push_str("</svg>\n");
    svg
}

fn tick(v: f64) -> String {
    if v.abs() >= 10.0 {
        format!("{v:.0}")
    } else {
        format!("{v:.3}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chart_is_well_formed() {
        let svg = line_chart("a < b", &[(0.0, 1.0), (1.0, 2.0), (2.0, 1.5)]);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains("a &lt; b"));
    }

    #[test]
    fn flat_series_does_not_divide_by_zero() {
        let svg = line_chart("flat", &[(0.0, 1.0), (1.0, 1.0)]);
        assert!(!svg.contains("NaN"));
    }
}
