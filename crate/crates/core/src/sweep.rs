//! Parameter grids run in parallel.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scenario::{evaluate_criteria, run_scenario, CriteriaFlags, CriteriaOptions, ScenarioSpec, Window};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepKey {
    S,
    Theta,
    Delta,
    GA,
    GB,
    GQ,
    PostLaborTax,
}

impl SweepKey {
    pub fn as_str(&self) -> &'static str {
        match self {
            SweepKey::S => "s",
            SweepKey::Theta => "theta",
            SweepKey::Delta => "delta",
            SweepKey::GA => "g_a",
            SweepKey::GB => "g_b",
            SweepKey::GQ => "g_q",
            SweepKey::PostLaborTax => "post_labor_tax",
        }
    }

    /// Sets the value on the base parameters and every phase, so phase
    /// overrides do not mask it.
    pub fn apply(&self, spec: &mut ScenarioSpec, v: f64) {
        let p = &mut spec.params;
        match self {
            SweepKey::S => p.s = v,
            SweepKey::Theta => p.theta = v,
            SweepKey::Delta => p.delta = v,
            SweepKey::GA => p.g_a = v,
            SweepKey::GB => p.g_b = v,
            SweepKey::GQ => p.g_q = v,
            SweepKey::PostLaborTax => {}
        }
        for phase in &mut spec.phases {
            match self {
                SweepKey::S => phase.overrides.s = None,
                SweepKey::GA => phase.overrides.g_a = None,
                SweepKey::GB => phase.overrides.g_b = None,
                SweepKey::GQ => phase.overrides.g_q = None,
                SweepKey::PostLaborTax => phase.closure.post_labor_tax = v,
                SweepKey::Theta | SweepKey::Delta => {}
            }
        }
    }
}

impl fmt::Display for SweepKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SweepKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        use SweepKey::*;
        [S, Theta, Delta, GA, GB, GQ, PostLaborTax]
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| {
                Error::Parse(format!(
                    "unknown sweep key `{s}` (expected s, theta, delta, g_a, g_b, g_q or post_labor_tax)"
                ))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepAxis {
    pub key: SweepKey,
    pub values: Vec<f64>,
}

impl FromStr for SweepAxis {
    type Err = Error;

    /// `key=v1,v2,...` or `key=start:stop:count` (inclusive, evenly spaced).
    fn from_str(s: &str) -> Result<Self> {
        let (key, rest) = s
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("sweep axis `{s}` must look like key=values")))?;
        let key: SweepKey = key.trim().parse()?;
        let num = |x: &str| {
            x.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("bad number `{x}` in sweep axis `{s}`")))
        };
        let values = if let [a, b, n] = rest.split(':').collect::<Vec<_>>()[..] {
            let (a, b) = (num(a)?, num(b)?);
            let n: usize = n
                .trim()
                .parse()
                .ok()
                .filter(|n| *n >= 1)
                .ok_or_else(|| Error::Parse(format!("bad count in sweep axis `{s}`")))?;
            if n == 1 {
                vec![a]
            } else {
                (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
            }
        } else {
            rest.split(',').map(num).collect::<Result<_>>()?
        };
        Ok(SweepAxis { key, values })
    }
}

/// Outcome of one grid point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub point: Vec<(SweepKey, f64)>,
    pub outcome: std::result::Result<SweepSummary, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub last_period: u32,
    pub y: f64,
    pub l: f64,
    pub g: f64,
    pub tax: f64,
    pub verdicts: CriteriaFlags,
    pub post_labor_period: Option<u32>,
    pub weak_abundance_period: Option<u32>,
}

/// Cartesian product of `axes`, first axis slowest.
pub fn grid(axes: &[SweepAxis]) -> Vec<Vec<(SweepKey, f64)>> {
    axes.iter().fold(vec![Vec::new()], |acc, axis| {
        acc.into_iter()
            .flat_map(|prefix| {
                axis.values.iter().map(move |v| {
                    let mut p = prefix.clone();
                    p.push((axis.key, *v));
                    p
                })
            })
            .collect()
    })
}

/// Runs every grid point; results come back in grid order. A point that
/// fails records its error instead of aborting the sweep.
pub fn sweep(base: &ScenarioSpec, axes: &[SweepAxis], window: Window, opts: &CriteriaOptions) -> Vec<SweepResult> {
    grid(axes)
        .into_par_iter()
        .map(|point| {
            let mut spec = base.clone();
            for (k, v) in &point {
                k.apply(&mut spec, *v);
            }
            let outcome = run_point(&spec, window, opts).map_err(|e| e.to_string());
            SweepResult { point, outcome }
        })
        .collect()
}

fn run_point(spec: &ScenarioSpec, window: Window, opts: &CriteriaOptions) -> Result<SweepSummary> {
    let traj = run_scenario(spec)?;
    let report = evaluate_criteria(&traj, window, opts)?;
    let last = traj.snapshots.last().expect("validated spec has periods");
    Ok(SweepSummary {
        last_period: last.period,
        y: last.y,
        l: last.l,
        g: last.cap.g,
        tax: last.cap.tax,
        verdicts: report.verdicts,
        post_labor_period: report.post_labor_period,
        weak_abundance_period: report.weak_abundance_period,
    })
}

/// One CSV line per grid point.
pub fn sweep_csv(axes: &[SweepAxis], results: &[SweepResult]) -> String {
    let mut header: Vec<String> = axes.iter().map(|a| a.key.to_string()).collect();
    header.extend(
        [
            "status",
            "T_end",
            "Y",
            "L",
            "G_cap",
            "t",
            "M1",
            "M2",
            "M3",
            "M4",
            "P5",
            "P6",
            "post_labor_T",
            "weak_abundance_T",
        ]
        .map(String::from),
    );
    let mut out = header.join(",") + "\n";
    let opt = |p: Option<u32>| p.map(|p| p.to_string()).unwrap_or_default();
    for r in results {
        let mut cells: Vec<String> = r.point.iter().map(|(_, v)| v.to_string()).collect();
        match &r.outcome {
            Ok(s) => {
                cells.push("ok".into());
                cells.extend([
                    s.last_period.to_string(),
                    s.y.to_string(),
                    s.l.to_string(),
                    s.g.to_string(),
                    s.tax.to_string(),
                ]);
                cells.extend(s.verdicts.labeled().iter().map(|(_, b)| b.to_string()));
                cells.push(opt(s.post_labor_period));
                cells.push(opt(s.weak_abundance_period));
            }
            Err(e) => {
                cells.push(format!("\"error: {}\"", e.replace('"', "'").replace('\n', " ")));
                cells.extend(std::iter::repeat_n(String::new(), 13));
            }
        }
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}
