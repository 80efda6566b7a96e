//! Published tables as fixtures, and cell-by-cell verification of a run
//! against them at printed precision.
//!
//! Fixtures keep every cell exactly as printed (decimal comma, `%` on the
//! return column); the parsed value and its number of printed decimals are
//! derived on load.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::Snapshot;
use crate::scenario::Trajectory;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TableId {
    T1,
    T2,
    T3a,
    T3b,
}

impl TableId {
    pub const ALL: [TableId; 4] = [TableId::T1, TableId::T2, TableId::T3a, TableId::T3b];

    pub fn as_str(&self) -> &'static str {
        match self {
            TableId::T1 => "T1",
            TableId::T2 => "T2",
            TableId::T3a => "T3a",
            TableId::T3b => "T3b",
        }
    }

    fn fixture(&self) -> &'static str {
        match self {
            TableId::T1 => include_str!("../../fixtures/t1.tsv"),
            TableId::T2 => include_str!("../../fixtures/t2.tsv"),
            TableId::T3a => include_str!("../../fixtures/t3a.tsv"),
            TableId::T3b => include_str!("../../fixtures/t3b.tsv"),
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TableId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TableId::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown table `{s}` (expected T1, T2, T3a or T3b)")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Column {
    Y,
    K1,
    K2,
    K,
    L,
    R,
    W,
    GCap,
    Tax,
    GMs,
    Tw,
    NetWage,
}

impl Column {
    pub fn header(&self) -> &'static str {
        match self {
            Column::Y => "Y",
            Column::K1 => "K1",
            Column::K2 => "K2",
            Column::K => "K",
            Column::L => "L",
            Column::R => "r",
            Column::W => "w",
            Column::GCap => "G_cap",
            Column::Tax => "t",
            Column::GMs => "G_ms",
            Column::Tw => "t_w",
            Column::NetWage => "w(1-t)",
        }
    }

    pub fn from_header(h: &str) -> Option<Column> {
        use Column::*;
        [Y, K1, K2, K, L, R, W, GCap, Tax, GMs, Tw, NetWage]
            .into_iter()
            .find(|c| c.header() == h)
    }

    /// `None` when the snapshot has no value for this column.
    pub fn value(&self, s: &Snapshot) -> Option<f64> {
        Some(match self {
            Column::Y => s.y,
            Column::K1 => s.k1,
            Column::K2 => s.k2,
            Column::K => s.k,
            Column::L => s.l,
            Column::R => s.r,
            Column::W => s.w,
            Column::GCap => s.cap.g,
            Column::Tax => s.cap.tax,
            Column::GMs => s.ms?.g,
            Column::Tw => s.ms?.tax,
            Column::NetWage => s.net_wage(),
        })
    }

    /// Columns whose printed values are rounded transfer results.
    pub fn is_transfer(&self) -> bool {
        matches!(self, Column::GCap | Column::Tax)
    }
}

/// One printed cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GoldenCell {
    pub column: Column,
    pub printed: String,
    pub value: f64,
    /// Decimal places of `value` as printed (percentages count as fractions).
    pub decimals: u32,
}

impl GoldenCell {
    /// Half a unit in the last printed place.
    pub fn half_unit(&self) -> f64 {
        0.5 * 10f64.powi(-(self.decimals as i32))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GoldenRow {
    pub period: u32,
    pub cells: Vec<GoldenCell>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GoldenTable {
    pub id: TableId,
    pub caption: String,
    pub rows: Vec<GoldenRow>,
}

/// Parses a printed number: `"5,59%"` is `(0.0559, 4)`, `"1,06"` is `(1.06, 2)`.
pub fn parse_printed(s: &str) -> Result<(f64, u32)> {
    let (body, percent) = match s.strip_suffix('%') {
        Some(b) => (b, true),
        None => (s, false),
    };
    let normalized = body.replace(',', ".");
    let value: f64 = normalized
        .parse()
        .map_err(|_| Error::Parse(format!("cannot parse printed value `{s}`")))?;
    let decimals = normalized.split_once('.').map_or(0, |(_, f)| f.len() as u32);
    Ok(if percent {
        (value / 100.0, decimals + 2)
    } else {
        (value, decimals)
    })
}

impl GoldenTable {
    pub fn load(id: TableId) -> GoldenTable {
        GoldenTable::parse(id, id.fixture()).expect("shipped fixtures parse")
    }

    pub fn parse(id: TableId, text: &str) -> Result<GoldenTable> {
        let mut caption = String::new();
        let mut header: Option<Vec<&str>> = None;
        let mut rows: Vec<GoldenRow> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim_end();
            if line.is_empty() {
                continue;
            }
            if let Some(c) = line.strip_prefix('#') {
                caption = c.trim().to_string();
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            let Some(cols) = &header else {
                if fields.first() != Some(&"T") {
                    return Err(Error::Parse(format!("{id}: header must start with T")));
                }
                header = Some(fields);
                continue;
            };
            if fields.len() != cols.len() {
                return Err(Error::Parse(format!(
                    "{id} line {}: {} fields, header has {}",
                    lineno + 1,
                    fields.len(),
                    cols.len()
                )));
            }
            let period: u32 = fields[0]
                .parse()
                .map_err(|_| Error::Parse(format!("{id} line {}: bad period", lineno + 1)))?;
            if rows.last().is_some_and(|r| r.period >= period) {
                return Err(Error::Parse(format!("{id}: periods must be strictly increasing")));
            }
            let mut cells = Vec::new();
            for (h, f) in cols.iter().zip(&fields).skip(1) {
                let column =
                    Column::from_header(h).ok_or_else(|| Error::Parse(format!("{id}: unknown column `{h}`")))?;
                let (value, decimals) = parse_printed(f)?;
                cells.push(GoldenCell {
                    column,
                    printed: f.to_string(),
                    value,
                    decimals,
                });
            }
            rows.push(GoldenRow { period, cells });
        }
        if header.is_none() {
            return Err(Error::Parse(format!("{id}: missing header")));
        }
        Ok(GoldenTable { id, caption, rows })
    }

    pub fn periods(&self) -> Vec<u32> {
        self.rows.iter().map(|r| r.period).collect()
    }

    pub fn row(&self, period: u32) -> Option<&GoldenRow> {
        self.rows.iter().find(|r| r.period == period)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct VerifyOptions {
    /// Absolute tolerance for `G` and `t` in place of printed precision.
    pub transfer_tolerance: Option<f64>,
}

impl VerifyOptions {
    pub fn loose_transfers() -> Self {
        VerifyOptions {
            transfer_tolerance: Some(0.01),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellCheck {
    pub period: u32,
    pub column: Column,
    pub printed: String,
    pub expected: f64,
    /// NaN when the run has no value for the column.
    pub actual: f64,
    pub tolerance: f64,
    pub ok: bool,
}

impl fmt::Display for CellCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "T={} {}: printed {} (±{}), got {}",
            self.period,
            self.column.header(),
            self.printed,
            self.tolerance,
            self.actual
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub table: TableId,
    pub checks: Vec<CellCheck>,
}

impl VerificationReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &CellCheck> {
        self.checks.iter().filter(|c| !c.ok)
    }

    pub fn is_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    /// Report restricted to `columns`.
    pub fn only(&self, columns: &[Column]) -> VerificationReport {
        VerificationReport {
            table: self.table,
            checks: self
                .checks
                .iter()
                .filter(|c| columns.contains(&c.column))
                .cloned()
                .collect(),
        }
    }
}

/// Slack added to every tolerance so exact half-unit values round either way.
const ROUNDING_SLACK: f64 = 1e-9;

pub fn verify_tables(traj: &Trajectory, golden: &GoldenTable, opts: &VerifyOptions) -> Result<VerificationReport> {
    let missing: Vec<u32> = golden
        .periods()
        .into_iter()
        .filter(|p| traj.get(*p).is_none())
        .collect();
    if !missing.is_empty() {
        return Err(Error::Coverage { missing });
    }
    let mut checks = Vec::new();
    for row in &golden.rows {
        let snap = traj.get(row.period).expect("coverage checked");
        for cell in &row.cells {
            let tolerance = match opts.transfer_tolerance {
                Some(tol) if cell.column.is_transfer() => tol,
                _ => cell.half_unit(),
            } + ROUNDING_SLACK;
            let actual = cell.column.value(snap).unwrap_or(f64::NAN);
            checks.push(CellCheck {
                period: row.period,
                column: cell.column,
                printed: cell.printed.clone(),
                expected: cell.value,
                actual,
                tolerance,
                ok: (actual - cell.value).abs() <= tolerance,
            });
        }
    }
    Ok(VerificationReport {
        table: golden.id,
        checks,
    })
}
