//! Run configuration files.
//!
//! Configs are TOML. A file sets the rates in `[params]`, the starting
//! economy either as calibration targets in `[calibration]` or explicitly in
//! `[initial]` (with `alpha`, `n` and `delta` in `[params]`), and one or more
//! `[[scenario.phases]]`. `[criteria]`, `[verify]` and `[output]` are
//! optional. See `configs/` for complete examples.
//!
//! Validation collects every problem in the file, each tagged with the
//! dotted path of the offending key.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use toml::{Table, Value};

use super::golden::{TableId, VerifyOptions};
use super::output::EmitFlags;
use crate::calibration::{calibrate, Calibration, CalibrationTargets};
use crate::closure::{ClosureKind, ClosureRule, Schedule, DEFAULT_POST_LABOR_TAX};
use crate::error::{ConfigIssue, Error, Result};
use crate::model::{ModelParams, Snapshot, TechState};
use crate::scenario::{
    run_scenario, CriteriaOptions, ParamOverrides, Phase, ScenarioSpec, StartState, TechAnchor, Window,
};

/// Nesting limit for closures that take their path from another config.
const MAX_REFERENCE_DEPTH: usize = 4;

const TOP_KEYS: &[&str] = &[
    "params",
    "calibration",
    "initial",
    "scenario",
    "criteria",
    "verify",
    "output",
];
const RATE_KEYS: &[&str] = &["s", "theta", "g_a", "g_b", "g_q"];
const STRUCTURAL_KEYS: &[&str] = &["alpha", "n", "delta"];
const TARGET_KEYS: &[&str] = &["y0", "k0", "l0", "n", "t0", "g0", "q0", "alpha"];
const INITIAL_KEYS: &[&str] = &["a", "b", "q", "k"];
const SCHEDULE_KEYS: &[&str] = &["constant", "values", "linear", "geometric", "from_config"];

/// Savings, depreciation and growth rates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rates {
    pub s: f64,
    pub theta: f64,
    pub g_a: f64,
    pub g_b: f64,
    pub g_q: f64,
}

/// Where the starting economy comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelSource {
    Calibrated(CalibrationTargets),
    Explicit {
        alpha: f64,
        n: f64,
        delta: f64,
        tech: TechState,
        capital: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriteriaSettings {
    pub window: Window,
    pub options: CriteriaOptions,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifySettings {
    pub table: TableId,
    pub options: VerifyOptions,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct OutputSettings {
    pub dir: Option<PathBuf>,
    pub flags: EmitFlags,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub source: ModelSource,
    pub rates: Rates,
    pub calibration: Option<Calibration>,
    pub scenario: ScenarioSpec,
    pub criteria: CriteriaSettings,
    pub verify: Option<VerifySettings>,
    pub output: OutputSettings,
}

impl RunConfig {
    /// SHA-256 over every setting except `[output]`, after references are
    /// resolved.
    pub fn hash(&self) -> String {
        #[derive(Serialize)]
        struct Canonical<'a> {
            source: &'a ModelSource,
            rates: &'a Rates,
            scenario: &'a ScenarioSpec,
            criteria: &'a CriteriaSettings,
            verify: &'a Option<VerifySettings>,
        }
        let canonical = Canonical {
            source: &self.source,
            rates: &self.rates,
            scenario: &self.scenario,
            criteria: &self.criteria,
            verify: &self.verify,
        };
        let bytes = serde_json::to_vec(&canonical).expect("config serializes");
        Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
    }
}

pub fn load_config(path: &Path) -> Result<RunConfig> {
    load_with_overlay(path, None)
}

/// Loads `path` with the model tables (`params`, `calibration`, `initial`)
/// of `overlay` taking precedence, e.g. a file written by `calibrate`.
pub fn load_with_overlay(path: &Path, overlay: Option<&Path>) -> Result<RunConfig> {
    let mut table = read_table(path)?;
    if let Some(o) = overlay {
        let extra = read_table(o)?;
        if extra.contains_key("initial") || extra.contains_key("calibration") {
            table.remove("initial");
            table.remove("calibration");
        }
        for (k, v) in extra {
            table.insert(k, v);
        }
    }
    from_table(&table, path.parent().unwrap_or(Path::new(".")), 0)
}

fn read_table(path: &Path) -> Result<Table> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    text.parse::<Table>().map_err(|e| {
        Error::Config(vec![ConfigIssue {
            path: String::new(),
            message: format!("{}: {}", path.display(), e.message()),
        }])
    })
}

/// Parses config text; relative references resolve against `base_dir`.
pub fn parse_config(text: &str, base_dir: &Path) -> Result<RunConfig> {
    let table = text.parse::<Table>().map_err(|e| {
        Error::Config(vec![ConfigIssue {
            path: String::new(),
            message: e.message().to_string(),
        }])
    })?;
    from_table(&table, base_dir, 0)
}

struct Issues(Vec<ConfigIssue>);

impl Issues {
    fn push(&mut self, path: impl Into<String>, message: impl Into<String>) {
        self.0.push(ConfigIssue {
            path: path.into(),
            message: message.into(),
        });
    }

    fn unknown_keys(&mut self, t: &Table, path: &str, allowed: &[&str]) {
        for key in t.keys() {
            if !allowed.contains(&key.as_str()) {
                self.push(
                    join(path, key),
                    format!("unknown key (expected one of: {})", allowed.join(", ")),
                );
            }
        }
    }

    fn number(&mut self, t: &Table, path: &str, key: &str, required: bool) -> Option<f64> {
        let full = join(path, key);
        match t.get(key) {
            None => {
                if required {
                    self.push(full, "required key is missing");
                }
                None
            }
            Some(Value::Float(f)) => Some(*f),
            Some(Value::Integer(i)) => Some(*i as f64),
            Some(other) => {
                self.push(full, format!("expected a number, found {}", other.type_str()));
                None
            }
        }
    }

    fn period(&mut self, t: &Table, path: &str, key: &str, required: bool) -> Option<u32> {
        let full = join(path, key);
        match t.get(key) {
            None => {
                if required {
                    self.push(full, "required key is missing");
                }
                None
            }
            Some(Value::Integer(i)) if *i >= 0 && *i <= u32::MAX as i64 => Some(*i as u32),
            Some(other) => {
                self.push(full, format!("expected a non-negative integer period, found {other}"));
                None
            }
        }
    }

    fn boolean(&mut self, t: &Table, path: &str, key: &str) -> Option<bool> {
        match t.get(key) {
            None => None,
            Some(Value::Boolean(b)) => Some(*b),
            Some(other) => {
                self.push(
                    join(path, key),
                    format!("expected true or false, found {}", other.type_str()),
                );
                None
            }
        }
    }

    fn string<'a>(&mut self, t: &'a Table, path: &str, key: &str, required: bool) -> Option<&'a str> {
        match t.get(key) {
            None => {
                if required {
                    self.push(join(path, key), "required key is missing");
                }
                None
            }
            Some(Value::String(s)) => Some(s),
            Some(other) => {
                self.push(
                    join(path, key),
                    format!("expected a string, found {}", other.type_str()),
                );
                None
            }
        }
    }

    fn table<'a>(&mut self, t: &'a Table, path: &str, key: &str) -> Option<&'a Table> {
        match t.get(key) {
            None => None,
            Some(Value::Table(inner)) => Some(inner),
            Some(other) => {
                self.push(join(path, key), format!("expected a table, found {}", other.type_str()));
                None
            }
        }
    }

    /// Checks `lo <= v` (or `<` when `open_lo`) and `v < hi` (or `<=`).
    fn range(&mut self, v: Option<f64>, path: &str, key: &str, bounds: Bounds) -> Option<f64> {
        let v = v?;
        if bounds.contains(v) {
            Some(v)
        } else {
            self.push(join(path, key), format!("{v} is out of range {bounds}"));
            None
        }
    }
}

#[derive(Clone, Copy)]
struct Bounds {
    lo: f64,
    hi: f64,
    open_lo: bool,
    open_hi: bool,
}

impl Bounds {
    const fn new(lo: f64, hi: f64, open_lo: bool, open_hi: bool) -> Self {
        Bounds {
            lo,
            hi,
            open_lo,
            open_hi,
        }
    }

    fn contains(&self, v: f64) -> bool {
        let above = if self.open_lo { v > self.lo } else { v >= self.lo };
        let below = if self.open_hi { v < self.hi } else { v <= self.hi };
        v.is_finite() && above && below
    }
}

impl std::fmt::Display for Bounds {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let l = if self.open_lo { '(' } else { '[' };
        let r = if self.open_hi { ')' } else { ']' };
        let hi = if self.hi.is_infinite() {
            "inf".to_string()
        } else {
            self.hi.to_string()
        };
        write!(f, "{l}{}, {hi}{r}", self.lo)
    }
}

const UNIT_HALF_OPEN: Bounds = Bounds::new(0.0, 1.0, false, true);
const UNIT_OPEN: Bounds = Bounds::new(0.0, 1.0, true, true);
const UNIT_CLOSED: Bounds = Bounds::new(0.0, 1.0, false, false);
const POSITIVE: Bounds = Bounds::new(0.0, f64::INFINITY, true, true);
const NON_NEGATIVE: Bounds = Bounds::new(0.0, f64::INFINITY, false, true);
const GROWTH: Bounds = Bounds::new(-1.0, f64::INFINITY, true, true);

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn from_table(root: &Table, base_dir: &Path, depth: usize) -> Result<RunConfig> {
    let mut is = Issues(Vec::new());
    is.unknown_keys(root, "", TOP_KEYS);

    let empty = Table::new();
    let params = is.table(root, "", "params");
    if params.is_none() && !root.contains_key("params") {
        is.push("params", "required table is missing");
    }
    let params = params.unwrap_or(&empty);
    let calib = is.table(root, "", "calibration");
    let initial = is.table(root, "", "initial");

    let mut allowed: Vec<&str> = RATE_KEYS.to_vec();
    if calib.is_none() {
        allowed.extend(STRUCTURAL_KEYS);
    }
    is.unknown_keys(params, "params", &allowed);
    let rates = {
        let s = is.number(params, "params", "s", true);
        let theta = is.number(params, "params", "theta", true);
        let g_a = is.number(params, "params", "g_a", true);
        let g_b = is.number(params, "params", "g_b", true);
        let g_q = is.number(params, "params", "g_q", true);
        let s = is.range(s, "params", "s", UNIT_HALF_OPEN);
        let theta = is.range(theta, "params", "theta", UNIT_HALF_OPEN);
        let g_a = is.range(g_a, "params", "g_a", GROWTH);
        let g_b = is.range(g_b, "params", "g_b", GROWTH);
        let g_q = is.range(g_q, "params", "g_q", GROWTH);
        match (s, theta, g_a, g_b, g_q) {
            (Some(s), Some(theta), Some(g_a), Some(g_b), Some(g_q)) => Some(Rates {
                s,
                theta,
                g_a,
                g_b,
                g_q,
            }),
            _ => None,
        }
    };

    let source = match (calib, initial) {
        (Some(_), Some(_)) => {
            is.push("initial", "give either [calibration] or [initial], not both");
            None
        }
        (None, None) => {
            is.push(
                "calibration",
                "required: a [calibration] table (y0, k0, l0, n, t0, g0, q0, alpha) or an [initial] table (a, b, q, k) with params.alpha, params.n and params.delta",
            );
            None
        }
        (Some(c), None) => calibration_source(&mut is, c),
        (None, Some(i)) => explicit_source(&mut is, params, i),
    };

    let calibration = match &source {
        Some(ModelSource::Calibrated(t)) => match calibrate(t) {
            Ok(c) => Some(c),
            Err(e) => {
                is.push("calibration", e.to_string());
                None
            }
        },
        _ => None,
    };
    let n = match &source {
        Some(ModelSource::Calibrated(t)) => Some(t.n),
        Some(ModelSource::Explicit { n, .. }) => Some(*n),
        None => None,
    };

    let scenario_table = is.table(root, "", "scenario");
    if scenario_table.is_none() && !root.contains_key("scenario") {
        is.push("scenario", "required table is missing");
    }
    let scenario_table = scenario_table.unwrap_or(&empty);
    let parsed = parse_scenario(&mut is, scenario_table, n, base_dir, depth);

    let criteria = parse_criteria(&mut is, root);
    let verify = parse_verify(&mut is, root);
    let output = parse_output(&mut is, root, base_dir);

    if !is.0.is_empty() {
        return Err(Error::Config(is.0));
    }
    let (source, rates, (phases, horizon, corner)) = (
        source.expect("no issues"),
        rates.expect("no issues"),
        parsed.expect("no issues"),
    );
    let scenario = match &source {
        ModelSource::Calibrated(_) => {
            let cal = calibration.as_ref().expect("calibrated");
            let mut spec = ScenarioSpec::calibrated(
                cal,
                cal.params(rates.s, rates.theta, rates.g_a, rates.g_b, rates.g_q),
                phases,
                horizon,
            );
            spec.corner_at_origin = corner.unwrap_or(true);
            spec
        }
        ModelSource::Explicit {
            alpha,
            n,
            delta,
            tech,
            capital,
        } => ScenarioSpec {
            params: ModelParams {
                alpha: *alpha,
                n: *n,
                s: rates.s,
                theta: rates.theta,
                delta: *delta,
                g_a: rates.g_a,
                g_b: rates.g_b,
                g_q: rates.g_q,
            },
            base_tech: *tech,
            start: StartState {
                period: 0,
                capital: *capital,
            },
            corner_at_origin: corner.unwrap_or(false),
            phases,
            horizon,
        },
    };
    if let Err(e) = scenario.validate() {
        return Err(Error::Config(vec![ConfigIssue {
            path: "scenario".into(),
            message: e.to_string(),
        }]));
    }
    Ok(RunConfig {
        source,
        rates,
        calibration,
        scenario,
        criteria,
        verify,
        output,
    })
}

fn calibration_source(is: &mut Issues, c: &Table) -> Option<ModelSource> {
    let p = "calibration";
    is.unknown_keys(c, p, TARGET_KEYS);
    let mut v = BTreeMap::new();
    for key in TARGET_KEYS {
        let raw = is.number(c, p, key, true);
        let bounds = match *key {
            "t0" => UNIT_OPEN,
            "alpha" => UNIT_OPEN,
            "g0" => NON_NEGATIVE,
            _ => POSITIVE,
        };
        if let Some(x) = is.range(raw, p, key, bounds) {
            v.insert(*key, x);
        }
    }
    if let (Some(l0), Some(n)) = (v.get("l0"), v.get("n")) {
        if l0 > n {
            is.push("calibration.l0", format!("{l0} exceeds calibration.n = {n}"));
            return None;
        }
    }
    (v.len() == TARGET_KEYS.len()).then(|| {
        ModelSource::Calibrated(CalibrationTargets {
            y0: v["y0"],
            k0: v["k0"],
            l0: v["l0"],
            n: v["n"],
            t0: v["t0"],
            g0: v["g0"],
            q0: v["q0"],
            alpha: v["alpha"],
        })
    })
}

fn explicit_source(is: &mut Issues, params: &Table, i: &Table) -> Option<ModelSource> {
    let alpha = is.number(params, "params", "alpha", true);
    let alpha = is.range(alpha, "params", "alpha", UNIT_OPEN);
    let n = is.number(params, "params", "n", true);
    let n = is.range(n, "params", "n", POSITIVE);
    let delta = is.number(params, "params", "delta", true);
    let delta = is.range(delta, "params", "delta", POSITIVE);
    is.unknown_keys(i, "initial", INITIAL_KEYS);
    let a = is.number(i, "initial", "a", true);
    let a = is.range(a, "initial", "a", POSITIVE);
    let b = is.number(i, "initial", "b", true);
    let b = is.range(b, "initial", "b", NON_NEGATIVE);
    let q = is.number(i, "initial", "q", true);
    let q = is.range(q, "initial", "q", POSITIVE);
    let k = is.number(i, "initial", "k", true);
    let k = is.range(k, "initial", "k", NON_NEGATIVE);
    Some(ModelSource::Explicit {
        alpha: alpha?,
        n: n?,
        delta: delta?,
        tech: TechState {
            a: a?,
            b: b?,
            q: q?,
            period: 0,
        },
        capital: k?,
    })
}

type ParsedScenario = (Vec<Phase>, u32, Option<bool>);

fn parse_scenario(is: &mut Issues, t: &Table, n: Option<f64>, base_dir: &Path, depth: usize) -> Option<ParsedScenario> {
    let p = "scenario";
    is.unknown_keys(t, p, &["horizon", "corner_at_origin", "phases"]);
    let horizon = is.period(t, p, "horizon", true);
    let corner = is.boolean(t, p, "corner_at_origin");
    let phases_val = match t.get("phases") {
        None => {
            is.push("scenario.phases", "required: at least one [[scenario.phases]] entry");
            return None;
        }
        Some(Value::Array(a)) if !a.is_empty() => a,
        Some(_) => {
            is.push("scenario.phases", "expected a non-empty array of tables");
            return None;
        }
    };
    let before = is.0.len();
    let mut phases = Vec::new();
    for (i, v) in phases_val.iter().enumerate() {
        let path = format!("scenario.phases[{i}]");
        let Value::Table(pt) = v else {
            is.push(path, "expected a table");
            continue;
        };
        if let Some(phase) = parse_phase(is, pt, &path, n, base_dir, depth) {
            phases.push(phase);
        }
    }
    for (i, pair) in phases.windows(2).enumerate() {
        let (a, b) = (&pair[0], &pair[1]);
        if b.start <= a.end {
            is.push(
                format!("scenario.phases[{}].start", i + 1),
                format!("overlaps the previous phase ({}..={})", a.start, a.end),
            );
        } else if b.start != a.end + 1 {
            is.push(
                format!("scenario.phases[{}].start", i + 1),
                format!("leaves a gap after the previous phase ending at {}", a.end),
            );
        }
    }
    if let (Some(first), Some(_)) = (phases.first(), horizon) {
        if first.start != 0 {
            is.push("scenario.phases[0].start", "the first phase must start at period 0");
        }
    }
    if let (Some(last), Some(h)) = (phases.last(), horizon) {
        if last.end < h {
            is.push(
                format!("scenario.phases[{}].end", phases.len() - 1),
                format!("the last phase ends at {} before scenario.horizon = {h}", last.end),
            );
        }
    }
    (is.0.len() == before).then_some(())?;
    Some((phases, horizon?, corner))
}

fn parse_phase(is: &mut Issues, t: &Table, path: &str, n: Option<f64>, base_dir: &Path, depth: usize) -> Option<Phase> {
    is.unknown_keys(
        t,
        path,
        &["start", "end", "s", "g_a", "g_b", "g_q", "tech_anchor", "closure"],
    );
    let start = is.period(t, path, "start", true);
    let end = is.period(t, path, "end", true);
    if let (Some(s), Some(e)) = (start, end) {
        if e < s {
            is.push(join(path, "end"), format!("{e} precedes start {s}"));
        }
    }
    let s = is.number(t, path, "s", false);
    let overrides = ParamOverrides {
        s: is.range(s, path, "s", UNIT_HALF_OPEN),
        g_a: {
            let v = is.number(t, path, "g_a", false);
            is.range(v, path, "g_a", GROWTH)
        },
        g_b: {
            let v = is.number(t, path, "g_b", false);
            is.range(v, path, "g_b", GROWTH)
        },
        g_q: {
            let v = is.number(t, path, "g_q", false);
            is.range(v, path, "g_q", GROWTH)
        },
    };
    let anchor = match is.string(t, path, "tech_anchor", false) {
        None | Some("origin") => TechAnchor::Origin,
        Some("continue") => TechAnchor::Continue,
        Some(other) => {
            is.push(
                join(path, "tech_anchor"),
                format!("`{other}` is not one of: origin, continue"),
            );
            TechAnchor::Origin
        }
    };
    let closure_path = join(path, "closure");
    let closure = match is.table(t, path, "closure") {
        Some(c) => parse_closure(is, c, &closure_path, n, base_dir, depth),
        None => {
            if !t.contains_key("closure") {
                is.push(closure_path, "required table is missing");
            }
            None
        }
    };
    Some(
        Phase::new(start?, end?, closure?)
            .with_overrides(overrides)
            .with_anchor(anchor),
    )
}

fn parse_closure(
    is: &mut Issues,
    t: &Table,
    path: &str,
    n: Option<f64>,
    base_dir: &Path,
    depth: usize,
) -> Option<ClosureRule> {
    let mut allowed = vec!["kind", "post_labor_tax"];
    allowed.extend(SCHEDULE_KEYS);
    is.unknown_keys(t, path, &allowed);
    let kind = match is.string(t, path, "kind", true)? {
        "pinned_l" => ClosureKind::PinnedL,
        "pinned_g" => ClosureKind::PinnedG,
        "pinned_t" => ClosureKind::PinnedT,
        "pinned_y" => ClosureKind::PinnedY,
        "laffer_max" => ClosureKind::LafferMax,
        other => {
            is.push(
                join(path, "kind"),
                format!("`{other}` is not one of: pinned_l, pinned_g, pinned_t, pinned_y, laffer_max"),
            );
            return None;
        }
    };
    let tax = is.number(t, path, "post_labor_tax", false);
    let tax = match tax {
        Some(_) => is.range(tax, path, "post_labor_tax", UNIT_CLOSED)?,
        None => DEFAULT_POST_LABOR_TAX,
    };
    let given: Vec<&str> = SCHEDULE_KEYS.iter().copied().filter(|k| t.contains_key(*k)).collect();
    if kind == ClosureKind::LafferMax {
        if !given.is_empty() {
            is.push(join(path, given[0]), "laffer_max takes no schedule");
            return None;
        }
        return Some(ClosureRule::laffer_max().with_post_labor_tax(tax));
    }
    let key = match given.as_slice() {
        [one] => *one,
        [] => {
            is.push(
                path,
                format!("a schedule is required: one of {}", SCHEDULE_KEYS.join(", ")),
            );
            return None;
        }
        [_, second, ..] => {
            is.push(join(path, second), "only one schedule key may be given");
            return None;
        }
    };
    let full = join(path, key);
    let schedule = match key {
        "constant" => Schedule::Constant(is.number(t, path, "constant", true)?),
        "values" => {
            let vt = is.table(t, path, "values")?;
            let mut map = BTreeMap::new();
            for (k, _) in vt {
                let Ok(period) = k.parse::<u32>() else {
                    is.push(join(&full, k), "keys must be period numbers");
                    continue;
                };
                if let Some(v) = is.number(vt, &full, k, true) {
                    map.insert(period, v);
                }
            }
            Schedule::Values(map)
        }
        "linear" => {
            let Some(Value::Array(items)) = t.get("linear") else {
                is.push(full, "expected an array of [period, value] pairs");
                return None;
            };
            let mut knots = Vec::new();
            for (i, item) in items.iter().enumerate() {
                let knot = match item.as_array().map(|a| a.as_slice()) {
                    Some([Value::Integer(p), v]) if *p >= 0 => match v {
                        Value::Float(f) => Some((*p as u32, *f)),
                        Value::Integer(x) => Some((*p as u32, *x as f64)),
                        _ => None,
                    },
                    _ => None,
                };
                match knot {
                    Some(k) => knots.push(k),
                    None => is.push(format!("{full}[{i}]"), "expected [period, value]"),
                }
            }
            Schedule::Linear(knots)
        }
        "geometric" => {
            let g = is.table(t, path, "geometric")?;
            is.unknown_keys(g, &full, &["initial", "rate", "origin"]);
            let initial = is.number(g, &full, "initial", true);
            let rate = is.number(g, &full, "rate", true);
            let rate = is.range(rate, &full, "rate", GROWTH);
            let origin = is.period(g, &full, "origin", false).unwrap_or(0);
            Schedule::Geometric {
                initial: initial?,
                rate: rate?,
                origin,
            }
        }
        "from_config" => {
            let rel = is.string(t, path, "from_config", true)?;
            match referenced_series(kind, &base_dir.join(rel), depth) {
                Ok(s) => s,
                Err(e) => {
                    is.push(full, e.to_string());
                    return None;
                }
            }
        }
        _ => unreachable!("schedule keys are enumerated"),
    };
    if let Err(msg) = schedule.validate() {
        is.push(full, msg);
        return None;
    }
    if let Some(msg) = schedule_range_issue(kind, &schedule, n) {
        is.push(full, msg);
        return None;
    }
    Some(ClosureRule {
        kind,
        schedule: Some(schedule),
        post_labor_tax: tax,
    })
}

fn scheduled_values(s: &Schedule) -> Vec<f64> {
    match s {
        Schedule::Constant(v) => vec![*v],
        Schedule::Values(m) => m.values().copied().collect(),
        Schedule::Linear(k) => k.iter().map(|k| k.1).collect(),
        Schedule::Geometric { initial, .. } => vec![*initial],
    }
}

fn schedule_range_issue(kind: ClosureKind, s: &Schedule, n: Option<f64>) -> Option<String> {
    let values = scheduled_values(s);
    let bad = |ok: &dyn Fn(f64) -> bool| values.iter().copied().find(|v| !ok(*v));
    match kind {
        ClosureKind::PinnedL => {
            let n = n?;
            bad(&|v| (0.0..=n).contains(&v)).map(|v| format!("labor {v} outside [0, {n}]"))
        }
        ClosureKind::PinnedT => bad(&|v| (0.0..1.0).contains(&v)).map(|v| format!("tax {v} outside [0, 1)")),
        ClosureKind::PinnedG => bad(&|v| v >= 0.0).map(|v| format!("transfer {v} is negative")),
        ClosureKind::PinnedY => bad(&|v| v > 0.0).map(|v| format!("output {v} must be positive")),
        ClosureKind::LafferMax => None,
    }
}

/// Per-period series of the pinned variable from the run of another config.
fn referenced_series(kind: ClosureKind, path: &Path, depth: usize) -> Result<Schedule> {
    if depth >= MAX_REFERENCE_DEPTH {
        return Err(Error::InvalidScenario(format!(
            "references nested deeper than {MAX_REFERENCE_DEPTH} at {}",
            path.display()
        )));
    }
    let table = read_table(path)?;
    let cfg = from_table(&table, path.parent().unwrap_or(Path::new(".")), depth + 1)?;
    let traj = run_scenario(&cfg.scenario)?;
    let pick: fn(&Snapshot) -> f64 = match kind {
        ClosureKind::PinnedL => |s| s.l,
        ClosureKind::PinnedG => |s| s.cap.g,
        ClosureKind::PinnedT => |s| s.cap.tax,
        ClosureKind::PinnedY => |s| s.y,
        ClosureKind::LafferMax => unreachable!("laffer_max has no schedule"),
    };
    Ok(Schedule::Values(
        traj.snapshots.iter().map(|s| (s.period, pick(s))).collect(),
    ))
}

fn parse_criteria(is: &mut Issues, root: &Table) -> CriteriaSettings {
    let defaults = CriteriaOptions::default();
    let mut settings = CriteriaSettings {
        window: Window::new(1, u32::MAX),
        options: defaults,
    };
    let Some(t) = is.table(root, "", "criteria") else {
        return settings;
    };
    let p = "criteria";
    is.unknown_keys(
        t,
        p,
        &["from", "to", "weak_abundance_fraction", "labor_eps", "tolerance"],
    );
    if let Some(f) = is.period(t, p, "from", false) {
        settings.window.from = f;
    }
    if let Some(to) = is.period(t, p, "to", false) {
        settings.window.to = to;
    }
    if settings.window.from > settings.window.to {
        is.push("criteria.to", "window ends before it starts");
    }
    let v = is.number(t, p, "weak_abundance_fraction", false);
    if let Some(v) = is.range(v, p, "weak_abundance_fraction", UNIT_CLOSED) {
        settings.options.weak_abundance_fraction = v;
    }
    let v = is.number(t, p, "labor_eps", false);
    if let Some(v) = is.range(v, p, "labor_eps", NON_NEGATIVE) {
        settings.options.labor_eps = v;
    }
    let v = is.number(t, p, "tolerance", false);
    if let Some(v) = is.range(v, p, "tolerance", NON_NEGATIVE) {
        settings.options.tolerance = v;
    }
    settings
}

fn parse_verify(is: &mut Issues, root: &Table) -> Option<VerifySettings> {
    let t = is.table(root, "", "verify")?;
    let p = "verify";
    is.unknown_keys(t, p, &["table", "transfer_tolerance"]);
    let table = match is.string(t, p, "table", true)?.parse::<TableId>() {
        Ok(id) => id,
        Err(e) => {
            is.push("verify.table", e.to_string());
            return None;
        }
    };
    let tol = is.number(t, p, "transfer_tolerance", false);
    let tol = is.range(tol, p, "transfer_tolerance", NON_NEGATIVE);
    Some(VerifySettings {
        table,
        options: VerifyOptions {
            transfer_tolerance: tol,
        },
    })
}

fn parse_output(is: &mut Issues, root: &Table, base_dir: &Path) -> OutputSettings {
    let mut out = OutputSettings::default();
    let Some(t) = is.table(root, "", "output") else {
        return out;
    };
    let p = "output";
    is.unknown_keys(t, p, &["dir", "csv", "charts"]);
    out.dir = is.string(t, p, "dir", false).map(|d| base_dir.join(d));
    if let Some(b) = is.boolean(t, p, "csv") {
        out.flags.csv = b;
    }
    if let Some(b) = is.boolean(t, p, "charts") {
        out.flags.charts = b;
    }
    out
}

/// Model tables for a calibrated economy, loadable as an overlay by
/// [`load_with_overlay`].
pub fn calibration_overlay(cal: &Calibration, rates: &Rates) -> String {
    let mut params = Table::new();
    params.insert("alpha".into(), Value::Float(cal.targets.alpha));
    params.insert("n".into(), Value::Float(cal.targets.n));
    params.insert("delta".into(), Value::Float(cal.delta));
    for (k, v) in [
        ("s", rates.s),
        ("theta", rates.theta),
        ("g_a", rates.g_a),
        ("g_b", rates.g_b),
        ("g_q", rates.g_q),
    ] {
        params.insert(k.into(), Value::Float(v));
    }
    let mut initial = Table::new();
    initial.insert("a".into(), Value::Float(cal.a0));
    initial.insert("b".into(), Value::Float(cal.b0));
    initial.insert("q".into(), Value::Float(cal.targets.q0));
    initial.insert("k".into(), Value::Float(cal.targets.k0));
    let mut root = Table::new();
    root.insert("params".into(), Value::Table(params));
    root.insert("initial".into(), Value::Table(initial));
    toml::to_string(&root).expect("tables serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
[params]
s = 0.15
theta = 0.02
g_a = 0.007
g_b = 0.007
g_q = 0.005

[calibration]
y0 = 100
k0 = 500
l0 = 75
n = 100
t0 = 0.5
g0 = 0.5
q0 = 1
alpha = 0.25

[scenario]
horizon = 10

[[scenario.phases]]
start = 0
end = 10
closure = { kind = "pinned_l", constant = 75 }
"#;

    fn issues(text: &str) -> Vec<ConfigIssue> {
        match parse_config(text, Path::new(".")) {
            Err(Error::Config(v)) => v,
            other => panic!("expected config error, got {other:?}"),
        }
    }

    #[test]
    fn minimal_config_loads() {
        let cfg = parse_config(MINIMAL, Path::new(".")).unwrap();
        assert_eq!(cfg.scenario.horizon, 10);
        assert!(cfg.scenario.corner_at_origin);
        assert!((cfg.scenario.params.delta - 25.0).abs() < 1e-12);
    }

    #[test]
    fn empty_file_lists_required_keys() {
        let paths: Vec<String> = issues("").into_iter().map(|i| i.path).collect();
        for p in ["params", "calibration", "scenario"] {
            assert!(paths.contains(&p.to_string()), "{paths:?}");
        }
    }

    #[test]
    fn savings_out_of_range_names_key() {
        let text = MINIMAL.replace("s = 0.15", "s = 1.5");
        let v = issues(&text);
        assert!(v.iter().any(|i| i.path == "params.s"), "{v:?}");
    }

    #[test]
    fn reports_every_problem() {
        let text = MINIMAL
            .replace("s = 0.15", "s = 1.5\nbogus = 1")
            .replace("theta = 0.02", "theta = -0.1");
        let paths: Vec<String> = issues(&text).into_iter().map(|i| i.path).collect();
        assert!(paths.contains(&"params.s".into()));
        assert!(paths.contains(&"params.theta".into()));
        assert!(paths.contains(&"params.bogus".into()));
    }

    #[test]
    fn overlapping_phases_are_rejected() {
        let text = MINIMAL.replace(
            "end = 10\nclosure",
            "end = 6\nclosure = { kind = \"pinned_l\", constant = 75 }\n\n[[scenario.phases]]\nstart = 5\nend = 10\nclosure",
        );
        let v = issues(&text);
        assert!(v.iter().any(|i| i.path == "scenario.phases[1].start"), "{v:?}");
    }

    #[test]
    fn hash_ignores_output_and_formatting() {
        let a = parse_config(MINIMAL, Path::new(".")).unwrap();
        let b = parse_config(&format!("{MINIMAL}\n[output]\ncsv = false\n"), Path::new(".")).unwrap();
        let c = parse_config(&MINIMAL.replace("n = 100", "n = 100.0"), Path::new(".")).unwrap();
        assert_eq!(a.hash(), b.hash());
        assert_eq!(a.hash(), c.hash());
        let d = parse_config(&MINIMAL.replace("theta = 0.02", "theta = 0.021"), Path::new(".")).unwrap();
        assert_ne!(a.hash(), d.hash());
    }

    #[test]
    fn overlay_round_trip() {
        let cfg = parse_config(MINIMAL, Path::new(".")).unwrap();
        let overlay = calibration_overlay(cfg.calibration.as_ref().unwrap(), &cfg.rates);
        let mut table: Table = MINIMAL.parse().unwrap();
        table.remove("calibration");
        let extra: Table = overlay.parse().unwrap();
        table.extend(extra);
        let explicit = from_table(&table, Path::new("."), 0).unwrap();
        assert_eq!(explicit.scenario.params, cfg.scenario.params);
        assert_eq!(explicit.scenario.base_tech, cfg.scenario.base_tech);
    }
}
