//! Transition criteria and event detection over a trajectory.
//!
//! M1 output rises, M2 labor falls, M3 labor quality rises, M4 the transfer
//! share `nG/Y` rises, P5 the capital share `rK/Y` rises, P6 the net return
//! `r(1 - t)` exceeds output growth in every period.

use serde::{Deserialize, Serialize};

use super::run::Trajectory;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriteriaOptions {
    /// Weak abundance: UBI (`G/2`) at least this fraction of `Y/n`.
    pub weak_abundance_fraction: f64,
    /// Labor at or below this counts as post-labor.
    pub labor_eps: f64,
    pub tolerance: f64,
}

impl Default for CriteriaOptions {
    fn default() -> Self {
        CriteriaOptions {
            weak_abundance_fraction: 0.25,
            labor_eps: 0.5,
            tolerance: 1e-9,
        }
    }
}

/// Inclusive range of periods; each is compared with its predecessor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub from: u32,
    pub to: u32,
}

impl Window {
    pub fn new(from: u32, to: u32) -> Self {
        Window { from, to }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriteriaFlags {
    pub m1: bool,
    pub m2: bool,
    pub m3: bool,
    pub m4: bool,
    pub p5: bool,
    pub p6: bool,
}

impl CriteriaFlags {
    pub fn all(&self) -> bool {
        self.m1 && self.m2 && self.m3 && self.m4 && self.p5 && self.p6
    }

    pub fn labeled(&self) -> [(&'static str, bool); 6] {
        [
            ("M1", self.m1),
            ("M2", self.m2),
            ("M3", self.m3),
            ("M4", self.m4),
            ("P5", self.p5),
            ("P6", self.p6),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeriodCriteria {
    pub period: u32,
    pub flags: CriteriaFlags,
    pub growth: f64,
    pub net_return: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriteriaReport {
    pub window: Window,
    pub periods: Vec<PeriodCriteria>,
    pub verdicts: CriteriaFlags,
    /// First period where UBI reaches the weak-abundance threshold.
    pub weak_abundance_period: Option<u32>,
    /// First period with labor at or below `labor_eps`.
    pub post_labor_period: Option<u32>,
    /// Periods where the direction of labor's change flips.
    pub labor_turning_points: Vec<u32>,
    /// `|K/Y - s/(g + θ)|` at the window's last period.
    pub steady_state_gap: f64,
}

/// Evaluates the six criteria over `window`.
///
/// Per period, M1-M4 and P5 hold when the series moved the right way up to
/// `tolerance`; their verdict also requires a net move beyond `tolerance`
/// across the window, so a flat series fails. P6 is a strict inequality in
/// every period.
pub fn evaluate_criteria(traj: &Trajectory, window: Window, opts: &CriteriaOptions) -> Result<CriteriaReport> {
    if traj.len() < 2 {
        return Err(Error::InvalidScenario("criteria need at least two periods".into()));
    }
    let first = traj.first_period().expect("non-empty");
    let last = traj.last_period().expect("non-empty");
    let from = window.from.max(first + 1);
    let to = window.to.min(last);
    if from > to {
        return Err(Error::InvalidScenario(format!(
            "window {}..={} has no comparable periods in {first}..={last}",
            window.from, window.to
        )));
    }
    let window = Window { from, to };
    let tol = opts.tolerance;

    let mut periods = Vec::new();
    for period in from..=to {
        let cur = traj.get(period).expect("in range");
        let prev = traj.get(period - 1).expect("in range");
        let growth = traj.growth(period).expect("in range");
        let net_return = cur.net_return();
        let share = |p| traj.transfer_share(p).expect("in range");
        let flags = CriteriaFlags {
            m1: cur.y - prev.y >= -tol,
            m2: cur.l - prev.l <= tol,
            m3: cur.tech.q - prev.tech.q >= -tol,
            m4: share(period) - share(period - 1) >= -tol,
            p5: cur.capital_share() - prev.capital_share() >= -tol,
            p6: net_return > growth,
        };
        periods.push(PeriodCriteria {
            period,
            flags,
            growth,
            net_return,
        });
    }

    let base = traj.get(from - 1).expect("in range");
    let end = traj.get(to).expect("in range");
    let base_share = traj.transfer_share(from - 1).expect("in range");
    let end_share = traj.transfer_share(to).expect("in range");
    let every = |f: fn(&CriteriaFlags) -> bool| periods.iter().all(|p| f(&p.flags));
    let verdicts = CriteriaFlags {
        m1: every(|f| f.m1) && end.y - base.y > tol,
        m2: every(|f| f.m2) && base.l - end.l > tol,
        m3: every(|f| f.m3) && end.tech.q - base.tech.q > tol,
        m4: every(|f| f.m4) && end_share - base_share > tol,
        p5: every(|f| f.p5) && end.capital_share() - base.capital_share() > tol,
        p6: every(|f| f.p6),
    };

    let weak_abundance_period = traj
        .snapshots
        .iter()
        .zip(&traj.params)
        .find_map(|(s, p)| (s.cap.ubi >= opts.weak_abundance_fraction * s.y / p.n - tol).then_some(s.period));
    let post_labor_period = traj.snapshots.iter().find(|s| s.l <= opts.labor_eps).map(|s| s.period);

    let mut labor_turning_points = Vec::new();
    let mut last_dir = 0.0f64;
    for pair in traj.snapshots.windows(2) {
        let d = pair[1].l - pair[0].l;
        if d.abs() <= tol {
            continue;
        }
        let dir = d.signum();
        if last_dir != 0.0 && dir != last_dir {
            labor_turning_points.push(pair[0].period);
        }
        last_dir = dir;
    }

    let params = traj.params_at(to).expect("in range");
    let g = traj.growth(to).expect("in range");
    let steady_state_gap = (end.k / end.y - params.s / (g + params.theta)).abs();

    Ok(CriteriaReport {
        window,
        periods,
        verdicts,
        weak_abundance_period,
        post_labor_period,
        labor_turning_points,
        steady_state_gap,
    })
}

/// First period at which the labor paths of `a` and `b` meet or cross (the
/// gap closes to `tol` or changes sign) after having diverged. A common
/// prefix where the paths coincide is skipped.
pub fn labor_crossing(a: &Trajectory, b: &Trajectory, tol: f64) -> Option<u32> {
    let from = a.first_period()?.max(b.first_period()?);
    let to = a.last_period()?.min(b.last_period()?);
    let mut prev_sign = 0.0f64;
    for period in from..=to {
        let gap = a.get(period)?.l - b.get(period)?.l;
        if gap.abs() <= tol {
            if prev_sign != 0.0 {
                return Some(period);
            }
            continue;
        }
        let sign = gap.signum();
        if prev_sign != 0.0 && sign != prev_sign {
            return Some(period);
        }
        prev_sign = sign;
    }
    None
}
