//! Multi-phase scenario runs and transition criteria.

mod criteria;
mod run;
mod spec;

pub use criteria::{
    evaluate_criteria, labor_crossing, CriteriaFlags, CriteriaOptions, CriteriaReport, PeriodCriteria, Window,
};
pub use run::{laffer_path, replay_spec, run_scenario, run_spliced, splice_phase, LafferPoint, Trajectory};
pub use spec::{ParamOverrides, Phase, ScenarioSpec, StartState, TechAnchor};
