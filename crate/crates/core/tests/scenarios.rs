//! Multi-phase runs, splicing, replay, criteria and paired comparisons.

use sa_growth::closure::{ClosureRule, Schedule};
use sa_growth::model::Regime;
use sa_growth::presets::{baseline_calibration, baseline_params, baseline_spec, road_spec_from_baseline, Road};
use sa_growth::scenario::{
    evaluate_criteria, labor_crossing, laffer_path, replay_spec, run_scenario, run_spliced, CriteriaOptions, Phase,
    ScenarioSpec, Window,
};
use sa_growth::statics::{compare_productivity, compare_savings, pin_output_path};
use sa_growth::Error;

#[test]
fn roads_share_output_and_capital_for_twenty_periods() {
    let slow = run_scenario(&road_spec_from_baseline(Road::Slow).unwrap()).unwrap();
    let fast = run_scenario(&road_spec_from_baseline(Road::Fast).unwrap()).unwrap();
    for t in 0..20 {
        let (a, b) = (slow.get(t).unwrap(), fast.get(t).unwrap());
        assert!(
            (a.y - b.y).abs() <= 1e-9 * a.y && (a.k - b.k).abs() <= 1e-9 * a.k,
            "T={t}"
        );
    }
    assert_eq!(labor_crossing(&slow, &fast, 1e-9), Some(40));
    assert_eq!(fast.get(52).unwrap().regime, Regime::PostLabor);
}

#[test]
fn splicing_matches_a_single_run() {
    let spec = baseline_spec();
    let full = run_scenario(&spec).unwrap();
    let prefix = full.slice(0, 49);
    let tail = spec.phases.last().unwrap().clone();
    let phase = Phase { start: 50, ..tail };
    let joined = run_spliced(&prefix, &spec, phase).unwrap();
    assert_eq!(joined.len(), full.len());
    for (a, b) in joined.snapshots.iter().zip(&full.snapshots) {
        assert!((a.y - b.y).abs() <= 1e-9 * b.y, "T={}", a.period);
    }
}

#[test]
fn replay_reproduces_suffix_exactly() {
    let spec = road_spec_from_baseline(Road::Slow).unwrap();
    let full = run_scenario(&spec).unwrap();
    let replay = run_scenario(&replay_spec(&spec, &full, 33).unwrap()).unwrap();
    assert_eq!(replay.snapshots, full.slice(33, 68).snapshots);
}

#[test]
fn flat_labor_fails_the_labor_criterion() {
    let cal = baseline_calibration();
    let spec = ScenarioSpec::calibrated(
        &cal,
        baseline_params(&cal),
        vec![Phase::new(0, 40, ClosureRule::pinned_labor(Schedule::Constant(75.0)))],
        40,
    );
    let report = evaluate_criteria(
        &run_scenario(&spec).unwrap(),
        Window::new(1, 40),
        &CriteriaOptions::default(),
    )
    .unwrap();
    assert!(report.verdicts.m1);
    assert!(!report.verdicts.m2);
}

#[test]
fn criteria_window_is_clamped_to_the_run() {
    let traj = run_scenario(&baseline_spec()).unwrap();
    let report = evaluate_criteria(&traj, Window::new(0, 500), &CriteriaOptions::default()).unwrap();
    assert_eq!(report.window, Window::new(1, 100));
    assert_eq!(report.periods.len(), 100);
    assert!(evaluate_criteria(&traj, Window::new(200, 300), &CriteriaOptions::default()).is_err());
}

#[test]
fn laffer_path_peaks_above_realized_transfer() {
    let traj = run_scenario(&baseline_spec()).unwrap();
    let path = laffer_path(&traj).unwrap();
    assert_eq!(path.len(), traj.len());
    for p in &path {
        assert!(p.peak_transfer >= p.transfer - 1e-9, "T={}", p.period);
    }
    assert!((path[0].peak_labor - 58.333).abs() < 0.01);
}

#[test]
fn savings_comparison_needs_pinned_output() {
    let err = compare_savings(&baseline_spec(), 0.15, 0.25).unwrap_err();
    assert!(matches!(err, Error::InvalidComparison(_)));
}

#[test]
fn savings_comparison_offsets_labor_with_capital() {
    let report = compare_savings(&pin_output_path(&baseline_spec()).unwrap(), 0.15, 0.2).unwrap();
    assert!(report.all_hold(), "{:?}", report.verdicts);
    assert_eq!(report.path_lost_at, None);
    for d in &report.deltas {
        assert!(d.offset.abs() <= 1e-9 * 100.0);
        assert!(d.l <= 1e-12);
    }
}

#[test]
fn higher_savings_exhausts_labor_before_the_horizon() {
    let report = compare_savings(&pin_output_path(&baseline_spec()).unwrap(), 0.15, 0.25).unwrap();
    assert_eq!(report.path_lost_at, Some(82));
    assert!(report.all_hold());
    assert_eq!(report.high.get(82).unwrap().regime, Regime::PostLabor);
}

#[test]
fn productivity_comparison_reports_condition_periods() {
    let report = compare_productivity(&baseline_spec(), 1.0, 1.1).unwrap();
    for claim in [
        "r ratio = (B ratio)^(1-alpha)",
        "K equal",
        "r higher",
        "K2 larger",
        "L lower",
    ] {
        assert!(report.verdict(claim).unwrap().holds, "{claim}");
    }
    // Where automation capital is still small, a higher B cannot raise the
    // transfer: the condition and the G ordering fail together.
    let g = report.verdict("G higher").unwrap();
    for t in &g.failing_periods {
        assert!(!report.transfer_condition_periods.contains(t), "T={t}");
    }
}
