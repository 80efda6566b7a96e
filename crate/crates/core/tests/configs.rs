//! Scenario files: shipped presets, validation messages and hashing.

use std::fs;
use std::path::{Path, PathBuf};

use sa_growth::io::config::calibration_overlay;
use sa_growth::io::{load_config, load_with_overlay, parse_config, verify_tables, GoldenTable, TableId};
use sa_growth::presets::{baseline_spec, first_phase_spec, road_spec_from_baseline, Road};
use sa_growth::scenario::run_scenario;
use sa_growth::Error;

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

fn issues(text: &str) -> Vec<String> {
    match parse_config(text, Path::new(".")) {
        Err(Error::Config(list)) => list.into_iter().map(|i| format!("{}: {}", i.path, i.message)).collect(),
        Err(e) => panic!("expected config issues, got {e}"),
        Ok(_) => panic!("expected config issues"),
    }
}

#[test]
fn shipped_configs_match_presets() {
    let cases = [
        ("baseline.cfg", baseline_spec()),
        ("table2.cfg", first_phase_spec()),
        ("slow_road.cfg", road_spec_from_baseline(Road::Slow).unwrap()),
        ("fast_road.cfg", road_spec_from_baseline(Road::Fast).unwrap()),
    ];
    for (name, preset) in cases {
        let cfg = load_config(&config(name)).unwrap();
        let a = run_scenario(&cfg.scenario).unwrap();
        let b = run_scenario(&preset).unwrap();
        assert_eq!(a.len(), b.len(), "{name}");
        for (x, y) in a.snapshots.iter().zip(&b.snapshots) {
            assert!((x.y - y.y).abs() <= 1e-9 * y.y, "{name} T={}", x.period);
            assert!((x.l - y.l).abs() <= 1e-9, "{name} T={}", x.period);
        }
    }
}

#[test]
fn faster_depreciation_breaks_table_two_capital() {
    let text = fs::read_to_string(config("table2.cfg"))
        .unwrap()
        .replace("theta = 0.02", "theta = 0.021");
    let cfg = parse_config(&text, &config("")).unwrap();
    let traj = run_scenario(&cfg.scenario).unwrap();
    let rep = verify_tables(&traj, &GoldenTable::load(TableId::T2), &Default::default()).unwrap();
    assert!(rep.mismatches().any(|c| c.period == 10 && c.column.header() == "K"));
}

#[test]
fn empty_file_lists_every_missing_section() {
    let found = issues("");
    for key in ["params", "scenario"] {
        assert!(found.iter().any(|i| i.starts_with(key)), "{key} missing from {found:?}");
    }
}

const BASE: &str = r#"
[params]
s = 0.15
theta = 0.02
g_a = 0.01
g_b = 0.015
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
"#;

#[test]
fn errors_name_the_offending_key() {
    let bad_s = BASE.replace("s = 0.15", "s = 1.5")
        + "[[scenario.phases]]\nstart = 0\nend = 10\nclosure = { kind = \"pinned_l\", constant = 75 }\n";
    assert!(issues(&bad_s).iter().any(|i| i.starts_with("params.s")));

    let overlap = BASE.to_string()
        + "[[scenario.phases]]\nstart = 0\nend = 5\nclosure = { kind = \"pinned_l\", constant = 75 }\n"
        + "[[scenario.phases]]\nstart = 4\nend = 10\nclosure = { kind = \"pinned_l\", constant = 70 }\n";
    assert!(issues(&overlap)
        .iter()
        .any(|i| i.starts_with("scenario.phases[1].start")));

    let typo = BASE.to_string()
        + "[[scenario.phases]]\nstart = 0\nend = 10\nclosure = { kind = \"pinned_l\", constnt = 75 }\n";
    assert!(issues(&typo).iter().any(|i| i.contains("constnt")));

    let two_schedules = BASE.to_string()
        + "[[scenario.phases]]\nstart = 0\nend = 10\nclosure = { kind = \"pinned_l\", constant = 75, values = { 0 = 75 } }\n";
    assert!(!issues(&two_schedules).is_empty());
}

#[test]
fn hash_tracks_model_settings_only() {
    let phase = "[[scenario.phases]]\nstart = 0\nend = 10\nclosure = { kind = \"pinned_l\", constant = 75 }\n";
    let a = parse_config(&(BASE.to_string() + phase), Path::new(".")).unwrap();
    let b = parse_config(
        &(BASE.to_string() + phase + "[output]\ndir = \"elsewhere\"\n"),
        Path::new("."),
    )
    .unwrap();
    let c = parse_config(&(BASE.replace("g_q = 0.005", "g_q = 0.006") + phase), Path::new(".")).unwrap();
    assert_eq!(a.hash(), b.hash());
    assert_ne!(a.hash(), c.hash());
    assert_eq!(a.hash().len(), 64);
}

#[test]
fn calibration_overlay_replaces_model_tables() {
    let dir = tempfile::tempdir().unwrap();
    let base = load_config(&config("table2.cfg")).unwrap();
    let mut cal = base.calibration.unwrap();
    cal.delta = 30.0;
    let overlay = dir.path().join("overlay.cfg");
    fs::write(&overlay, calibration_overlay(&cal, &base.rates)).unwrap();
    let merged = load_with_overlay(&config("table2.cfg"), Some(&overlay)).unwrap();
    assert_eq!(merged.scenario.params.delta, 30.0);
    assert_eq!(merged.scenario.phases, base.scenario.phases);
}

#[test]
fn missing_reference_is_reported() {
    let text = BASE.to_string()
        + "[[scenario.phases]]\nstart = 0\nend = 10\nclosure = { kind = \"pinned_y\", from_config = \"nope.cfg\" }\n";
    assert!(parse_config(&text, Path::new("/nonexistent")).is_err());
}
