//! Published-table fixtures and the cell-by-cell verifier.

use sa_growth::io::golden::parse_printed;
use sa_growth::io::{verify_tables, Column, GoldenTable, TableId, VerifyOptions};
use sa_growth::presets::{baseline_spec, first_phase_spec};
use sa_growth::scenario::run_scenario;
use sa_growth::Error;

#[test]
fn fixtures_parse_with_expected_rows() {
    let periods = |id| GoldenTable::load(id).periods();
    assert_eq!(periods(TableId::T1), (0..=100).step_by(10).collect::<Vec<_>>());
    assert_eq!(periods(TableId::T2), vec![0, 5, 10]);
    assert_eq!(periods(TableId::T3a), vec![20, 30, 40, 50, 51, 60, 68]);
    assert_eq!(periods(TableId::T3b), vec![20, 30, 40, 50, 51]);
}

#[test]
fn printed_numbers_keep_their_precision() {
    assert_eq!(parse_printed("5,59%").unwrap(), (0.0559, 4));
    assert_eq!(parse_printed("1312").unwrap(), (1312.0, 0));
    assert_eq!(parse_printed("0,386").unwrap(), (0.386, 3));
    assert!(parse_printed("abc").is_err());
}

#[test]
fn table_one_start_row_matches_exactly() {
    let traj = run_scenario(&baseline_spec()).unwrap();
    let rep = verify_tables(&traj, &GoldenTable::load(TableId::T1), &VerifyOptions::default()).unwrap();
    let row0: Vec<_> = rep.checks.iter().filter(|c| c.period == 0).collect();
    assert!(row0.len() >= 10);
    assert!(row0.iter().all(|c| c.ok), "{:?}", row0);
    assert!(row0.iter().any(|c| c.column == Column::GMs));
}

#[test]
fn table_one_output_and_prices_track_the_published_path() {
    // Prices follow from technology alone, so every printed w and r matches.
    let traj = run_scenario(&baseline_spec()).unwrap();
    let rep = verify_tables(&traj, &GoldenTable::load(TableId::T1), &VerifyOptions::default())
        .unwrap()
        .only(&[Column::W, Column::R, Column::L]);
    assert!(rep.is_ok(), "{:?}", rep.mismatches().collect::<Vec<_>>());
}

#[test]
fn table_two_mismatches_are_the_known_cells() {
    let traj = run_scenario(&first_phase_spec()).unwrap();
    let rep = verify_tables(&traj, &GoldenTable::load(TableId::T2), &VerifyOptions::default()).unwrap();
    let bad: Vec<_> = rep.mismatches().map(|c| (c.period, c.column)).collect();
    assert_eq!(
        bad,
        vec![
            (5, Column::K1),
            (5, Column::K2),
            (10, Column::K1),
            (10, Column::K2),
            (10, Column::GCap),
            (10, Column::Tax)
        ]
    );
}

#[test]
fn short_run_is_a_coverage_error() {
    let mut spec = first_phase_spec();
    spec.horizon = 7;
    spec.phases[0].end = 7;
    let traj = run_scenario(&spec).unwrap();
    let err = verify_tables(&traj, &GoldenTable::load(TableId::T2), &VerifyOptions::default()).unwrap_err();
    assert!(matches!(err, Error::Coverage { .. }), "{err}");
}

#[test]
fn table_ids_round_trip() {
    for id in [TableId::T1, TableId::T2, TableId::T3a, TableId::T3b] {
        assert_eq!(id.to_string().parse::<TableId>().unwrap(), id);
    }
    assert!("T4".parse::<TableId>().is_err());
}
