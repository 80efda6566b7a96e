//! Command-line front end.
//!
//! Exit codes: 0 ok, 1 usage or configuration error, 2 verification
//! mismatch, 3 solver infeasibility.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use sa_growth::calibration::{calibrate, CalibrationTargets};
use sa_growth::io::config::{calibration_overlay, Rates};
use sa_growth::io::{
    emit_outputs, load_with_overlay, verify_tables, GoldenTable, Manifest, RunConfig, TableId, VerificationReport,
    VerifyOptions,
};
use sa_growth::presets::{self, Road};
use sa_growth::scenario::{evaluate_criteria, laffer_path, run_scenario, CriteriaReport, Trajectory};
use sa_growth::statics::{compare_productivity, compare_savings, pin_output_path, ComparisonReport};
use sa_growth::sweep::{sweep, sweep_csv, SweepAxis};
use sa_growth::Error;

#[derive(Parser)]
#[command(
    name = "sa-growth",
    version,
    about = "Growth model with automation capital and basic-income financing"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Calibrate the starting economy and optionally write a parameter overlay.
    Calibrate(CalibrateArgs),
    /// Run a scenario config and write its outputs.
    Run(RunArgs),
    /// Compare runs with the published tables.
    VerifyTables(VerifyArgs),
    /// Run a parameter grid and write a CSV summary.
    Sweep(SweepArgs),
    /// Paired-economy comparison (savings or automation productivity).
    Compare(CompareArgs),
    /// Per-period transfer-maximizing labor next to the realized path.
    Laffer(LafferArgs),
}

#[derive(Args)]
struct CalibrateArgs {
    #[arg(long, default_value_t = 100.0)]
    y0: f64,
    #[arg(long, default_value_t = 500.0)]
    k0: f64,
    #[arg(long, default_value_t = 75.0)]
    l0: f64,
    #[arg(long, default_value_t = 100.0)]
    n: f64,
    #[arg(long, default_value_t = 0.5)]
    t0: f64,
    #[arg(long, default_value_t = 0.5)]
    g0: f64,
    #[arg(long, default_value_t = 1.0)]
    q0: f64,
    #[arg(long, default_value_t = 0.25)]
    alpha: f64,
    #[arg(long, default_value_t = 0.15)]
    s: f64,
    #[arg(long, default_value_t = 0.02)]
    theta: f64,
    #[arg(long, default_value_t = 0.01)]
    g_a: f64,
    #[arg(long, default_value_t = 0.015)]
    g_b: f64,
    #[arg(long, default_value_t = 0.005)]
    g_q: f64,
    /// Write `[params]` and `[initial]` tables usable with `run --params`.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    config: PathBuf,
    /// Overlay whose model tables replace those of the config.
    #[arg(long)]
    params: Option<PathBuf>,
    /// Output directory (overrides `[output].dir`).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    charts: bool,
    #[arg(long)]
    no_csv: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Config to run; without it every shipped preset is checked.
    config: Option<PathBuf>,
    #[arg(long)]
    table: Option<TableId>,
    /// Accept G and t within this absolute tolerance.
    #[arg(long)]
    transfer_tolerance: Option<f64>,
    /// Print every cell, not only mismatches.
    #[arg(long)]
    all: bool,
}

#[derive(Args)]
struct SweepArgs {
    config: PathBuf,
    /// `key=v1,v2,...` or `key=start:stop:count`; repeat for more axes.
    #[arg(long = "grid", required = true)]
    axes: Vec<SweepAxis>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    config: PathBuf,
    /// Savings rates `LOW,HIGH`.
    #[arg(long, conflicts_with = "productivity")]
    savings: Option<String>,
    /// Automation productivity scale factors `LOW,HIGH`.
    #[arg(long)]
    productivity: Option<String>,
    /// Replace the closures with the config's own output path first.
    #[arg(long)]
    pin_output: bool,
    /// Two-economy CSV destination.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct LafferArgs {
    config: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            _ if e.is_infeasibility() => 3,
            Error::Coverage { .. } => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn mismatch(message: String) -> Failure {
    Failure { code: 2, message }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

type CliResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Calibrate(a) => cmd_calibrate(a),
        Command::Run(a) => cmd_run(a),
        Command::VerifyTables(a) => cmd_verify(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Compare(a) => cmd_compare(a),
        Command::Laffer(a) => cmd_laffer(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn write_or_print(path: Option<&Path>, text: &str) -> CliResult {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_calibrate(a: CalibrateArgs) -> CliResult {
    let targets = CalibrationTargets {
        y0: a.y0,
        k0: a.k0,
        l0: a.l0,
        n: a.n,
        t0: a.t0,
        g0: a.g0,
        q0: a.q0,
        alpha: a.alpha,
    };
    let cal = calibrate(&targets)?;
    println!("A0    = {} ({:.3})", cal.a0, cal.a0);
    println!("B0    = {} ({:.3})", cal.b0, cal.b0);
    println!("delta = {} ({:.3})", cal.delta, cal.delta);
    println!("r0    = {:.2}%", cal.r0 * 100.0);
    println!("w0    = {:.2}", cal.w0);
    println!("labor supply elasticity = {}", cal.supply_elasticity());
    if cal.degenerate {
        println!("note: full employment at the start; delta is unidentified and set to 0");
    }
    if let Some(out) = a.out {
        let rates = Rates {
            s: a.s,
            theta: a.theta,
            g_a: a.g_a,
            g_b: a.g_b,
            g_q: a.g_q,
        };
        write_or_print(Some(&out), &calibration_overlay(&cal, &rates))?;
        println!("wrote {}", out.display());
    }
    Ok(())
}

fn print_criteria(report: &CriteriaReport) {
    let w = report.window;
    let flags: Vec<String> = report
        .verdicts
        .labeled()
        .iter()
        .map(|(n, b)| format!("{n}={}", if *b { "yes" } else { "no" }))
        .collect();
    println!("criteria over T={}..{}: {}", w.from, w.to, flags.join(" "));
    let opt = |p: Option<u32>| p.map_or("none".to_string(), |p| format!("T={p}"));
    println!(
        "weak abundance: {}; post-labor: {}; K/Y gap to s/(g+theta): {:.4}",
        opt(report.weak_abundance_period),
        opt(report.post_labor_period),
        report.steady_state_gap
    );
}

fn print_verification(report: &VerificationReport, all: bool) {
    let bad = report.mismatches().count();
    println!(
        "{}: {} cells checked, {} mismatches",
        report.table,
        report.checks.len(),
        bad
    );
    for c in &report.checks {
        if all || !c.ok {
            println!("  {} {c}", if c.ok { "ok  " } else { "FAIL" });
        }
    }
}

fn cmd_run(a: RunArgs) -> CliResult {
    let cfg = load_with_overlay(&a.config, a.params.as_deref())?;
    let traj = run_scenario(&cfg.scenario)?;
    let criteria = evaluate_criteria(&traj, cfg.criteria.window, &cfg.criteria.options).ok();
    let last = traj.snapshots.last().expect("non-empty run");
    println!(
        "ran T={}..{}: Y={:.2} L={:.2} G={:.3} t={:.3}",
        traj.first_period().unwrap_or(0),
        last.period,
        last.y,
        last.l,
        last.cap.g,
        last.cap.tax
    );
    if let Some(c) = &criteria {
        print_criteria(c);
    }
    let mut flags = cfg.output.flags;
    flags.charts |= a.charts;
    flags.csv &= !a.no_csv;
    let dir = a.out.or_else(|| cfg.output.dir.clone());
    if let Some(dir) = dir {
        let manifest = Manifest::new(cfg.hash(), traj.clone(), criteria);
        for p in emit_outputs(&dir, manifest, flags)? {
            println!("wrote {}", p.display());
        }
    }
    if let Some(v) = cfg.verify {
        let report = verify_tables(&traj, &GoldenTable::load(v.table), &v.options)?;
        print_verification(&report, false);
        if !report.is_ok() {
            return Err(mismatch(format!("{} does not match the run", v.table)));
        }
    }
    Ok(())
}

fn cmd_verify(a: VerifyArgs) -> CliResult {
    let opts = |default: VerifyOptions| match a.transfer_tolerance {
        Some(t) => VerifyOptions {
            transfer_tolerance: Some(t),
        },
        None => default,
    };
    let mut failed = Vec::new();
    let mut check = |id: TableId, cfg_traj: &Trajectory, o: VerifyOptions| -> CliResult {
        let report = verify_tables(cfg_traj, &GoldenTable::load(id), &o)?;
        print_verification(&report, a.all);
        if !report.is_ok() {
            failed.push(id);
        }
        Ok(())
    };
    if let Some(path) = &a.config {
        let cfg: RunConfig = load_with_overlay(path, None)?;
        let (id, o) = match (a.table, cfg.verify) {
            (Some(id), v) => (id, v.map(|v| v.options).unwrap_or_default()),
            (None, Some(v)) => (v.table, v.options),
            (None, None) => return Err(usage("no table given: pass --table or add a [verify] section")),
        };
        let traj = run_scenario(&cfg.scenario)?;
        check(id, &traj, opts(o))?;
    } else {
        let baseline = run_scenario(&presets::baseline_spec())?;
        let path = presets::output_path(&baseline);
        let runs = [
            (TableId::T1, baseline, VerifyOptions::loose_transfers()),
            (
                TableId::T2,
                run_scenario(&presets::first_phase_spec())?,
                VerifyOptions::default(),
            ),
            (
                TableId::T3a,
                run_scenario(&presets::road_spec(Road::Slow, &path))?,
                VerifyOptions::loose_transfers(),
            ),
            (
                TableId::T3b,
                run_scenario(&presets::road_spec(Road::Fast, &path))?,
                VerifyOptions::loose_transfers(),
            ),
        ];
        for (id, traj, o) in runs {
            if a.table.is_none_or(|t| t == id) {
                check(id, &traj, opts(o))?;
            }
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        let ids: Vec<_> = failed.iter().map(TableId::as_str).collect();
        Err(mismatch(format!("mismatches in {}", ids.join(", "))))
    }
}

fn cmd_sweep(a: SweepArgs) -> CliResult {
    let cfg = load_with_overlay(&a.config, None)?;
    let results = sweep(&cfg.scenario, &a.axes, cfg.criteria.window, &cfg.criteria.options);
    write_or_print(a.out.as_deref(), &sweep_csv(&a.axes, &results))?;
    let failed = results.iter().filter(|r| r.outcome.is_err()).count();
    eprintln!("{} grid points, {failed} failed", results.len());
    Ok(())
}

fn pair(s: &str) -> Result<(f64, f64), Failure> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts[..] {
        [a, b] => match (a.trim().parse(), b.trim().parse()) {
            (Ok(a), Ok(b)) => Ok((a, b)),
            _ => Err(usage(format!("`{s}` is not a pair of numbers"))),
        },
        _ => Err(usage(format!("expected LOW,HIGH, got `{s}`"))),
    }
}

fn comparison_csv(r: &ComparisonReport) -> String {
    let mut out = String::from(
        "T,Y_low,Y_high,K_low,K_high,K1_low,K1_high,K2_low,K2_high,L_low,L_high,G_low,G_high,t_low,t_high,cs_low,cs_high,offset,offset_with_A\n",
    );
    for ((a, b), d) in r.low.snapshots.iter().zip(&r.high.snapshots).zip(&r.deltas) {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            a.period,
            a.y,
            b.y,
            a.k,
            b.k,
            a.k1,
            b.k1,
            a.k2,
            b.k2,
            a.l,
            b.l,
            a.cap.g,
            b.cap.g,
            a.cap.tax,
            b.cap.tax,
            a.capital_share(),
            b.capital_share(),
            d.offset,
            d.offset_with_a
        );
    }
    out
}

fn cmd_compare(a: CompareArgs) -> CliResult {
    let cfg = load_with_overlay(&a.config, None)?;
    let report = match (&a.savings, &a.productivity) {
        (Some(s), None) => {
            let (lo, hi) = pair(s)?;
            let spec = if a.pin_output {
                pin_output_path(&cfg.scenario)?
            } else {
                cfg.scenario.clone()
            };
            compare_savings(&spec, lo, hi)?
        }
        (None, Some(p)) => {
            let (lo, hi) = pair(p)?;
            compare_productivity(&cfg.scenario, lo, hi)?
        }
        _ => return Err(usage("pass exactly one of --savings or --productivity")),
    };
    println!("{} vs {}", report.label_low, report.label_high);
    for v in &report.verdicts {
        let periods = if v.holds {
            String::new()
        } else {
            format!(" (fails at T={:?})", v.failing_periods)
        };
        println!("  {:<32} {}{periods}", v.claim, if v.holds { "holds" } else { "FAILS" });
    }
    if let Some(t) = report.path_lost_at {
        println!("  verdicts cover T < {t}: one economy cannot produce the shared output from T={t}");
    }
    if a.productivity.is_some() {
        println!(
            "  r K2 > alpha (n - L) w in {} of {} periods",
            report.transfer_condition_periods.len(),
            report.low.len()
        );
    }
    if let Some(out) = &a.out {
        write_or_print(Some(out), &comparison_csv(&report))?;
    }
    if report.all_hold() {
        Ok(())
    } else {
        Err(mismatch("some comparative claims fail".into()))
    }
}

fn cmd_laffer(a: LafferArgs) -> CliResult {
    let cfg = load_with_overlay(&a.config, None)?;
    let traj = run_scenario(&cfg.scenario)?;
    let points = laffer_path(&traj)?;
    let mut out = String::from("T,L,G_cap,L_peak,G_peak,G_gap\n");
    for p in points {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            p.period,
            p.labor,
            p.transfer,
            p.peak_labor,
            p.peak_transfer,
            p.peak_transfer - p.transfer
        );
    }
    write_or_print(a.out.as_deref(), &out)
}
