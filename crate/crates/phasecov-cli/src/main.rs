//! Command-line front end for phase-covariant qubit channels: validate
//! parameters, evaluate the closed-form performance measures, reproduce the
//! trajectory studies, inspect entanglement, and audit every closed form
//! against the brute-force oracle.
//!
//! Exit codes: 0 success, 2 channel outside the CP region, 3 oracle audit
//! failure, 64 usage error.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use phasecov_core::{
    concurrence_closed, concurrence_spectral, concurrence_spectrum_closed,
    entanglement_of_formation, evolve_one_sided, linspace, measure_report, nu_inf_bloch, run_audit,
    run_trajectory, sample_cp_channels, Branch, ChannelParams, Error, FamilyKind, GridSpec, Sign,
    TrajectoryFamily, TrajectorySample, TwoQubitXState,
};

const EXIT_CP_INVALID: u8 = 2;
const EXIT_AUDIT_FAILED: u8 = 3;
const EXIT_USAGE: u8 = 64;

/// Largest closed-form-vs-oracle gap the audit gate tolerates.
const AUDIT_GATE: f64 = 1e-6;

const TRAJECTORY_HEADER: &str = "t,p,f_min,f_max,nu2_squared,nu_inf_paper,nu_inf_bloch,\
                                 concurrence,eof,f_min_paper,f_max_paper,nu2_squared_paper,\
                                 nu_inf_trajectory_paper";

#[derive(Parser)]
#[command(
    name = "phasecov",
    version,
    about = "Phase-covariant qubit channels: closed-form performance measures, \
             trajectory studies, and a brute-force oracle audit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the complete-positivity conditions and report channel basics
    Validate(ChannelArgs),
    /// Evaluate every closed-form measure for one channel
    Measure(RecordArgs),
    /// Sweep a dynamical family over time and mixing weights
    Trajectory(TrajectoryArgs),
    /// Concurrence spectrum and entanglement of formation for one channel
    Entanglement(RecordArgs),
    /// Audit the closed forms against the brute-force oracle on seeded
    /// random channels
    OracleCheck(OracleArgs),
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct ChannelArgs {
    /// Equatorial eigenvalue lambda1
    lambda1: f64,
    /// Polar eigenvalue lambda3
    lambda3: f64,
    /// Non-unital shift lambda_star
    lambda_star: f64,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct RecordArgs {
    /// Equatorial eigenvalue lambda1
    lambda1: f64,
    /// Polar eigenvalue lambda3
    lambda3: f64,
    /// Non-unital shift lambda_star
    lambda_star: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TrajectoryArgs {
    /// Dynamical family: "exp" (decaying) or "osc" (oscillating)
    #[arg(value_parser = parse_family)]
    family: FamilyKind,
    /// Comma-separated mixing weights in [0, 1]
    #[arg(long, value_parser = parse_p_list, default_value = "0,0.3,0.5,0.7,1")]
    p: PList,
    /// Time grid start:stop:count (inclusive endpoints); defaults to
    /// 0:4:401 for exp and 0:6.283185307179586:629 for osc
    #[arg(long, value_parser = parse_time_grid)]
    t: Option<TimeGrid>,
    /// Sign of the non-unital shift
    #[arg(long, value_parser = parse_sign, default_value = "+", allow_hyphen_values = true)]
    sign: Sign,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    /// Number of random CP-valid channels to audit
    #[arg(value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,
    /// Seed for the rejection sampler
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Search grid nPolar,nAzimuth,refinement
    #[arg(long, value_parser = parse_grid)]
    grid: Option<GridSpec>,
    /// Write to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone)]
struct PList(Vec<f64>);

#[derive(Clone, Copy)]
struct TimeGrid {
    start: f64,
    stop: f64,
    count: usize,
}

fn parse_family(s: &str) -> Result<FamilyKind, String> {
    FamilyKind::from_str(s)
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    Sign::from_str(s)
}

fn parse_p_list(s: &str) -> Result<PList, String> {
    let mut values = Vec::new();
    for piece in s.split(',') {
        let p: f64 = piece
            .trim()
            .parse()
            .map_err(|_| format!("not a number: {piece:?}"))?;
        if !(0.0..=1.0).contains(&p) {
            return Err(format!("mixing weight {p} is outside [0, 1]"));
        }
        values.push(p);
    }
    if values.is_empty() {
        return Err("expected at least one mixing weight".into());
    }
    Ok(PList(values))
}

fn parse_time_grid(s: &str) -> Result<TimeGrid, String> {
    let pieces: Vec<&str> = s.split(':').collect();
    let [start, stop, count] = pieces.as_slice() else {
        return Err(format!("expected start:stop:count, got {s:?}"));
    };
    let start: f64 = start.parse().map_err(|_| format!("bad start {start:?}"))?;
    let stop: f64 = stop.parse().map_err(|_| format!("bad stop {stop:?}"))?;
    let count: usize = count.parse().map_err(|_| format!("bad count {count:?}"))?;
    if !start.is_finite() || !stop.is_finite() {
        return Err("grid endpoints must be finite".into());
    }
    if start < 0.0 {
        return Err("times must be nonnegative".into());
    }
    if stop < start {
        return Err("stop must not precede start".into());
    }
    if count == 0 {
        return Err("count must be at least 1".into());
    }
    Ok(TimeGrid { start, stop, count })
}

fn parse_grid(s: &str) -> Result<GridSpec, String> {
    let pieces: Vec<&str> = s.split(',').collect();
    let [polar, azimuth, refinement] = pieces.as_slice() else {
        return Err(format!("expected nPolar,nAzimuth,refinement, got {s:?}"));
    };
    let n_polar: usize = polar.parse().map_err(|_| format!("bad value {polar:?}"))?;
    let n_azimuth: usize = azimuth
        .parse()
        .map_err(|_| format!("bad value {azimuth:?}"))?;
    let refinement: usize = refinement
        .parse()
        .map_err(|_| format!("bad value {refinement:?}"))?;
    if n_polar < 2 {
        return Err("nPolar must be at least 2".into());
    }
    if n_azimuth < 1 {
        return Err("nAzimuth must be at least 1".into());
    }
    Ok(GridSpec {
        n_polar,
        n_azimuth,
        refinement,
    })
}

/// 17 significant digits, `.` decimal separator, locale-independent.
fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

fn branch_tag(branch: Branch) -> &'static str {
    match branch {
        Branch::Interior => "interior",
        Branch::Endpoint => "endpoint",
    }
}

fn write_output(out: Option<&PathBuf>, content: &str) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            use std::io::Write as _;
            match std::io::stdout().write_all(content.as_bytes()) {
                // A closed pipe (e.g. piping into `head`) is not an error.
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                other => other.map_err(|e| format!("cannot write to stdout: {e}")),
            }
        }
    }
}

/// Honors `PHASECOV_THREADS` (0 or unset = automatic) for the oracle's
/// parallel audits.
fn configure_threads() {
    let Ok(raw) = std::env::var("PHASECOV_THREADS") else {
        return;
    };
    match raw.parse::<usize>() {
        Ok(0) => {}
        Ok(n) => {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
        Err(_) => {
            eprintln!("warning: ignoring malformed PHASECOV_THREADS={raw:?}");
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    configure_threads();

    let result = match &cli.command {
        Command::Validate(args) => cmd_validate(args),
        Command::Measure(args) => cmd_measure(args),
        Command::Trajectory(args) => cmd_trajectory(args),
        Command::Entanglement(args) => cmd_entanglement(args),
        Command::OracleCheck(args) => cmd_oracle_check(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}

fn cmd_validate(args: &ChannelArgs) -> Result<u8, String> {
    let params = ChannelParams::new(args.lambda1, args.lambda3, args.lambda_star);
    let report = params.validate_cp();
    let mut text = String::new();
    let _ = writeln!(
        text,
        "channel ({}, {}, {})",
        params.lambda1, params.lambda3, params.lambda_star
    );
    let _ = writeln!(
        text,
        "cp condition A slack (1 - |lambda_star| - |lambda3|): {}",
        report.slack_a
    );
    let _ = writeln!(
        text,
        "cp condition B slack ((1 + lambda3)^2 - 4 lambda1^2 - lambda_star^2): {}",
        report.slack_b
    );
    let _ = writeln!(text, "cp valid: {}", report.valid);
    let _ = writeln!(text, "non-unitality degree: {}", params.non_unitality().0);
    match params.invariant_state() {
        Ok(state) => {
            let _ = writeln!(text, "invariant state x3: {}", state.bloch().x3);
        }
        Err(Error::DegenerateFixedPoint) => {
            let _ = writeln!(
                text,
                "invariant state x3: degenerate (every polar-axis state is fixed)"
            );
        }
        Err(_) => {
            let _ = writeln!(text, "invariant state x3: undefined (not a channel)");
        }
    }
    write_output(None, &text)?;
    Ok(if report.valid { 0 } else { EXIT_CP_INVALID })
}

fn cmd_measure(args: &RecordArgs) -> Result<u8, String> {
    let params = ChannelParams::new(args.lambda1, args.lambda3, args.lambda_star);
    if let Err(err) = params.require_cp() {
        eprintln!("error: {err}");
        return Ok(EXIT_CP_INVALID);
    }
    let report = measure_report(&params).map_err(|e| e.to_string())?;
    let bloch = nu_inf_bloch(&params).map_err(|e| e.to_string())?;

    let content = match args.format {
        Format::Csv => {
            let mut text = String::from(
                "lambda1,lambda3,lambda_star,\
                 f_min,f_min_x3,f_min_branch,\
                 f_max,f_max_x3,f_max_branch,\
                 nu2_squared,nu2_squared_x3,nu2_squared_branch,\
                 nu_inf_paper,nu_inf_bloch,nu_inf_bloch_x3,nu_inf_bloch_branch,\
                 concurrence,eof\n",
            );
            let _ = writeln!(
                text,
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                fmt(params.lambda1),
                fmt(params.lambda3),
                fmt(params.lambda_star),
                fmt(report.f_min.value),
                fmt(report.f_min.family.x3),
                branch_tag(report.f_min.branch),
                fmt(report.f_max.value),
                fmt(report.f_max.family.x3),
                branch_tag(report.f_max.branch),
                fmt(report.nu2_squared.value),
                fmt(report.nu2_squared.family.x3),
                branch_tag(report.nu2_squared.branch),
                fmt(report.nu_inf_paper),
                fmt(report.nu_inf_bloch),
                fmt(bloch.family.x3),
                branch_tag(bloch.branch),
                fmt(report.concurrence),
                fmt(report.eof),
            );
            text
        }
        Format::Json => {
            let record = serde_json::json!({
                "lambda1": params.lambda1,
                "lambda3": params.lambda3,
                "lambda_star": params.lambda_star,
                "f_min": report.f_min.value,
                "f_min_x3": report.f_min.family.x3,
                "f_min_branch": branch_tag(report.f_min.branch),
                "f_max": report.f_max.value,
                "f_max_x3": report.f_max.family.x3,
                "f_max_branch": branch_tag(report.f_max.branch),
                "nu2_squared": report.nu2_squared.value,
                "nu2_squared_x3": report.nu2_squared.family.x3,
                "nu2_squared_branch": branch_tag(report.nu2_squared.branch),
                "nu_inf_paper": report.nu_inf_paper,
                "nu_inf_bloch": report.nu_inf_bloch,
                "nu_inf_bloch_x3": bloch.family.x3,
                "nu_inf_bloch_branch": branch_tag(bloch.branch),
                "concurrence": report.concurrence,
                "eof": report.eof,
            });
            let mut text = serde_json::to_string_pretty(&record).map_err(|e| e.to_string())?;
            text.push('\n');
            text
        }
    };
    write_output(args.out.as_ref(), &content)?;
    Ok(0)
}

fn cmd_entanglement(args: &RecordArgs) -> Result<u8, String> {
    let params = ChannelParams::new(args.lambda1, args.lambda3, args.lambda_star);
    if let Err(err) = params.require_cp() {
        eprintln!("error: {err}");
        return Ok(EXIT_CP_INVALID);
    }
    let closed = concurrence_closed(&params).map_err(|e| e.to_string())?;
    let evolved = evolve_one_sided(&params, &TwoQubitXState::maximally_entangled())
        .map_err(|e| e.to_string())?;
    let spectral = concurrence_spectral(&evolved).map_err(|e| e.to_string())?;
    let eof = entanglement_of_formation(closed).map_err(|e| e.to_string())?;
    let spectrum = concurrence_spectrum_closed(&params).map_err(|e| e.to_string())?;

    let content = match args.format {
        Format::Csv => {
            let mut text = String::from(
                "lambda1,lambda3,lambda_star,concurrence_closed,concurrence_spectral,eof,\
                 r_plus,r_minus,r_degenerate,labels_sorted\n",
            );
            let _ = writeln!(
                text,
                "{},{},{},{},{},{},{},{},{},{}",
                fmt(params.lambda1),
                fmt(params.lambda3),
                fmt(params.lambda_star),
                fmt(closed),
                fmt(spectral),
                fmt(eof),
                fmt(spectrum.r_plus),
                fmt(spectrum.r_minus),
                fmt(spectrum.r_degenerate),
                spectrum.labels_are_sorted(),
            );
            text
        }
        Format::Json => {
            let record = serde_json::json!({
                "lambda1": params.lambda1,
                "lambda3": params.lambda3,
                "lambda_star": params.lambda_star,
                "concurrence_closed": closed,
                "concurrence_spectral": spectral,
                "eof": eof,
                "r_plus": spectrum.r_plus,
                "r_minus": spectrum.r_minus,
                "r_degenerate": spectrum.r_degenerate,
                "labels_sorted": spectrum.labels_are_sorted(),
            });
            let mut text = serde_json::to_string_pretty(&record).map_err(|e| e.to_string())?;
            text.push('\n');
            text
        }
    };
    write_output(args.out.as_ref(), &content)?;
    Ok(0)
}

fn cmd_trajectory(args: &TrajectoryArgs) -> Result<u8, String> {
    let grid = args.t.unwrap_or(match args.family {
        FamilyKind::Exp => TimeGrid {
            start: 0.0,
            stop: 4.0,
            count: 401,
        },
        FamilyKind::Osc => TimeGrid {
            start: 0.0,
            stop: std::f64::consts::TAU,
            count: 629,
        },
    });
    let times = linspace(grid.start, grid.stop, grid.count);

    let mut rows: Vec<TrajectorySample> = Vec::with_capacity(args.p.0.len() * times.len());
    for &p in &args.p.0 {
        let family = TrajectoryFamily::new(args.family, p, args.sign).map_err(|e| e.to_string())?;
        let samples = run_trajectory(&family, &times).map_err(|e| e.to_string())?;
        for flag in phasecov_core::consistency_flags(&samples) {
            eprintln!("warning: {flag}");
        }
        rows.extend(samples);
    }

    let content = match args.format {
        Format::Csv => {
            let mut text = String::with_capacity(rows.len() * 320);
            text.push_str(TRAJECTORY_HEADER);
            text.push('\n');
            for row in &rows {
                let _ = writeln!(
                    text,
                    "{},{},{},{},{},{},{},{},{},{},{},{},{}",
                    fmt(row.t),
                    fmt(row.p),
                    fmt(row.f_min),
                    fmt(row.f_max),
                    fmt(row.nu2_squared),
                    fmt(row.nu_inf_paper),
                    fmt(row.nu_inf_bloch),
                    fmt(row.concurrence),
                    fmt(row.eof),
                    fmt(row.f_min_paper),
                    fmt(row.f_max_paper),
                    fmt(row.nu2_squared_paper),
                    fmt(row.nu_inf_trajectory_paper),
                );
            }
            text
        }
        Format::Json => {
            let mut text = serde_json::to_string_pretty(&rows).map_err(|e| e.to_string())?;
            text.push('\n');
            text
        }
    };
    write_output(args.out.as_ref(), &content)?;
    Ok(0)
}

fn cmd_oracle_check(args: &OracleArgs) -> Result<u8, String> {
    let grid = args.grid.unwrap_or_default();
    let channels = sample_cp_channels(args.samples as usize, args.seed);
    let report = match run_audit(&channels, &grid) {
        Ok(report) => report,
        Err(err) => {
            eprintln!("error: audit aborted: {err}");
            return Ok(EXIT_AUDIT_FAILED);
        }
    };

    let gated = [
        ("f_min", report.max_f_min_gap),
        ("f_max", report.max_f_max_gap),
        ("nu2_squared", report.max_nu2_gap),
        ("nu_inf (bloch)", report.max_nu_inf_gap),
        (
            "nu_inf (three-term, exactness regime)",
            report.max_nu_inf_paper_regime_gap,
        ),
        ("concurrence closed vs spectral", report.max_concurrence_gap),
        ("fixed point iterated vs closed", report.max_fixed_point_gap),
    ];
    let pass = gated.iter().all(|(_, gap)| *gap < AUDIT_GATE);

    let mut text = String::new();
    let _ = writeln!(
        text,
        "audited {} channels (seed {}, grid {}x{} with {} refinement passes)",
        report.channels, args.seed, grid.n_polar, grid.n_azimuth, grid.refinement
    );
    for (label, gap) in gated {
        let _ = writeln!(text, "max |closed - oracle| for {label}: {gap:.3e}");
    }
    let _ = writeln!(
        text,
        "diagnostic: three-term nu_inf max undercount: {:.3e} \
         ({} of {} samples exceed 1e-3)",
        report.max_nu_inf_paper_gap, report.nu_inf_paper_large_gap_count, report.channels
    );
    let _ = writeln!(
        text,
        "diagnostic: labeled concurrence-spectrum ordering violations: {} of {}",
        report.spectrum_ordering_violations, report.channels
    );
    let _ = writeln!(
        text,
        "diagnostic: fixed-point iteration checked on {} of {} samples",
        report.fixed_point_checked, report.channels
    );
    let _ = writeln!(
        text,
        "gate (every audited gap < {AUDIT_GATE:e}): {}",
        if pass { "PASS" } else { "FAIL" }
    );
    write_output(args.out.as_ref(), &text)?;
    Ok(if pass { 0 } else { EXIT_AUDIT_FAILED })
}
