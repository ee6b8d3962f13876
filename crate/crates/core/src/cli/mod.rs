//! Command-line front end.
//!
//! Subcommands:
//!
//! - `trace`: sample an evolution, export it as CSV or JSON with a summary
//!   block and a run manifest;
//! - `solve-b`: invert the quasienergy splitting for a commensurate ratio;
//! - `verify`: run the library's property sweeps deterministically;
//! - `optics`: print retarder settings for a field configuration, or scan
//!   the commensurate ratio against the interferometer bright port.
//!
//! Exit codes: 0 on success, 1 for usage errors, 2 for numerical or domain
//! failures. Output bytes depend only on flags and seed: floats are printed
//! with exactly twelve significant digits and `\n` line endings.

mod fmt;
mod output;
mod verify;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::dynamics::{self, FieldConfig};
use crate::optics;
use crate::trajectory::{self, EvolutionMode};
use crate::Error;

use fmt::{parse_time, sig12};
use output::TraceReport;

#[derive(Parser, Debug)]
#[command(
    name = "so3trace",
    version,
    about = "Maximally entangled two-qubit states as rotations: trajectories, break parity, optics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Trace an evolution through the rotation ball and export the samples.
    Trace(TraceArgs),
    /// Solve for the field strength giving a target omega0/omega ratio.
    SolveB(SolveArgs),
    /// Run the verification property sweeps and report maximum errors.
    Verify(VerifyArgs),
    /// Map field parameters to retarder settings or scan the bright port.
    Optics(OpticsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    /// Drive only the first qubit.
    Single,
    /// Drive both qubits through the same field.
    Dual,
}

impl From<ModeArg> for EvolutionMode {
    fn from(mode: ModeArg) -> Self {
        match mode {
            ModeArg::Single => EvolutionMode::Single,
            ModeArg::Dual => EvolutionMode::Dual,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct TraceArgs {
    /// Field tilt angle from the z-axis, radians.
    #[arg(long)]
    theta: f64,
    /// Field strength in energy units; exactly one of --b / --ratio.
    #[arg(long, conflicts_with = "ratio", required_unless_present = "ratio")]
    b: Option<f64>,
    /// Target omega0/omega; the field strength is solved internally.
    #[arg(long)]
    ratio: Option<f64>,
    /// Field rotation frequency.
    #[arg(long, default_value_t = 1.0)]
    omega: f64,
    /// Which evolution to project into the ball.
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// Final time: a number, or the token "pi/omega".
    #[arg(long, default_value = "pi/omega")]
    t_max: String,
    /// Number of uniform sampling steps.
    #[arg(long, default_value_t = trajectory::DEFAULT_STEPS)]
    steps: usize,
    /// Output data file; a .manifest.json sidecar accompanies CSV output.
    #[arg(long)]
    out: PathBuf,
    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

#[derive(Args, Debug)]
struct SolveArgs {
    /// Field tilt angle from the z-axis, radians.
    #[arg(long)]
    theta: f64,
    /// Field rotation frequency.
    #[arg(long, default_value_t = 1.0)]
    omega: f64,
    /// Reduced Planck constant.
    #[arg(long, default_value_t = 1.0)]
    hbar: f64,
    /// Target omega0/omega.
    #[arg(long)]
    ratio: f64,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Seed for the randomized sweeps.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Reduced case counts.
    #[arg(long)]
    quick: bool,
    /// Corrupt one tolerance to prove the harness can fail.
    #[arg(long, hide = true)]
    inject_tolerance_fault: bool,
}

#[derive(Args, Debug)]
struct OpticsArgs {
    /// Field tilt angle from the z-axis, radians.
    #[arg(long)]
    theta: f64,
    /// Field strength in energy units; alternatively give --ratio.
    #[arg(long, conflicts_with = "ratio")]
    b: Option<f64>,
    /// Target omega0/omega; the field strength is solved internally.
    #[arg(long)]
    ratio: Option<f64>,
    /// Field rotation frequency.
    #[arg(long, default_value_t = 1.0)]
    omega: f64,
    /// Evolution time: a number, or the token "pi/omega".
    #[arg(long, default_value = "pi/omega")]
    t: String,
    /// Wavelength for converting retardances to applied fields.
    #[arg(long)]
    lambda: Option<f64>,
    /// Kerr constant for converting retardances to applied fields.
    #[arg(long)]
    kerr_k: Option<f64>,
    /// Cell thickness for converting retardances to applied fields.
    #[arg(long)]
    d: Option<f64>,
    /// Sweep the commensurate ratio and emit bright-port intensities.
    #[arg(long, requires = "out")]
    scan: bool,
    /// Output file for --scan.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A command failure with its exit-code class.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument { .. }
            | Error::InvalidConfig { .. }
            | Error::InvalidAxis { .. }
            | Error::InvalidGeometry { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

type CmdResult = std::result::Result<(), Failure>;

/// Parses the process arguments, dispatches, and returns the exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() { 1 } else { 0 };
        }
    };
    let outcome = match cli.command {
        Command::Trace(args) => cmd_trace(&args),
        Command::SolveB(args) => cmd_solve_b(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Optics(args) => cmd_optics(&args),
    };
    match outcome {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

/// Resolves --b/--ratio into a configuration with `hbar = 1`.
fn resolve_config(
    theta: f64,
    b: Option<f64>,
    ratio: Option<f64>,
    omega: f64,
) -> std::result::Result<FieldConfig, Failure> {
    match (b, ratio) {
        (Some(b), None) => Ok(FieldConfig::new(b, theta, omega, 1.0)?),
        (None, Some(r)) => Ok(FieldConfig::for_ratio(theta, omega, 1.0, r)?),
        (None, None) => Err(Failure::Usage("one of --b or --ratio is required".into())),
        (Some(_), Some(_)) => Err(Failure::Usage("--b conflicts with --ratio".into())),
    }
}

fn cmd_trace(args: &TraceArgs) -> CmdResult {
    let cfg = resolve_config(args.theta, args.b, args.ratio, args.omega)?;
    let (t_max, t_max_label) = parse_time(&args.t_max, cfg.omega)?;
    let traj = trajectory::trace(&cfg, args.mode.into(), t_max, args.steps)?;
    let breaks = if t_max > 0.0 {
        trajectory::count_breaks(&traj)?
    } else {
        0
    };
    let closure = trajectory::closure_phase(&traj)?;
    let parity = closure
        .sign()
        .map(|s| s == if breaks % 2 == 0 { 1 } else { -1 });
    let report = TraceReport {
        traj: &traj,
        breaks,
        closure,
        parity,
    };

    let parameters = serde_json::json!({
        "theta": args.theta,
        "b": cfg.b,
        "ratio": args.ratio,
        "omega": args.omega,
        "hbar": 1.0,
        "mode": match args.mode { ModeArg::Single => "single", ModeArg::Dual => "dual" },
        "t_max": t_max_label,
        "t_max_value": fmt::round12(t_max),
        "steps": args.steps,
        "format": match args.format { FormatArg::Csv => "csv", FormatArg::Json => "json" },
        "out": args.out.display().to_string(),
    });

    let written = match args.format {
        FormatArg::Csv => output::write_trace_csv(&args.out, &report, parameters)?,
        FormatArg::Json => output::write_trace_json(&args.out, &report, parameters)?,
    };

    println!(
        "samples={} breaks={} closure_phase={} parity_ok={}",
        traj.samples.len(),
        breaks,
        closure,
        output::parity_label(parity),
    );
    for path in written {
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn cmd_solve_b(args: &SolveArgs) -> CmdResult {
    let b = dynamics::solve_field_for_ratio(args.theta, args.omega, args.hbar, args.ratio)?;
    let cfg = FieldConfig::new(b, args.theta, args.omega, args.hbar)?;
    let round_trip = dynamics::omega_zero(&cfg) / args.omega;
    println!("B = {}", sig12(b));
    println!("omega0/omega = {}", sig12(round_trip));
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> CmdResult {
    let checks = verify::run_suite(args.seed, args.quick, args.inject_tolerance_fault)?;
    println!(
        "verification suite: seed={} mode={}",
        args.seed,
        if args.quick { "quick" } else { "full" }
    );
    let mut first_failure: Option<&'static str> = None;
    for check in &checks {
        println!(
            "{}  {:<38} cases={:<6} max_err={:<9.1e} tol={:.1e}",
            if check.pass() { "PASS" } else { "FAIL" },
            check.name,
            check.cases,
            check.max_err,
            check.tol,
        );
        if !check.pass() && first_failure.is_none() {
            first_failure = Some(check.name);
        }
    }
    let passed = checks.iter().filter(|c| c.pass()).count();
    println!("{passed}/{} properties passed", checks.len());
    match first_failure {
        None => Ok(()),
        Some(name) => Err(Failure::Runtime(format!("property failed: {name}"))),
    }
}

fn cmd_optics(args: &OpticsArgs) -> CmdResult {
    if args.scan {
        return cmd_optics_scan(args);
    }
    let cfg = resolve_config(args.theta, args.b, args.ratio, args.omega)?;
    let (t, _) = parse_time(&args.t, cfg.omega)?;
    let settings = optics::map_dynamics_to_optics(&cfg, t)?;
    println!("phi1 = {}", sig12(settings.phi1));
    println!("phi2 = {}", sig12(settings.phi2));
    println!("delta = {}", sig12(settings.delta));

    match (args.lambda, args.kerr_k, args.d) {
        (None, None, None) => {}
        (Some(lambda), Some(kerr_k), Some(d)) => {
            for (label, phi) in [("E1", settings.phi1), ("E2", settings.phi2)] {
                println!(
                    "{label} = {}",
                    sig12(field_for_phase(phi, lambda, kerr_k, d)?)
                );
            }
        }
        _ => {
            return Err(Failure::Usage(
                "--lambda, --kerr-k and --d must be given together".into(),
            ))
        }
    }
    Ok(())
}

/// Inverts the quadratic retardance law: `E = sqrt(phi lambda / (2 pi k d))`.
fn field_for_phase(
    phi: f64,
    lambda: f64,
    kerr_k: f64,
    d: f64,
) -> std::result::Result<f64, Failure> {
    let all_positive = [lambda, kerr_k, d]
        .iter()
        .all(|v| v.is_finite() && *v > 0.0);
    if !all_positive {
        return Err(Failure::Usage(
            "--lambda, --kerr-k and --d must be positive".into(),
        ));
    }
    if phi < 0.0 {
        return Err(Failure::Runtime(format!(
            "retardance {phi} is negative; no applied field realizes it"
        )));
    }
    Ok((phi * lambda / (2.0 * std::f64::consts::PI * kerr_k * d)).sqrt())
}

fn cmd_optics_scan(args: &OpticsArgs) -> CmdResult {
    let out = args
        .out
        .as_ref()
        .ok_or_else(|| Failure::Usage("--scan requires --out".into()))?;
    let t = std::f64::consts::PI / args.omega;
    let mut rows = Vec::new();
    for idx in 0..=50_usize {
        let ratio = 0.05 * (10 + idx) as f64;
        let cfg = FieldConfig::for_ratio(args.theta, args.omega, 1.0, ratio)?;
        let settings = optics::map_dynamics_to_optics(&cfg, t)?;
        let (first, second) = optics::dual_arm_transform(&settings);
        rows.push((ratio, optics::mach_zehnder_intensity(&first, &second, 0.0)));
    }

    let parameters = serde_json::json!({
        "theta": args.theta,
        "omega": args.omega,
        "hbar": 1.0,
        "t": "pi/omega",
        "scan": true,
        "ratio_min": 0.5,
        "ratio_max": 3.0,
        "ratio_step": 0.05,
        "out": out.display().to_string(),
    });
    let written = output::write_scan_csv(out, &rows, parameters)?;
    println!("scan rows={}", rows.len());
    for path in written {
        println!("wrote {}", path.display());
    }
    Ok(())
}
