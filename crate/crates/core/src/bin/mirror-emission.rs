#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Command-line front end: closed-form and quadrature rates, `Z` scans,
//! the self-check suite and `1/m` slope extrapolation.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mirror_emission::analysis::{linear_grid, scan, slope_with};
use mirror_emission::output::{correction_curves, fmt12, render_svg, write_scan_csv};
use mirror_emission::quadrature::{rate_numeric_with, QuadratureSpec};
use mirror_emission::verify::{self, VerifyOptions};
use mirror_emission::{breakdown, AtomConfig, DipoleAxis, Error, Mechanisms};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_GUARD: u8 = 3;
const EXIT_IO: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "mirror-emission", version, about = "Decay rate of a moving atom near a conducting plate")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rate and first-order corrections at a single plate distance.
    Rate(RateArgs),
    /// Closed-form corrections over a range of Z, as CSV (and optionally SVG).
    Scan(ScanArgs),
    /// Run the invariant checks and report pass/fail per check.
    Verify(VerifyArgs),
    /// Extract the 1/m slope of the quadrature rate by Richardson extrapolation.
    Extrapolate(ExtrapolateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Axis {
    X,
    Y,
    Z,
}

impl From<Axis> for DipoleAxis {
    fn from(a: Axis) -> Self {
        match a {
            Axis::X => DipoleAxis::X,
            Axis::Y => DipoleAxis::Y,
            Axis::Z => DipoleAxis::Z,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Closed,
    Quadrature,
    Both,
}

/// `NθxNφ` or `Nθ:Nφ`.
#[derive(Debug, Clone, Copy)]
struct QuadNodes(QuadratureSpec);

impl FromStr for QuadNodes {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s
            .split_once(['x', 'X', ':'])
            .ok_or_else(|| format!("expected NθxNφ, got `{s}`"))?;
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
        QuadratureSpec::new(parse(a)?, parse(b)?)
            .map(QuadNodes)
            .map_err(|e| e.to_string())
    }
}

/// `start:stop:count`, inclusive.
#[derive(Debug, Clone, Copy)]
struct ZRange {
    start: f64,
    stop: f64,
    count: usize,
}

impl FromStr for ZRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, stop, count] = parts.as_slice() else {
            return Err(format!("expected start:stop:count, got `{s}`"));
        };
        let start: f64 = start.trim().parse().map_err(|e| format!("start: {e}"))?;
        let stop: f64 = stop.trim().parse().map_err(|e| format!("stop: {e}"))?;
        let count: usize = count.trim().parse().map_err(|e| format!("count: {e}"))?;
        if !(start > 0.0) || !(stop >= start) || count == 0 || (count > 1 && stop == start) {
            return Err(format!("need 0 < start < stop and count >= 1, got `{s}`"));
        }
        Ok(Self { start, stop, count })
    }
}

/// Comma-separated mass ratios.
#[derive(Debug, Clone)]
struct MuList(Vec<f64>);

impl FromStr for MuList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}")))
            .collect::<Result<_, _>>()
            .map(MuList)
    }
}

#[derive(Args, Debug)]
struct RateArgs {
    #[arg(long, value_enum)]
    dipole: Axis,
    /// Dimensionless plate distance Z = 2zω₀.
    #[arg(long = "Z", allow_negative_numbers = true)]
    z: f64,
    #[arg(long, value_enum, default_value = "closed")]
    mode: Mode,
    /// m/ω₀.
    #[arg(long, default_value_t = 1e6)]
    mass_ratio: f64,
    /// p/m.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    velocity: f64,
    #[arg(long)]
    quad_nodes: Option<QuadNodes>,
    /// Proceed even when Z exceeds the near-plate validity guard.
    #[arg(long)]
    force: bool,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[arg(long, value_enum)]
    dipole: Axis,
    #[arg(long = "Z-range")]
    z_range: ZRange,
    /// CSV destination (default: standard output).
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    quad_nodes: Option<QuadNodes>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Args, Debug)]
struct ExtrapolateArgs {
    #[arg(long, value_enum)]
    dipole: Axis,
    #[arg(long = "Z", allow_negative_numbers = true)]
    z: f64,
    /// Comma-separated, strictly increasing mass ratios.
    #[arg(long, default_value = "1e4,2e4,4e4")]
    mu: MuList,
    /// p/m, held fixed across the masses.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    velocity: f64,
    #[arg(long)]
    quad_nodes: Option<QuadNodes>,
    #[arg(long, conflicts_with = "recoil_only")]
    rontgen_only: bool,
    #[arg(long)]
    recoil_only: bool,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Guard(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Guard(_) => EXIT_GUARD,
            Failure::Io(_) => EXIT_IO,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Guard(m) | Failure::Io(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::GuardViolation { .. } => Failure::Guard(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn io_failure(context: &str) -> impl FnOnce(io::Error) -> Failure + '_ {
    move |e| Failure::Io(format!("{context}: {e}"))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = match cli.command {
        Command::Rate(args) => cmd_rate(&args, &mut out),
        Command::Scan(args) => cmd_scan(&args, &mut out),
        Command::Verify(args) => cmd_verify(&args, &mut out),
        Command::Extrapolate(args) => cmd_extrapolate(&args, &mut out),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn cmd_rate(args: &RateArgs, out: &mut impl Write) -> Result<u8, Failure> {
    let axis = DipoleAxis::from(args.dipole);
    let cfg = AtomConfig::with_velocity(args.mass_ratio, args.velocity, args.z)?;
    if !args.force {
        cfg.check_guard()?;
    }
    let mut fields: Vec<(&str, String)> = vec![
        ("axis", axis.to_string()),
        ("Z", fmt12(args.z)),
    ];
    if matches!(args.mode, Mode::Closed | Mode::Both) {
        let b = breakdown(axis, args.z);
        fields.extend([
            ("gamma_boundary", fmt12(b.gamma_boundary)),
            ("c_total", fmt12(b.c_total)),
            ("c_rontgen", fmt12(b.c_rontgen)),
            ("c_recoil", fmt12(b.c_recoil)),
        ]);
        if args.mode == Mode::Both {
            fields.push(("gamma_first_order", fmt12(b.rate(args.mass_ratio))));
        }
    }
    if matches!(args.mode, Mode::Quadrature | Mode::Both) {
        let spec = args.quad_nodes.map(|q| q.0).unwrap_or(QuadratureSpec::DEFAULT);
        let rate = rate_numeric_with(axis, &cfg, &spec.grid()?, Mechanisms::ALL)?;
        fields.extend([
            ("mass_ratio", fmt12(args.mass_ratio)),
            ("velocity", fmt12(args.velocity)),
            ("gamma_numeric", fmt12(rate)),
        ]);
    }
    let line: Vec<String> = fields.iter().map(|(k, v)| format!("{k}={v}")).collect();
    writeln!(out, "{}", line.join(" ")).map_err(io_failure("stdout"))?;
    Ok(0)
}

fn cmd_scan(args: &ScanArgs, out: &mut impl Write) -> Result<u8, Failure> {
    let axis = DipoleAxis::from(args.dipole);
    let r = args.z_range;
    let grid = linear_grid(r.start, r.stop, r.count)?;
    let rows = scan(axis, &grid)?;
    match &args.output {
        Some(path) => {
            let file = File::create(path).map_err(io_failure(&path.display().to_string()))?;
            write_scan_csv(&rows, BufWriter::new(file))
                .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        }
        None => write_scan_csv(&rows, &mut *out).map_err(|e| Failure::Io(e.to_string()))?,
    }
    if let Some(path) = &args.svg {
        let title = format!("{axis} dipole: corrections vs Z");
        std::fs::write(path, render_svg(&title, &correction_curves(&rows)))
            .map_err(io_failure(&path.display().to_string()))?;
    }
    Ok(0)
}

fn cmd_verify(args: &VerifyArgs, out: &mut impl Write) -> Result<u8, Failure> {
    let opts = VerifyOptions {
        spec: args.quad_nodes.map(|q| q.0).unwrap_or(QuadratureSpec::DEFAULT),
        seed: args.seed,
        ..VerifyOptions::default()
    };
    let report = verify::run(&opts)?;
    let write = |out: &mut dyn Write| -> io::Result<()> {
        for c in &report.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            writeln!(
                out,
                "{status} {:<34} worst={:<12} threshold={:.0e}",
                c.name,
                format!("{:.3e}", c.worst),
                c.threshold
            )?;
        }
        let passed = report.checks.iter().filter(|c| c.passed).count();
        writeln!(out, "{passed}/{} checks passed", report.checks.len())
    };
    write(out).map_err(io_failure("stdout"))?;
    Ok(if report.all_passed() { 0 } else { EXIT_VERIFY_FAILED })
}

fn cmd_extrapolate(args: &ExtrapolateArgs, out: &mut impl Write) -> Result<u8, Failure> {
    let axis = DipoleAxis::from(args.dipole);
    let spec = args.quad_nodes.map(|q| q.0).unwrap_or(QuadratureSpec::FINE);
    let (mechanisms, label) = if args.rontgen_only {
        (Mechanisms::RONTGEN_ONLY, "c_rontgen")
    } else if args.recoil_only {
        (Mechanisms::RECOIL_ONLY, "c_recoil")
    } else {
        (Mechanisms::ALL, "c_total")
    };
    let est = slope_with(axis, args.z, &args.mu.0, args.velocity, spec, mechanisms)?;
    let b = breakdown(axis, args.z);
    let target = match label {
        "c_rontgen" => b.c_rontgen,
        "c_recoil" => b.c_recoil,
        _ => b.c_total,
    };
    let mut report = String::new();
    for (mu, s) in est.mu_list.iter().zip(&est.samples) {
        report.push_str(&format!("mu={} s={}\n", fmt12(*mu), fmt12(*s)));
    }
    report.push_str(&format!(
        "axis={axis} Z={} slope={} error_estimate={} target={label}={} relative_deviation={}\n",
        fmt12(args.z),
        fmt12(est.slope),
        fmt12(est.error_estimate),
        fmt12(target),
        fmt12(est.relative_deviation(target)),
    ));
    out.write_all(report.as_bytes()).map_err(io_failure("stdout"))?;
    Ok(0)
}
