use std::io::{self, BufWriter, Write};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use kbessel_cli::commands::{self, ContourArgs, EvalArgs, OrderInput, SweepArgs, YGrid};
use kbessel_cli::record::RegimeParam;
use kbessel_cli::validate::{self, Options};
use kbessel_cli::{exit_code, thread_pool};
use kbessel_core::contour::Branch;
use kbessel_core::Method;

/// Steepest-descent evaluation of K_{r+it}(y) for real y > 0.
#[derive(Parser)]
#[command(name = "kbessel", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate K_{r+it}(y) once.
    Eval(EvalCmd),
    /// Compare methods over a grid of y; CSV on stdout.
    Sweep(SweepCmd),
    /// Sample the steepest-descent contour; CSV on stdout.
    Contour(ContourCmd),
    /// Run the acceptance suite; JSON report on stdout, summary on stderr.
    Validate(ValidateCmd),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct OrderGroup {
    /// Imaginary part of the order.
    #[arg(long, allow_hyphen_values = true)]
    t: Option<f64>,
    /// t = y sin(theta), theta in [0, pi/2].
    #[arg(long)]
    theta: Option<f64>,
    /// t = y cosh(mu), mu > 0.
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<f64>,
}

impl OrderGroup {
    fn input(&self) -> OrderInput {
        match (self.t, self.theta, self.mu) {
            (Some(t), _, _) => OrderInput::T(t),
            (_, Some(theta), _) => OrderInput::Regime(RegimeParam::Theta(theta)),
            (_, _, Some(mu)) => OrderInput::Regime(RegimeParam::Mu(mu)),
            _ => unreachable!("clap enforces exactly one"),
        }
    }
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct RegimeGroup {
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<f64>,
}

impl RegimeGroup {
    fn param(&self) -> RegimeParam {
        match (self.theta, self.mu) {
            (Some(theta), _) => RegimeParam::Theta(theta),
            (_, Some(mu)) => RegimeParam::Mu(mu),
            _ => unreachable!("clap enforces exactly one"),
        }
    }
}

#[derive(Args)]
struct EvalCmd {
    #[arg(long, allow_hyphen_values = true)]
    y: f64,
    #[command(flatten)]
    order: OrderGroup,
    /// Real part of the order.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    r: f64,
    /// direct, series, steepest, thm13, prop33, asym_monotonic,
    /// asym_oscillatory; defaults to the regime's contour method.
    #[arg(long)]
    method: Option<Method>,
    /// Relative quadrature tolerance.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// Print the record as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Spacing {
    Geometric,
    Linear,
}

#[derive(Args)]
struct SweepCmd {
    #[command(flatten)]
    regime: RegimeGroup,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    r: f64,
    /// Explicit comma-separated y values; overrides the range flags.
    #[arg(long, value_delimiter = ',')]
    ys: Vec<f64>,
    #[arg(long, default_value_t = 25.0)]
    y_min: f64,
    #[arg(long, default_value_t = 800.0)]
    y_max: f64,
    #[arg(long, default_value_t = 6)]
    y_count: usize,
    #[arg(long, value_enum, default_value_t = Spacing::Geometric)]
    spacing: Spacing,
    /// Comma-separated methods, compared pairwise in this order.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    methods: Vec<Method>,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// Append wall-clock columns; makes output run-dependent.
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct ContourCmd {
    #[command(flatten)]
    regime: RegimeGroup,
    /// Comma-separated branches: mono_main, arc_lower, arc_upper, tail.
    #[arg(long, value_delimiter = ',')]
    branch: Vec<Branch>,
    /// Points per branch.
    #[arg(long, default_value_t = 201)]
    points: usize,
    /// Extent in u of the monotonic path and of the tail.
    #[arg(long, default_value_t = 10.0)]
    span: f64,
}

#[derive(Args)]
struct ValidateCmd {
    /// Run only the quick criteria; the rest are reported as skipped.
    #[arg(long)]
    fast: bool,
    /// Write the JSON report to this file instead of stdout.
    #[arg(long)]
    output: Option<std::path::PathBuf>,
    #[arg(long, hide = true)]
    inject_chi_fault: bool,
}

fn run(cli: Cli) -> Result<ExitCode> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match cli.command {
        Command::Eval(c) => {
            let args = EvalArgs {
                y: c.y,
                r: c.r,
                order: c.order.input(),
                method: c.method,
                tol: c.tol,
            };
            let outcome = commands::eval(&args)?;
            for w in &outcome.warnings {
                eprintln!("warning: {w:?}");
            }
            if c.json {
                let value = kbessel_cli::record::MethodValue::from_outcome(&outcome, None);
                serde_json::to_writer_pretty(&mut out, &value)?;
                writeln!(out)?;
            } else {
                out.write_all(commands::format_eval(&outcome).as_bytes())?;
            }
        }
        Command::Sweep(c) => {
            let grid = if c.ys.is_empty() {
                match c.spacing {
                    Spacing::Geometric => YGrid::Geometric { min: c.y_min, max: c.y_max, count: c.y_count },
                    Spacing::Linear => YGrid::Linear { min: c.y_min, max: c.y_max, count: c.y_count },
                }
            } else {
                YGrid::List(c.ys)
            };
            let args = SweepArgs {
                r: c.r,
                param: c.regime.param(),
                grid,
                methods: c.methods,
                tol: c.tol,
                timings: c.timings,
            };
            commands::sweep(&args, &thread_pool()?, &mut out)?;
        }
        Command::Contour(c) => {
            let args = ContourArgs {
                param: c.regime.param(),
                branches: (!c.branch.is_empty()).then_some(c.branch),
                points: c.points,
                span: c.span,
            };
            commands::contour(&args, &mut out)?;
        }
        Command::Validate(c) => {
            let opts = Options {
                fast: c.fast,
                inject_chi_fault: c.inject_chi_fault,
            };
            let start = Instant::now();
            let report = validate::run_suite(&opts, |r| eprintln!("{}", r.summary_line()));
            let passed = report.all_passed();
            let skipped = report.criteria.iter().filter(|c| c.skipped).count();
            eprintln!(
                "{} ({skipped} skipped) in {:.1} s",
                if passed { "all criteria run passed" } else { "validation FAILED" },
                start.elapsed().as_secs_f64()
            );
            let json = serde_json::to_string_pretty(&report)?;
            match c.output {
                Some(path) => std::fs::write(&path, json + "\n")
                    .with_context(|| format!("writing {}", path.display()))?,
                None => writeln!(out, "{json}")?,
            }
            out.flush()?;
            return Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
