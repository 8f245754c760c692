use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use semiclassical::ncpoly::{parse_expression, to_weyl_basis};
use semiclassical::sweep::{emit, load_config, run_sweep, run_verify, Experiment, OutputFormat, SweepConfig, VerifyOptions};
use semiclassical::Result;

#[derive(Parser)]
#[command(name = "semiclassical", version, about = "Semiclassical operator algebra on H_q x H_p x H_r")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the h-sweep from 0 to h0 and emit one record per point.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the config's `output`; standard output if neither is set.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_parser = parse_format)]
        format: Option<OutputFormat>,
    },
    /// Run the invariant suite; exits with status 1 if any check fails.
    Verify {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Use the unfolded frequency set in the CCR checks (fault injection).
        #[arg(long)]
        break_nyquist: bool,
    },
    /// Print an expression in normal-ordered and Weyl-basis form.
    Weyl {
        #[arg(long)]
        expr: String,
    },
    /// Lowest eigenvalues of H(q~(h), p~(h)).
    Spectrum {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        h: f64,
        #[arg(long, default_value_t = 4)]
        count: usize,
    },
}

fn parse_format(s: &str) -> std::result::Result<OutputFormat, String> {
    s.parse()
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Sweep { config, output, format } => {
            let mut cfg = load_config(&config)?;
            if output.is_some() {
                cfg.output = output;
            }
            if let Some(format) = format {
                cfg.format = format;
            }
            let records = run_sweep(&cfg)?;
            emit(&records, cfg.format, cfg.output.as_deref())?;
            eprintln!("note: rows with 0 < h < h0 are diagnostic; the oracle comparison is meaningful at the matching endpoint");
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { config, break_nyquist } => {
            let cfg = match config {
                Some(path) => load_config(&path)?,
                None => SweepConfig::default(),
            };
            let report = run_verify(&cfg, &VerifyOptions { break_nyquist })?;
            println!("{report}");
            Ok(if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Weyl { expr } => {
            let f = parse_expression(&expr)?;
            println!("normal-ordered: {f}");
            println!("weyl: {}", to_weyl_basis(&f));
            Ok(ExitCode::SUCCESS)
        }
        Command::Spectrum { config, h, count } => {
            let cfg = load_config(&config)?;
            let op = Experiment::new(&cfg)?.hamiltonian_at(h)?;
            for e in op.lowest_eigenvalues(count)? {
                println!("{e:.16e}");
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
