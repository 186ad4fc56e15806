use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nphk::cli::{error_json, execute, exit_code, parse_p_list, parse_q_list, CommandKind, RunConfig};
use nphk::oscint::with_workers;
use nphk::Error;

/// Newton polygons, heights and oscillatory-integral decay for planar phases.
#[derive(Parser, Debug)]
#[command(name = "nphk", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a phase and report its polygon, heights and k_p table.
    Analyze {
        #[command(flatten)]
        phase: PhaseArg,
        /// Comma-separated exponents p in [1, 2], e.g. `1,4/3,2`.
        #[arg(long)]
        p: Option<String>,
        #[command(flatten)]
        out: Outputs,
    },
    /// Fit the decay of |I(λ, 0)|, or scan the Randol maximal function.
    Decay {
        #[command(flatten)]
        phase: PhaseArg,
        #[arg(long)]
        lmin: Option<f64>,
        #[arg(long)]
        lmax: Option<f64>,
        /// λ points per octave; with --randol, the coarse offset grid size.
        #[arg(long)]
        grid: Option<u32>,
        /// Amplitude support radius.
        #[arg(long)]
        radius: Option<f64>,
        /// Fit log|I| with an extra log log λ regressor.
        #[arg(long)]
        log: bool,
        #[arg(long)]
        randol: bool,
        /// Randol exponent index; defaults to the classified m.
        #[arg(long)]
        m: Option<u32>,
        /// Comma-separated L^q exponents for the Randol scan.
        #[arg(long, default_value = "2,8")]
        q: String,
        #[command(flatten)]
        out: Outputs,
    },
    /// Run the built-in classified corpus and the exact identity suites.
    Corpus {
        /// Only run corpus rows whose label starts with this tag.
        #[arg(long)]
        filter: Option<String>,
        /// Seed for the random-support suite.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Corrupt the expected k_1 of one row.
        #[arg(long, hide = true)]
        poison: Option<String>,
    },
}

#[derive(Args, Debug)]
struct PhaseArg {
    /// Polynomial phase in x and y, e.g. `x^2*y + y^3`.
    #[arg(long)]
    phi: String,
}

#[derive(Args, Debug)]
struct Outputs {
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

impl Outputs {
    fn apply(self, cfg: &mut RunConfig) {
        cfg.json = self.json;
        cfg.csv = self.csv;
        cfg.svg = self.svg;
    }
}

fn config(cli: Cli) -> Result<RunConfig, Error> {
    Ok(match cli.command {
        Command::Analyze { phase, p, out } => {
            let mut cfg = RunConfig::new(CommandKind::Analyze).with_phi(&phase.phi);
            if let Some(p) = p {
                cfg.p_list = parse_p_list(&p)?;
            }
            out.apply(&mut cfg);
            cfg
        }
        Command::Decay {
            phase,
            lmin,
            lmax,
            grid,
            radius,
            log,
            randol,
            m,
            q,
            out,
        } => {
            let mut cfg = RunConfig::new(CommandKind::Decay).with_phi(&phase.phi);
            cfg.lmin = lmin;
            cfg.lmax = lmax;
            cfg.grid = grid;
            cfg.radius = radius;
            cfg.with_log = log;
            cfg.randol = randol;
            cfg.m = m;
            cfg.q_list = parse_q_list(&q)?;
            out.apply(&mut cfg);
            cfg
        }
        Command::Corpus { filter, seed, poison } => {
            let mut cfg = RunConfig::new(CommandKind::Corpus);
            cfg.filter = filter;
            cfg.seed = seed;
            cfg.poison = poison;
            cfg
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = config(cli).and_then(|cfg| {
        let stdout = io::stdout();
        with_workers(move || {
            let mut lock = stdout.lock();
            let code = execute(&cfg, &mut lock)?;
            lock.flush()?;
            Ok(code)
        })
    });
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(Error::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", error_json(&e));
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
