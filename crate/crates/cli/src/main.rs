use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use matrixwell::{parse_config, run, RunError};

/// Heisenberg matrix mechanics in an infinite square well.
///
/// Scenarios: elements, commutator, evolve, spread, ehrenfest, revival,
/// fock-density, fock-algebra. Flags override values from --config.
#[derive(Parser, Debug)]
#[command(name = "matrixwell", version, allow_negative_numbers = true)]
struct Cli {
    /// Scenario to run; may instead be given as `scenario` in the config file.
    scenario: Option<String>,
    /// Flat `key = value` config file; keys match the flag names.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Well width.
    #[arg(long = "L")]
    width: Option<String>,
    /// Particle mass.
    #[arg(long)]
    m: Option<String>,
    #[arg(long)]
    hbar: Option<String>,
    /// Number of retained energy modes.
    #[arg(long = "N")]
    dim: Option<String>,
    #[arg(long)]
    t_start: Option<String>,
    #[arg(long)]
    t_end: Option<String>,
    /// Number of time samples, endpoints included.
    #[arg(long)]
    steps: Option<String>,
    /// eigen:n | superpose:n1,n2,.. | packet:center,width[,p0] | random:count,seed
    #[arg(long)]
    state: Option<String>,
    /// Interior block size (commutator) or dumped block size (evolve).
    #[arg(long)]
    block: Option<String>,
    /// Number of single-particle modes in the Fock basis.
    #[arg(long)]
    modes: Option<String>,
    /// boson | fermion
    #[arg(long)]
    statistics: Option<String>,
    /// Maximum boson occupation per mode.
    #[arg(long)]
    cutoff: Option<String>,
    #[arg(long)]
    particles: Option<String>,
    /// grid:count | x1,x2,..
    #[arg(long)]
    positions: Option<String>,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<String>,
    /// csv | json
    #[arg(long)]
    format: Option<String>,
}

impl Cli {
    fn overrides(self) -> Vec<(&'static str, String)> {
        [
            ("scenario", self.scenario),
            ("L", self.width),
            ("m", self.m),
            ("hbar", self.hbar),
            ("N", self.dim),
            ("t-start", self.t_start),
            ("t-end", self.t_end),
            ("steps", self.steps),
            ("state", self.state),
            ("block", self.block),
            ("modes", self.modes),
            ("statistics", self.statistics),
            ("cutoff", self.cutoff),
            ("particles", self.particles),
            ("positions", self.positions),
            ("out", self.out),
            ("format", self.format),
        ]
        .into_iter()
        .filter_map(|(k, v)| v.map(|v| (k, v)))
        .collect()
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let message = e.render().to_string();
            let body = serde_json::json!({"error": {"kind": "usage", "message": message.trim()}});
            eprintln!("{body}");
            return ExitCode::from(2);
        }
        Err(e) => e.exit(),
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn execute(cli: Cli) -> Result<(), RunError> {
    let text = cli.config.as_ref().map(std::fs::read_to_string).transpose()?;
    let config = parse_config(text.as_deref(), &cli.overrides())?;
    run(&config)?;
    Ok(())
}
