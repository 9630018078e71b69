use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use braidkit_cli::{run, Command, ExperimentConfig, Method, Scheme, SolveMethod};

#[derive(Parser)]
#[command(name = "braidkit", about = "Braid-group cryptanalysis workbench", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    common: Common,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a protocol honestly; write public.json, secret.json and instances.
    Simulate,
    /// Attack a public transcript (--in) or a freshly simulated one.
    Attack,
    /// Solve a stored conjugacy instance (--in).
    Solve,
    /// Run the quick invariant suite.
    Selftest,
    /// Simulate and attack --reps seeds; write reports.json and summary.json.
    Sweep,
}

#[derive(Clone, Copy, ValueEnum)]
enum PresetArg {
    Generalized,
    Klchkp,
    Cklhc,
    Stickel,
    ShpilrainCentral,
    Dehornoy,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Decomposition,
    Length,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolverArg {
    Exhaustive,
    Descent,
}

#[derive(Args)]
struct Common {
    #[arg(long, global = true, value_enum)]
    preset: Option<PresetArg>,
    /// Strand count.
    #[arg(long, global = true, default_value_t = 8)]
    n: usize,
    #[arg(long = "secret-len", global = true, default_value_t = 8)]
    secret_len: usize,
    /// Search bound (exponent bound for stickel).
    #[arg(long = "max-len", global = true)]
    max_len: Option<usize>,
    #[arg(long, global = true, default_value_t = braidkit::solve::DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 10)]
    reps: usize,
    #[arg(long, global = true, value_enum, default_value = "decomposition")]
    method: MethodArg,
    #[arg(long, global = true, value_enum, default_value = "exhaustive")]
    solver: SolverArg,
    /// Sample positive secrets only.
    #[arg(long, global = true)]
    positive: bool,
    /// Record wall-clock phases (reports are then no longer reproducible).
    #[arg(long, global = true)]
    timings: bool,
    #[arg(long = "in", global = true)]
    input: Option<PathBuf>,
    /// Secret file used only to compute harness verdicts.
    #[arg(long, global = true)]
    oracle: Option<PathBuf>,
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
}

fn scheme(p: PresetArg) -> Scheme {
    use braidkit::protocol::Preset;
    match p {
        PresetArg::Generalized => Scheme::Ka(Preset::Generalized),
        PresetArg::Klchkp => Scheme::Ka(Preset::Klchkp),
        PresetArg::Cklhc => Scheme::Ka(Preset::Cklhc),
        PresetArg::Stickel => Scheme::Ka(Preset::Stickel),
        PresetArg::ShpilrainCentral => Scheme::Ka(Preset::ShpilrainCentral),
        PresetArg::Dehornoy => Scheme::Dehornoy,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let c = cli.common;
    let command = match cli.command {
        Cmd::Simulate => Command::Simulate,
        Cmd::Attack => Command::Attack,
        Cmd::Solve => Command::Solve,
        Cmd::Selftest => Command::Selftest,
        Cmd::Sweep => Command::Sweep,
    };
    let cfg = ExperimentConfig {
        scheme: c.preset.map(scheme),
        strands: c.n,
        secret_len: c.secret_len,
        max_len: c.max_len,
        budget: c.budget,
        seed: c.seed,
        reps: c.reps,
        method: match c.method {
            MethodArg::Decomposition => Method::Decomposition,
            MethodArg::Length => Method::Length,
        },
        solve_method: match c.solver {
            SolverArg::Exhaustive => SolveMethod::Exhaustive,
            SolverArg::Descent => SolveMethod::Descent,
        },
        positive: c.positive,
        timings: c.timings,
        input: c.input,
        oracle: c.oracle,
        out: c.out,
        ..ExperimentConfig::new(command)
    };
    match run(&cfg) {
        Ok(outcome) => {
            for f in &outcome.files {
                println!("{}", f.display());
            }
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
