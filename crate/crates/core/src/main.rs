use clap::{Args, Parser, Subcommand};
use kobo::benchmarks::registered_names;
use kobo::harness::config::{parse_f64_list, OUTPUT_DIR_ENV};
use kobo::harness::{
    parse_config, run_experiment, summarize_dir, write_summary, ConfigLayer, HarnessError,
    SUMMARY_FILE,
};
use kobo::MethodSpec;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Debug, Parser)]
#[command(
    name = "kobo",
    version,
    about = "Bayesian optimization with a known optimum value"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run an experiment grid and write traces plus a summary.
    Run(RunArgs),
    /// Recompute summary.csv from the trace files in a directory.
    Summarize {
        #[arg(long)]
        dir: PathBuf,
    },
    /// List registered problems and methods.
    List,
}

#[derive(Debug, Args)]
struct RunArgs {
    /// TOML file with any of the flag keys (snake_case).
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    problem: Option<String>,
    /// Method as `<acquisition>-<surrogate>`; repeatable or comma separated.
    #[arg(long = "method")]
    methods: Vec<String>,
    #[arg(long)]
    iters: Option<usize>,
    #[arg(long)]
    n_init: Option<usize>,
    #[arg(long)]
    reps: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated declared optimum values.
    #[arg(long, allow_hyphen_values = true)]
    fstar_declared: Option<String>,
    #[arg(long)]
    delta: Option<f64>,
    /// `zero` or `sqrt2fstar`.
    #[arg(long)]
    m0_mode: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl RunArgs {
    fn layer(&self) -> Result<ConfigLayer, HarnessError> {
        let fstar_declared = match &self.fstar_declared {
            Some(s) => Some(parse_f64_list(s).map_err(HarnessError::Usage)?),
            None => None,
        };
        Ok(ConfigLayer {
            problem: self.problem.clone(),
            methods: (!self.methods.is_empty()).then(|| self.methods.clone()),
            iters: self.iters,
            n_init: self.n_init,
            reps: self.reps,
            seed: self.seed,
            fstar_declared,
            delta: self.delta,
            m0_mode: self.m0_mode.clone(),
            output_dir: self.out.clone(),
        })
    }
}

fn exit_code(e: &HarnessError) -> u8 {
    match e {
        HarnessError::Usage(_) | HarnessError::Parse(_) => 2,
        _ => 1,
    }
}

fn cmd_run(args: &RunArgs) -> Result<u8, HarnessError> {
    let file = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| HarnessError::Io {
                path: path.clone(),
                source: e,
            })?;
            Some(ConfigLayer::from_toml(&text)?)
        }
        None => None,
    };
    let env_dir = std::env::var_os(OUTPUT_DIR_ENV).map(PathBuf::from);
    let config = parse_config(args.layer()?, file, env_dir)?;
    let outcome = run_experiment(&config)?;
    for cell in &outcome.cells {
        println!("{} ({} runs)", cell.path.display(), cell.traces.len());
    }
    println!("{}", config.output_dir.join(SUMMARY_FILE).display());
    for f in &outcome.failures {
        eprintln!(
            "run {} (seed {}) of {} with f*={} failed: {}",
            f.run, f.seed, f.method, f.fstar_declared, f.error
        );
    }
    Ok(if outcome.all_succeeded() { 0 } else { 1 })
}

fn cmd_summarize(dir: &Path) -> Result<u8, HarnessError> {
    let summary = summarize_dir(dir)?;
    let path = dir.join(SUMMARY_FILE);
    write_summary(&path, &summary)?;
    println!("{}", path.display());
    Ok(0)
}

fn cmd_list() -> u8 {
    println!("problems:");
    for name in registered_names() {
        println!("  {name}");
    }
    println!("methods:");
    for m in MethodSpec::all() {
        println!("  {m}");
    }
    0
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Summarize { dir } => cmd_summarize(dir),
        Command::List => Ok(cmd_list()),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
