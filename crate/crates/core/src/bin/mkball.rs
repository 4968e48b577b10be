use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use mkball_core::archive::{load_front, write_front};
use mkball_core::harness::{eas50, run_experiment, Model, RunConfig};
use mkball_core::{save_instance, Result};

#[derive(Parser)]
#[command(name = "mkball", version, about = "Multi-objective Hamming-ball hill climbing on vector Mk landscapes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Multi-start hill climbing under a wall-clock budget.
    Run(RunArgs),
    /// Write a generated instance file.
    Generate(GenerateArgs),
    /// 50% empirical attainment surface of two-objective front files.
    Eas {
        #[arg(required = true)]
        fronts: Vec<PathBuf>,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct InstanceArgs {
    #[arg(long, default_value_t = 1000)]
    n: usize,
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long, default_value_t = 2)]
    d: usize,
    #[arg(long, default_value_t = 100)]
    q: u32,
    #[arg(long, default_value = "adjacent")]
    model: Model,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long, default_value_t = 1)]
    r: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Instance seed; defaults to --seed.
    #[arg(long)]
    instance_seed: Option<u64>,
    /// Seconds per run.
    #[arg(long, default_value_t = 60.0)]
    time_limit: f64,
    #[arg(long, default_value_t = 1)]
    runs: usize,
    /// Stop each run after this many restarts.
    #[arg(long)]
    max_restarts: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

fn run(args: RunArgs) -> Result<()> {
    let config = RunConfig {
        n: args.instance.n,
        k: args.instance.k,
        d: args.instance.d,
        q: args.instance.q,
        model: args.instance.model,
        r: args.r,
        seed: args.seed,
        instance_seed: args.instance_seed,
        time_limit: args.time_limit,
        runs: args.runs,
        max_restarts: args.max_restarts,
        out: args.out,
        threads: args.threads,
    };
    let exp = run_experiment(&config)?;
    println!(
        "instance n={} k={} d={} q={} c={} model={} moves_in_basis={}",
        config.n,
        config.k,
        config.d,
        config.q,
        exp.instance.c(),
        config.model,
        exp.moves_in_basis
    );
    let mut mean_sum = 0.0;
    for (archive, s) in &exp.runs {
        println!(
            "run {:3} restarts={} moves={} front={} us/move={:.3} (excl. init {:.3}, median {:.3}) init_ms={:.1}",
            s.run,
            s.restarts,
            s.total_moves,
            archive.len(),
            s.mean_us_per_move,
            s.mean_us_per_move_excl_init,
            s.median_us_per_move,
            s.problem_init_ms
        );
        mean_sum += s.mean_us_per_move;
    }
    println!("mean us/move over runs: {:.3}", mean_sum / exp.runs.len() as f64);
    if let Some(eas) = &exp.eas50 {
        println!("eas50 points: {}", eas.len());
    }
    if let Some(dir) = &config.out {
        println!("results written to {}", dir.display());
    }
    Ok(())
}

fn generate(args: GenerateArgs) -> Result<()> {
    let config = RunConfig {
        n: args.instance.n,
        k: args.instance.k,
        d: args.instance.d,
        q: args.instance.q,
        model: args.instance.model,
        seed: args.seed,
        ..Default::default()
    };
    config.validate()?;
    save_instance(&config.generate_instance()?, &args.out)
}

fn eas(fronts: Vec<PathBuf>, out: Option<PathBuf>) -> Result<()> {
    let fronts = fronts.iter().map(load_front).collect::<Result<Vec<_>>>()?;
    let surface = eas50(&fronts)?;
    match out {
        Some(path) => mkball_core::archive::save_front(&surface, path),
        None => {
            let mut stdout = std::io::stdout().lock();
            match write_front(&surface, &mut stdout) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(mkball_core::Error::Io {
                    path: "<stdout>".into(),
                    source: e,
                }),
                _ => Ok(()),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => run(args),
        Command::Generate(args) => generate(args),
        Command::Eas { fronts, out } => eas(fronts, out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
