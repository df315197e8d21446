use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "entmix", about = "Mixture entropy experiments", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Path to the JSON run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory for reports and curves.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Worker thread count (results are independent of this).
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Seed override; takes precedence over EXPERIMENT_SEED and the config.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Test whether a sealed distribution lies near the product set of a mixture.
    TestIdentity,
    /// Mixing curves from worst-case and data-based initializations.
    Mixing,
    /// Empirical KL concentration bounds.
    Concentration,
    /// Exact-arithmetic identity battery.
    VerifyIdentities,
    /// Tensorization and Sobolev constant estimation.
    EstimateConstants,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global();
    }
    let config = match cli.config {
        Some(p) => p,
        None => {
            eprintln!("--config is required");
            return ExitCode::from(entmix::runner::EXIT_INVALID as u8);
        }
    };
    let code = match cli.command {
        Command::TestIdentity => entmix::runner::cmd_test_identity(&config, &cli.out, cli.seed),
        Command::Mixing => entmix::runner::cmd_mixing(&config, &cli.out, cli.seed),
        Command::Concentration => entmix::runner::cmd_concentration(&config, &cli.out, cli.seed),
        Command::VerifyIdentities => {
            entmix::runner::cmd_verify_identities(&config, &cli.out, cli.seed)
        }
        Command::EstimateConstants => {
            entmix::runner::cmd_estimate_constants(&config, &cli.out, cli.seed)
        }
    };
    ExitCode::from(code as u8)
}
