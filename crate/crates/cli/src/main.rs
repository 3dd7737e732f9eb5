use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use djsim_cli::run::{self, Overrides, ABOUT};
use djsim_cli::{CliError, Experiment};

#[derive(Parser)]
#[command(
    name = "djsim",
    version,
    about = "Deutsch-Jozsa in a driven thermal cavity: simulations and fidelity sweeps"
)]
struct Cli {
    /// Print units and physical constants, then exit.
    #[arg(long)]
    about: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment.
    Run {
        #[arg(value_enum)]
        experiment: Experiment,
        /// Flat `key = value` config file.
        #[arg(long)]
        config: Option<PathBuf>,
        /// CSV output (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
        /// SVG plot of fidelity against the swept parameter.
        #[arg(long)]
        plot: Option<PathBuf>,
        /// Schedule text file for gates-check.
        #[arg(long)]
        schedule: Option<PathBuf>,
        /// Worker threads for independent sweep points.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Run the invariant and oracle suite.
    Verify,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.about {
        print!("{ABOUT}");
        return ExitCode::SUCCESS;
    }
    let mut stdout = std::io::stdout().lock();
    let mut stderr = std::io::stderr();
    let result = match cli.command {
        None => {
            eprintln!("djsim: no command given; try `djsim --help`");
            return ExitCode::from(2);
        }
        Some(Command::Verify) => run::verify(&mut stdout).and_then(|ok| {
            if ok {
                Ok(())
            } else {
                Err(CliError::Failed("verification failed".into()))
            }
        }),
        Some(Command::Run {
            experiment,
            config,
            out,
            json,
            plot,
            schedule,
            jobs,
        }) => run::load_config(config.as_deref()).and_then(|cfg| {
            let overrides = Overrides {
                out,
                json,
                plot,
                schedule,
                jobs,
            };
            run::run(experiment, cfg, overrides, &mut stdout, &mut stderr)
        }),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("djsim: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
