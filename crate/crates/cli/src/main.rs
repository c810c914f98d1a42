use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ergokit::config::{Format, Overrides};
use ergokit::runner::{self, RunOptions};
use ergokit::Result;

#[derive(Parser)]
#[command(
    name = "ergokit",
    version,
    about = "Ergotropy of a driven, decaying two-level emitter"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a preset (fig2, fig3, fig4, fig5) or a scenario file
    Run {
        target: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run every detuning of a scenario file and merge the results
    Sweep {
        config: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Print the analytic steady state for every detuning of a scenario file
    Steady { config: PathBuf },
}

#[derive(Args)]
struct Common {
    /// Directory for output files
    #[arg(long, env = "ERGOKIT_OUT_DIR", default_value = ".")]
    out_dir: PathBuf,
    /// Integration step
    #[arg(long)]
    dt: Option<f64>,
    /// Final time
    #[arg(long)]
    t_end: Option<f64>,
    /// Worker threads for independent runs
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

impl Common {
    fn options(self) -> RunOptions {
        RunOptions {
            out_dir: self.out_dir,
            overrides: Overrides {
                dt: self.dt,
                t_end: self.t_end,
                format: self.format,
            },
            workers: self.workers,
        }
    }
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Run { target, common } => {
            for report in runner::run_scenario(&target, &common.options())? {
                println!("{}", report.summary());
            }
        }
        Command::Sweep { config, common } => {
            let (_, reports) = runner::run_sweep(&config, &common.options())?;
            for report in reports {
                println!("{}", report.summary());
            }
        }
        Command::Steady { config } => {
            let rows = runner::steady_state_report(&config)?;
            runner::print_steady_table(&rows, &mut io::stdout().lock()).map_err(|e| {
                ergokit::CliError::Io {
                    path: PathBuf::from("<stdout>"),
                    source: e,
                }
            })?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
