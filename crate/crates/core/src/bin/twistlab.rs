use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use twistlab::cli_io::{bundled, exit_code, run_job, run_text, EmitFormat, RunOptions};

#[derive(Parser)]
#[command(name = "twistlab", version, about = "Exact checks for twisted enveloping algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Structured,
    Latex,
}

#[derive(Subcommand)]
enum Command {
    /// Run one job config.
    Run {
        config: PathBuf,
        /// Truncation order, overriding the config.
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, value_enum)]
        emit: Option<Emit>,
        /// Directory for emitted tables and the report.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every bundled job.
    VerifyAll {
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Run { config, order, emit, out } => {
            let emit = emit.map(|e| match e {
                Emit::Structured => EmitFormat::Structured,
                Emit::Latex => EmitFormat::Latex,
            });
            let opts = RunOptions { order, emit, out };
            let result = run_job(&config, &opts);
            match &result {
                Ok(report) => print!("{}", report.render()),
                Err(e) => eprintln!("error: {e}"),
            }
            exit_code(&result)
        }
        Command::VerifyAll { order, out } => {
            let opts = RunOptions { order, emit: None, out };
            let mut worst = 0;
            for (name, text) in bundled::jobs() {
                let result = run_text(text, None, &opts);
                match &result {
                    Ok(report) => print!("{}", report.render()),
                    Err(e) => println!("job {name}\n  ERROR {e}"),
                }
                worst = worst.max(exit_code(&result));
            }
            println!("{}", if worst == 0 { "all jobs passed" } else { "some jobs failed" });
            worst
        }
    };
    ExitCode::from(code as u8)
}
