//! Thin command-line front end over the `sparsekit` library.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use sparsekit::cli::{analyze_report, bench_report, convert_file, recommend_report, CliError};
use sparsekit::report::Report;
use sparsekit::{FormatId, Objective};

#[derive(Parser)]
#[command(
    name = "sparsekit",
    version,
    about = "Analyze sparse matrices and pick the storage format that fits them"
)]
struct Cli {
    /// Emit the report as JSON on stdout.
    #[arg(long, global = true)]
    json: bool,

    /// Print only the essential result lines.
    #[arg(long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Show the matrix summary and its nonzero distribution analysis.
    Analyze {
        /// Matrix Market coordinate file.
        file: PathBuf,
    },
    /// Analyze a matrix and suggest a storage format per objective.
    Recommend {
        file: PathBuf,
        /// Optimize for multiply speed, storage size, or report both.
        #[arg(long, value_enum, default_value_t = ObjectiveArg::Both)]
        objective: ObjectiveArg,
    },
    /// Write a format's arrays as text, plus a Matrix Market round-trip file.
    Convert {
        file: PathBuf,
        /// Target storage format.
        #[arg(long, value_enum)]
        format: FormatArg,
        /// Path for the array dump; the round-trip file gets ".mtx" appended.
        #[arg(long)]
        out: PathBuf,
    },
    /// Verify every multiply kernel against the dense oracle, then time it.
    Bench {
        file: PathBuf,
        /// Timed repetitions per kernel.
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
        reps: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    Speed,
    Size,
    Both,
}

impl ObjectiveArg {
    fn objectives(self) -> Vec<Objective> {
        match self {
            ObjectiveArg::Speed => vec![Objective::Speed],
            ObjectiveArg::Size => vec![Objective::Size],
            ObjectiveArg::Both => vec![Objective::Speed, Objective::Size],
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Coo,
    Csr,
    Csc,
    Dia,
    Jds,
    Tjds,
}

impl From<FormatArg> for FormatId {
    fn from(f: FormatArg) -> FormatId {
        match f {
            FormatArg::Coo => FormatId::Coo,
            FormatArg::Csr => FormatId::Csr,
            FormatArg::Csc => FormatId::Csc,
            FormatArg::Dia => FormatId::Dia,
            FormatArg::Jds => FormatId::Jds,
            FormatArg::Tjds => FormatId::Tjds,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command_name, path, result): (&str, PathBuf, Result<Report, CliError>) =
        match &cli.command {
            Command::Analyze { file } => ("analyze", file.clone(), analyze_report(file)),
            Command::Recommend { file, objective } => (
                "recommend",
                file.clone(),
                recommend_report(file, &objective.objectives()),
            ),
            Command::Convert { file, format, out } => (
                "convert",
                file.clone(),
                convert_file(file, FormatId::from(*format), out),
            ),
            Command::Bench { file, reps } => {
                ("bench", file.clone(), bench_report(file, *reps as usize))
            }
        };

    match result {
        Ok(report) => {
            if cli.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.render_text(cli.quiet));
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            if cli.json {
                let report = Report::error_report(
                    command_name,
                    Some(path.display().to_string()),
                    err.to_string(),
                );
                println!("{}", report.to_json());
            } else {
                eprintln!("error: {err}");
            }
            ExitCode::FAILURE
        }
    }
}
