use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod report;

use report::RunReport;

/// Classify self-maps of finite metric spaces into contraction classes and
/// run Picard iteration with decay certificates.
#[derive(Parser, Debug)]
#[command(name = "contraction", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the metric axioms of a space file.
    Validate {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Optimal coefficient, membership and witness per contraction class.
    Classify {
        #[command(flatten)]
        input: InputArgs,
        /// Comma-separated class names, or `all`.
        #[arg(long, default_value = "all")]
        classes: String,
        #[arg(long)]
        json: bool,
    },
    /// Picard iteration from a start point, with the decay certificate.
    Solve {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        start: String,
        /// Defaults to |X| + 1, enough for every orbit to close.
        #[arg(long)]
        max_steps: Option<usize>,
        /// Certify with this coefficient instead of the optimal one.
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the fixed point theorem's hypotheses and conclusion.
    CheckTheorem {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        json: bool,
    },
    /// Seeded random search for a map matching class requirements.
    Search {
        #[arg(long)]
        points: usize,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Classes the map must belong to (comma-separated).
        #[arg(long, default_value = "")]
        require: String,
        /// Classes the map must not belong to (comma-separated).
        #[arg(long, default_value = "")]
        exclude: String,
        /// Require (true) or forbid (false) the absence of period-2 points.
        #[arg(long)]
        hypothesis_i: Option<bool>,
        /// Write the found instance here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Space file with a `map` stanza.
    #[arg(required_unless_present = "generator", conflicts_with = "generator")]
    file: Option<PathBuf>,
    /// Build the instance instead of reading a file.
    #[arg(long, value_enum)]
    generator: Option<Generator>,
    /// Sample grid `start:stop:step` for line generators.
    #[arg(long, default_value = "0:4:1/10", requires = "generator")]
    grid: String,
    /// Extra sample points, comma-separated.
    #[arg(long, default_value = "", requires = "generator")]
    extra: String,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Generator {
    /// T x = 0 for x < 2, T x = 1 for x >= 2 on a sampled line.
    Step2,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report: RunReport = match cli.command {
        Command::Validate { file, json } => commands::validate(&file).emit(json),
        Command::Classify {
            input,
            classes,
            json,
        } => commands::classify(&input, &classes).emit(json),
        Command::Solve {
            input,
            start,
            max_steps,
            lambda,
            json,
        } => commands::solve(&input, &start, max_steps, lambda.as_deref()).emit(json),
        Command::CheckTheorem { input, json } => commands::check_theorem(&input).emit(json),
        Command::Search {
            points,
            trials,
            seed,
            require,
            exclude,
            hypothesis_i,
            out,
            json,
        } => {
            let opts = commands::SearchOpts {
                points,
                trials,
                seed,
                require: &require,
                exclude: &exclude,
                hypothesis_i,
                out: out.as_deref(),
            };
            commands::search(&opts).emit(json)
        }
    };
    ExitCode::from(report.exit_code)
}
