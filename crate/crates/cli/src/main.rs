mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{Failure, RunReport};

#[derive(Parser)]
#[command(name = "tropnet", version, about = "Exact computations on line arrangements and nets")]
struct Cli {
    /// Print machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List orthogonal Latin square pairs up to equivalence.
    Ols {
        #[arg(long)]
        order: usize,
    },
    /// Build or check net files.
    #[command(subcommand)]
    Net(NetCommand),
    /// Tropical centers of lines and locations of points under a matrix.
    Tropicalize {
        #[arg(long)]
        net: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Which points and lines tropicalize to each coordinate.
    Table {
        /// Matrix file; the standard degeneration of the (4,4) argument if omitted.
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
    /// Produce and check a certificate.
    Prove {
        #[arg(value_enum)]
        target: Target,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a certificate file.
    Verify {
        #[arg(long)]
        cert: PathBuf,
    },
    /// Boundary of the amoeba of a line.
    Amoeba(AmoebaArgs),
}

#[derive(Subcommand)]
enum NetCommand {
    /// Abstract net from the canonical Latin squares, or a realized solution.
    Build {
        #[arg(long, conflicts_with = "solution")]
        order: Option<usize>,
        /// Number of line classes, 2 to 4.
        #[arg(long, default_value_t = 4)]
        classes: usize,
        #[arg(long, value_enum)]
        solution: Option<Solution>,
        /// Use the other root of the minimal polynomial.
        #[arg(long, requires = "solution")]
        conjugate: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the net conditions.
    Verify {
        #[arg(long)]
        net: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Solution {
    #[value(name = "43")]
    Net43,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    #[value(name = "44-nonexistence")]
    Nonexistence44,
    #[value(name = "43-uniqueness")]
    Uniqueness43,
}

#[derive(Clone, Copy, ValueEnum)]
enum Base {
    Natural,
    T,
}

#[derive(Args)]
struct AmoebaArgs {
    #[arg(long, value_enum, default_value = "natural")]
    base: Base,
    /// Value of t when `--base t`.
    #[arg(long)]
    t: Option<String>,
    /// Coefficients `a,b,c` of `a z1 + b z2 + c`; the line `z1 + z2 + 1` if omitted.
    #[arg(long, allow_hyphen_values = true)]
    coeffs: Option<String>,
    #[arg(long, default_value_t = -4.0, allow_hyphen_values = true)]
    x_min: f64,
    #[arg(long, default_value_t = 4.0, allow_hyphen_values = true)]
    x_max: f64,
    #[arg(long, default_value_t = 81)]
    samples: usize,
    /// Output path; `.svg` renders, anything else is CSV.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut report = RunReport::start(std::env::args().skip(1).collect());
    let result = match &cli.command {
        Command::Ols { order } => commands::ols(*order, cli.json),
        Command::Net(NetCommand::Build { order, classes, solution, conjugate, out }) => match solution {
            Some(Solution::Net43) => commands::net_build_43(&mut report, *conjugate, out.as_deref()),
            None => match order {
                Some(d) => commands::net_build(&mut report, *d, *classes, out.as_deref()),
                None => Err(Failure::Input("net build needs --order or --solution".into())),
            },
        },
        Command::Net(NetCommand::Verify { net }) => commands::net_verify(&mut report, net, cli.json),
        Command::Tropicalize { net, matrix, svg } => {
            commands::tropicalize(&mut report, net, matrix, svg.as_deref(), cli.json)
        }
        Command::Table { matrix } => commands::table(&mut report, matrix.as_deref(), cli.json),
        Command::Prove { target, out } => match target {
            Target::Nonexistence44 => commands::prove_44(&mut report, out, cli.json),
            Target::Uniqueness43 => commands::prove_43(&mut report, out, cli.json),
        },
        Command::Verify { cert } => commands::verify(&mut report, cert, cli.json),
        Command::Amoeba(a) => commands::amoeba(&mut report, a, cli.json),
    };
    report.finish(result)
}
