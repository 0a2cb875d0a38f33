use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser, Debug)]
#[command(
    name = "postnikov",
    version,
    about = "Exact rational homotopy computations"
)]
struct Cli {
    /// Degree cutoff (defaults to 8, capped by the input ring's cutoff)
    #[arg(long, global = true)]
    cutoff: Option<usize>,
    /// Machine-readable JSON output
    #[arg(long, global = true)]
    json: bool,
    /// Height bound for the rational isotropy search
    #[arg(long, global = true, default_value_t = 100)]
    search_height: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cohomology dimensions of K(Q^rank, degree)
    Em {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        degree: usize,
        /// Dimension of the coefficient space
        #[arg(long, default_value_t = 1)]
        coeffs: usize,
    },
    /// Minimal model of a ring file with zero differential
    Model {
        ring: PathBuf,
        /// Write the model file here
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Nonzero classes eta in H^2 with eta^2 = 0
    Obstruct {
        ring: PathBuf,
        #[arg(long, value_enum, default_value_t = FieldArg::Q)]
        field: FieldArg,
    },
    /// Blow-up scenario: eta^2, the secondary pairing and whether kappa vanishes
    Secondary(commands::SecondaryArgs),
    /// Tensor product of two ring files
    Kunneth {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Validate ring, model and scenario files (directories are scanned)
    Check {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FieldArg {
    #[value(name = "Q", alias = "q")]
    Q,
    Closure,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = commands::Options {
        cutoff: cli.cutoff,
        json: cli.json,
        search_height: cli.search_height,
    };
    let result = match cli.command {
        Command::Em {
            rank,
            degree,
            coeffs,
        } => commands::em(&opts, rank, degree, coeffs),
        Command::Model { ring, output } => commands::model(&opts, &ring, output.as_deref()),
        Command::Obstruct { ring, field } => {
            let field = match field {
                FieldArg::Q => postnikov::obstruction::Field::Rationals,
                FieldArg::Closure => postnikov::obstruction::Field::Closure,
            };
            commands::obstruct(&opts, &ring, field)
        }
        Command::Secondary(args) => commands::secondary(&opts, &args),
        Command::Kunneth {
            left,
            right,
            output,
        } => commands::kunneth(&opts, &left, &right, output.as_deref()),
        Command::Check { paths } => commands::check(&opts, &paths),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
