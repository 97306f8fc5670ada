use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use surfembed_cli::commands::{self, CliError, KnotQuery};
use surfembed_cli::knots::parse_omega;
use surfembed_cli::verdict::Mode;

#[derive(Parser)]
#[command(name = "surfembed", version, about = "Decide whether immersed surfaces in 4-manifolds are homotopic to embeddings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Regular,
    Homotopy,
}

#[derive(Subcommand)]
enum Command {
    /// Check an instance file and list every problem found.
    Validate { file: PathBuf },
    /// Run the decision procedure and print a verdict document.
    Decide {
        #[arg(required_unless_present = "batch", conflicts_with = "batch")]
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "regular")]
        mode: ModeArg,
        /// Decide every JSON file in a directory.
        #[arg(long)]
        batch: Option<PathBuf>,
    },
    /// Report the intersection group of a component pair.
    Gamma {
        file: PathBuf,
        #[arg(long, num_args = 2, value_names = ["I", "J"])]
        components: Vec<usize>,
        /// Group elements at which to read off coefficients.
        #[arg(long, num_args = 1.., allow_hyphen_values = true)]
        query: Vec<String>,
    },
    /// Compute the Kervaire-Milnor invariant.
    Km { file: PathBuf },
    /// Knot invariants and genus bounds from a Seifert matrix.
    Knot {
        #[command(subcommand)]
        query: KnotCommand,
    },
    /// The shipped example corpus.
    Examples {
        #[command(subcommand)]
        action: ExamplesCommand,
    },
}

#[derive(Subcommand)]
enum KnotCommand {
    Arf { file: PathBuf },
    Alex { file: PathBuf },
    Sig {
        file: PathBuf,
        /// Evaluation point exp(i pi p/q), written p/q.
        #[arg(long, default_value = "1/1", allow_hyphen_values = true)]
        omega: String,
    },
    SigmaD {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
    },
    Cp2Bound {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
    },
    Cp2Verdict { file: PathBuf },
    ShakeGenus { file: PathBuf },
    MGenus {
        file: PathBuf,
        #[arg(long)]
        rank: usize,
    },
}

#[derive(Subcommand)]
enum ExamplesCommand {
    List,
    Show { name: String },
}

fn mode_of(m: ModeArg) -> Mode {
    match m {
        ModeArg::Regular => Mode::Regular,
        ModeArg::Homotopy => Mode::Homotopy,
    }
}

fn knot(file: &Path, query: KnotQuery) -> Result<(u8, String), CliError> {
    let text = commands::read_path(file)?;
    Ok((0, commands::knot_text(&text, &query)?))
}

fn run(cli: Cli) -> Result<(u8, String), CliError> {
    match cli.command {
        Command::Validate { file } => Ok((0, commands::validate_text(&commands::read_path(&file)?)?)),
        Command::Decide { file, mode, batch } => match (file, batch) {
            (_, Some(dir)) => commands::decide_batch(&dir, mode_of(mode)),
            (Some(file), None) => Ok((0, commands::decide_text(&commands::read_path(&file)?, mode_of(mode))?)),
            (None, None) => Err(CliError::invalid("decide needs a file or --batch")),
        },
        Command::Gamma { file, components, query } => {
            let text = commands::read_path(&file)?;
            let pair = match components.as_slice() {
                [i, j] => (*i, *j),
                [] => (0, 0),
                _ => return Err(CliError::invalid("--components takes two indices")),
            };
            Ok((0, commands::gamma_text(&text, pair, &query)?))
        }
        Command::Km { file } => Ok((0, commands::km_text(&commands::read_path(&file)?)?)),
        Command::Knot { query } => match query {
            KnotCommand::Arf { file } => knot(&file, KnotQuery::Arf),
            KnotCommand::Alex { file } => knot(&file, KnotQuery::Alexander),
            KnotCommand::Sig { file, omega } => {
                let (p, q) = parse_omega(&omega).map_err(CliError::invalid)?;
                knot(&file, KnotQuery::Signature { p, q })
            }
            KnotCommand::SigmaD { file, d } => knot(&file, KnotQuery::SigmaD { d }),
            KnotCommand::Cp2Bound { file, d } => knot(&file, KnotQuery::Cp2Bound { d }),
            KnotCommand::Cp2Verdict { file } => knot(&file, KnotQuery::Cp2Verdict),
            KnotCommand::ShakeGenus { file } => knot(&file, KnotQuery::ShakeGenus),
            KnotCommand::MGenus { file, rank } => knot(&file, KnotQuery::MGenus { rank }),
        },
        Command::Examples { action } => match action {
            ExamplesCommand::List => Ok((0, commands::examples_list())),
            ExamplesCommand::Show { name } => Ok((0, commands::examples_show(&name)?)),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((code, out)) => {
            let _ = std::io::stdout().write_all(out.as_bytes());
            ExitCode::from(code)
        }
        Err(e) => {
            let _ = std::io::stderr().write_all(e.render().as_bytes());
            ExitCode::from(e.code)
        }
    }
}
