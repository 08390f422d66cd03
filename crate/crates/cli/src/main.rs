use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use rbcyb::GaussRat;
use rbcyb_cli::{cmd_catalog, cmd_check, cmd_construct, cmd_groupeval, cmd_validate, emit, parse, Construct, Document, Property, Report};

#[derive(Parser)]
#[command(name = "rbcyb", about = "Construct and verify Rota-Baxter operators, r-matrices and reflections")]
struct Cli {
    /// Print reports as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Append the list of claims exercised by the run.
    #[arg(long, global = true)]
    coverage: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every object of a document against its axioms.
    Validate { file: PathBuf },
    /// Build a derived structure and write it as a new document.
    Construct {
        file: PathBuf,
        #[arg(value_enum)]
        what: Construct,
        /// Source object; defaults to the first one of the right kind.
        name: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one property check on selected objects (all applicable ones by default).
    Check {
        file: PathBuf,
        #[arg(value_enum)]
        property: Property,
        names: Vec<String>,
    },
    /// Export a catalog entry as a document.
    Catalog {
        name: String,
        #[arg(long, default_value = "1")]
        lambda: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample the Poisson bivector formulas at random group points.
    Groupeval {
        file: PathBuf,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

fn read_doc(path: &Path) -> Result<Document> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_doc(doc: &Document, out: Option<&Path>) -> Result<()> {
    let text = emit(doc);
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn print_report(r: &Report, cli: &Cli) -> ExitCode {
    if cli.json {
        print!("{}", r.render_json(cli.coverage));
    } else {
        print!("{}", r.render_text(cli.coverage));
    }
    ExitCode::from(r.exit_code() as u8)
}

fn run(cli: &Cli) -> Result<ExitCode> {
    Ok(match &cli.command {
        Command::Validate { file } => print_report(&cmd_validate(&read_doc(file)?)?, cli),
        Command::Check { file, property, names } => print_report(&cmd_check(&read_doc(file)?, *property, names)?, cli),
        Command::Groupeval { file, samples, seed } => print_report(&cmd_groupeval(&read_doc(file)?, *samples, *seed)?, cli),
        Command::Construct { file, what, name, out } => {
            write_doc(&cmd_construct(&read_doc(file)?, *what, name.as_deref())?, out.as_deref())?;
            ExitCode::SUCCESS
        }
        Command::Catalog { name, lambda, n, out } => {
            let lambda = GaussRat::from_str(lambda).map_err(|e| anyhow::anyhow!("bad --lambda `{lambda}`: {e}"))?;
            write_doc(&cmd_catalog(name, &lambda, *n)?, out.as_deref())?;
            ExitCode::SUCCESS
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
