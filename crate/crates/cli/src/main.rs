use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mie_cli::{commands, load_molecules, CliError, Problem, EXIT_VERIFY_FAILED};
use serde::Serialize;

/// Exact spectra and eigenfunctions of the N-dimensional Kratzer potential.
#[derive(Debug, Parser)]
#[command(name = "mie", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Source {
    /// JSON molecule file
    #[arg(long, value_name = "PATH", conflicts_with = "gamma_sq")]
    molecule_file: Option<PathBuf>,
    /// Record to use when the file holds several
    #[arg(long, requires = "molecule_file")]
    name: Option<String>,
    /// Spatial dimension N (overrides the record)
    #[arg(long = "dim", value_name = "N")]
    dim: Option<u32>,
    /// Report energies in units of ħ²/(2μr₀²)
    #[arg(long)]
    dimensionless: bool,
    /// Work directly with γ² (implies --dimensionless)
    #[arg(long, value_name = "X", allow_negative_numbers = true)]
    gamma_sq: Option<f64>,
    /// Drop the inverse-square term (pure Coulomb limit)
    #[arg(long)]
    coulomb: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file (default stdout)
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Table of exact levels and the order-3 large-γ series
    Spectrum {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
        #[arg(long, default_value_t = 0)]
        nmax: u32,
        #[arg(long, default_value_t = 0)]
        lmax: u32,
    },
    /// Normalized radial function sampled on a uniform grid in x = r/r₀
    Wavefunction {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
        #[arg(long, default_value_t = 0)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        l: u32,
        #[arg(long, default_value_t = 1e-3, allow_negative_numbers = true)]
        x_min: f64,
        /// Defaults to where the density has decayed by e^-45
        #[arg(long, allow_negative_numbers = true)]
        x_max: Option<f64>,
        #[arg(long, default_value_t = 201)]
        points: usize,
    },
    /// Compare exact levels against the finite-difference solver
    Verify {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
        #[arg(long, default_value_t = 0)]
        nmax: u32,
        #[arg(long, default_value_t = 0)]
        lmax: u32,
        /// Relative energy tolerance
        #[arg(long, default_value_t = 1e-6, allow_negative_numbers = true)]
        tolerance: f64,
    },
    /// Term-by-term large-γ expansion of one level
    Expand {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
        #[arg(long, default_value_t = 0)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        l: u32,
    },
}

fn resolve(source: &Source) -> Result<Option<Problem>, CliError> {
    if let Some(g) = source.gamma_sq {
        return Problem::from_gamma_sq(g, source.dim.unwrap_or(3), source.coulomb).map(Some);
    }
    let Some(path) = &source.molecule_file else {
        return Err(CliError::Usage("need --molecule-file or --gamma-sq".into()));
    };
    let loaded = load_molecules(path)?;
    for w in &loaded.warnings {
        eprintln!("warning: {w}");
    }
    let mut record = match (&source.name, loaded.molecules.len()) {
        (_, 0) => return Ok(None),
        (Some(name), _) => loaded
            .molecules
            .into_iter()
            .find(|m| &m.name == name)
            .ok_or_else(|| CliError::Input(format!("no molecule named '{name}' in {}", path.display())))?,
        (None, 1) => loaded.molecules.into_iter().next().expect("one record"),
        (None, k) => {
            let names: Vec<&str> = loaded.molecules.iter().map(|m| m.name.as_str()).collect();
            return Err(CliError::Usage(format!(
                "{k} molecules in file, choose one with --name ({})",
                names.join(", ")
            )));
        }
    };
    record.coulomb_limit |= source.coulomb;
    Problem::from_molecule(record, source.dim, source.dimensionless).map(Some)
}

fn emit<T: Serialize>(output: &Output, value: &T, csv: impl FnOnce(&T) -> String) -> Result<(), CliError> {
    let text = match output.format {
        Format::Csv => csv(value),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Numerical(e.to_string()))?;
            s.push('\n');
            s
        }
    };
    match &output.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Spectrum { source, output, nmax, lmax } => {
            if let Some(p) = resolve(&source)? {
                emit(&output, &commands::spectrum(&p, nmax, lmax)?, |t| t.to_csv())?;
            }
        }
        Command::Wavefunction { source, output, n, l, x_min, x_max, points } => {
            if let Some(p) = resolve(&source)? {
                emit(&output, &commands::wavefunction(&p, n, l, x_min, x_max, points)?, |t| t.to_csv())?;
            }
        }
        Command::Verify { source, output, nmax, lmax, tolerance } => {
            if let Some(p) = resolve(&source)? {
                let report = commands::verify(&p, nmax, lmax, tolerance)?;
                emit(&output, &report, |r| r.to_csv())?;
                eprintln!("{}", report.summary());
                if !report.all_pass {
                    return Ok(EXIT_VERIFY_FAILED);
                }
            }
        }
        Command::Expand { source, output, n, l } => {
            if let Some(p) = resolve(&source)? {
                emit(&output, &commands::expand(&p, n, l)?, |r| r.to_csv())?;
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
