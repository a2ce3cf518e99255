//! Library side of the `mie` command: molecule files, problem setup and the
//! four subcommands. `main.rs` only parses arguments and maps errors to exit
//! codes.

pub mod commands;
pub mod molecule;
pub mod source;
pub mod table;

pub use commands::{expand, spectrum, verify, wavefunction};
pub use molecule::{load_molecules, parse_molecules, MoleculeRecord};
pub use source::Problem;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Exit status when `verify` finds a failing level.
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Input(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Numerical(_) => EXIT_NUMERICAL,
        }
    }
}

impl From<mie_core::Error> for CliError {
    fn from(e: mie_core::Error) -> Self {
        use mie_core::Error as E;
        match e {
            E::Domain(_)
            | E::Config(_)
            | E::NoBoundState(_)
            | E::UnsupportedOrder(_)
            | E::UnsupportedExponents { .. } => CliError::Usage(e.to_string()),
            E::Pole(_) | E::Range(_) | E::Numerical(_) => CliError::Numerical(e.to_string()),
        }
    }
}
