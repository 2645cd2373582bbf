//! Command-line frontend for `ginvkit`: matrix files in, reports out.
//!
//! Exit codes: 0 when an inverse was produced (or a verification passed),
//! 2 for a negative mathematical result, 1 for operational failures.

pub mod app;
pub mod io;

use std::path::PathBuf;

use ginvkit::GinvError;

pub use app::{run, Cli, Status};
pub use io::{from_json, read_matrix, to_json, write_matrix, MatrixFile};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{}: {message}", path.display())]
    Malformed { path: PathBuf, message: String },

    #[error("{flag}: {message}")]
    Invalid { flag: &'static str, message: String },

    #[error(transparent)]
    Core(#[from] GinvError),
}
