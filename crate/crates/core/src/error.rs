use thiserror::Error;

use crate::fault_tree::Diagnostic;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("operation {0} is not supported on probability boxes")]
    UnsupportedOp(String),

    #[error("copula masses sum to {0}, expected 1")]
    MassDefect(f64),

    #[error("evaluation mode error: {0}")]
    Mode(String),

    #[error("fault tree has {} diagnostic(s)", .0.len())]
    Parse(Vec<Diagnostic>),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
