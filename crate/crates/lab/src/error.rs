use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LabError {
    #[error(transparent)]
    Core(#[from] randcomplex::Error),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("nothing to plot")]
    EmptyPlot,
}

pub type LabResult<T> = std::result::Result<T, LabError>;
