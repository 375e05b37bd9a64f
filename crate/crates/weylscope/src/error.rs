use std::path::PathBuf;

use thiserror::Error;

use crate::metric_lang::LangError;

#[derive(Debug, Error)]
pub enum AppError {
    #[error(transparent)]
    Core(#[from] weylscope_core::Error),

    #[error("{}: {source}", path.display())]
    Lang { path: PathBuf, source: LangError },

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },

    #[error("{0}")]
    Usage(String),
}

pub type AppResult<T> = Result<T, AppError>;
