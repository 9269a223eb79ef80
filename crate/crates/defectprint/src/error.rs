use std::fmt;
use std::path::PathBuf;

use defectprint_core::Error as CoreError;
use thiserror::Error;

/// Pipeline stages, named in errors so a failure can be traced to its step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Ingest,
    Vibronic,
    Lineshape,
    Dipole,
    Rates,
    NonRadiative,
    Spin,
    Assembly,
    Matching,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Ingest => "ingest",
            Stage::Vibronic => "vibronic",
            Stage::Lineshape => "lineshape",
            Stage::Dipole => "dipole",
            Stage::Rates => "rates",
            Stage::NonRadiative => "non-radiative rate",
            Stage::Spin => "spin selection",
            Stage::Assembly => "fingerprint assembly",
            Stage::Matching => "matching",
        })
    }
}

/// A parse failure inside one text stream. `line` is 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            message: message.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum AppError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{file}: {source}")]
    Parse { file: String, source: ParseError },
    #[error("{stage} stage: {source}")]
    Stage { stage: Stage, source: CoreError },
    #[error("{0}")]
    Input(String),
}

impl AppError {
    pub fn stage(stage: Stage) -> impl FnOnce(CoreError) -> AppError {
        move |source| AppError::Stage { stage, source }
    }

    pub fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> AppError {
        let path = path.into();
        move |source| AppError::Io { path, source }
    }

    /// 2: input or format, 3: numerical non-convergence, 4: internal consistency.
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Stage {
                source: CoreError::NonConvergence(_),
                ..
            } => 3,
            AppError::Stage {
                source: CoreError::Consistency(_),
                ..
            } => 4,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, AppError>;
