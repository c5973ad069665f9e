use std::process::ExitCode;

/// Failures surfaced by the command line, each mapped to an exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags or malformed input files.
    #[error("{0}")]
    Input(String),
    /// Failure while reading or writing files.
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    /// The numbers themselves are degenerate (singular design, zero signal, …).
    #[error("numerical failure: {0}")]
    Numerical(evidencia_core::Error),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    pub fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }

    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Input(_) | CliError::Io { .. } => ExitCode::from(2),
            CliError::Numerical(_) => ExitCode::from(3),
        }
    }
}

impl From<evidencia_core::Error> for CliError {
    fn from(e: evidencia_core::Error) -> Self {
        use evidencia_core::Error as E;
        match e {
            E::SingularDesign { .. }
            | E::DegenerateSpace { .. }
            | E::DegenerateSignal { .. }
            | E::SeriesLimit(_)
            | E::Quadrature { .. } => CliError::Numerical(e),
            other => CliError::Input(other.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
