use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed input, failed membership, bad recipe: exit code 2.
    #[error("{0}")]
    Validation(String),
    /// Numeric failure inside an analysis: exit code 3.
    #[error("numeric failure: {0}")]
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }
}

impl From<realtrace::Error> for CliError {
    fn from(e: realtrace::Error) -> Self {
        use realtrace::Error as E;
        match e {
            E::Singular | E::EigenNoConvergence { .. } | E::Numeric(_) | E::ZeroVector | E::NotNegative(_) => {
                CliError::Numeric(e.to_string())
            }
            other => CliError::Validation(other.to_string()),
        }
    }
}
