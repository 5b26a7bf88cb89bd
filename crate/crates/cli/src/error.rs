use fokas_core::inverse::InverseError;
use fokas_core::potential::PotentialError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("solver failure: {0}")]
    Solver(String),
    #[error("integrity failure: {0}")]
    Hash(String),
    #[error("{0} invariant check(s) failed")]
    Verify(usize),
    #[error("ladder inadmissible: {0}")]
    Ladder(String),
    #[error("{0}")]
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Solver(_) => 3,
            CliError::Hash(_) => 4,
            CliError::Verify(_) => 5,
            CliError::Ladder(_) => 6,
            CliError::Other(_) => 1,
        }
    }

    pub fn io(e: impl std::fmt::Display) -> Self {
        CliError::Other(e.to_string())
    }
}

impl From<InverseError> for CliError {
    fn from(e: InverseError) -> Self {
        match e {
            InverseError::LadderInadmissible(m) => CliError::Ladder(m),
            other => CliError::Solver(other.to_string()),
        }
    }
}

/// Reading a field directory: a hash or format problem is an integrity failure.
pub fn field_error(e: PotentialError) -> CliError {
    match e {
        PotentialError::Io(_) => CliError::Config(format!("cannot read field directory: {e}")),
        other => CliError::Hash(other.to_string()),
    }
}
