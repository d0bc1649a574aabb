//! Error type shared across the crate.

/// Crate-wide error type. The three variants map onto the CLI exit codes:
/// parse/input problems exit 2, infeasible parameters or preconditions exit
/// 3, and numerical failures exit 4.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Malformed input text or an unreadable file.
    #[error("parse error: {0}")]
    Parse(String),

    /// A precondition violation: the requested computation is not defined
    /// for this input (disconnected graph, isolated vertex, bad parameter).
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// The computation itself broke down numerically (singular system,
    /// degenerate fit, non-converging solve).
    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code the CLI reports for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Io(_) => 2,
            Error::Infeasible(_) => 3,
            Error::Numerical(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_the_documented_mapping() {
        assert_eq!(Error::Parse("x".into()).exit_code(), 2);
        assert_eq!(Error::Infeasible("x".into()).exit_code(), 3);
        assert_eq!(Error::Numerical("x".into()).exit_code(), 4);
    }
}
