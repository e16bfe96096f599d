use std::fmt;

use lrc_core::field::FieldError;
use lrc_core::CodeError;
use lrc_sim::SimError;

/// A command failure classified by exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Parameter(String),
    Data(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Parameter(_) => 3,
            Failure::Data(_) => 4,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Parameter(m) | Failure::Data(m) => f.write_str(m),
        }
    }
}

impl From<CodeError> for Failure {
    fn from(e: CodeError) -> Self {
        let msg = e.to_string();
        match e {
            CodeError::Usage(_) => Failure::Usage(msg),
            CodeError::Parameter(_) => Failure::Parameter(msg),
            CodeError::Field(
                FieldError::NotPrimePower(_)
                | FieldError::TooLarge(_)
                | FieldError::Reducible(_)
                | FieldError::BadModulus(_),
            ) => Failure::Parameter(msg),
            _ => Failure::Data(msg),
        }
    }
}

impl From<SimError> for Failure {
    fn from(e: SimError) -> Self {
        match e {
            SimError::Code(c) => c.into(),
            SimError::Config(_) => Failure::Usage(e.to_string()),
            other => Failure::Data(other.to_string()),
        }
    }
}

pub type Outcome<T = ()> = Result<T, Failure>;

pub fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

pub fn io(path: &std::path::Path) -> impl FnOnce(std::io::Error) -> Failure + '_ {
    move |e| Failure::Data(format!("{}: {e}", path.display()))
}
