use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Coxeter type: {0}")]
    InvalidType(String),
    #[error("not a root of {system}: {vector}")]
    NotARoot { system: String, vector: String },
    #[error("{0} is not crystallographic; the quantum Bruhat representation needs integral coroot expansions")]
    NotCrystallographic(String),
    #[error("operators {0} and {1} do not commute")]
    NonCommuting(usize, usize),
    #[error("unsupported request: {0}")]
    Unsupported(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
