use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("alphabet must contain at least one symbol")]
    EmptyAlphabet,
    #[error("duplicate symbol `{0}` in alphabet")]
    DuplicateSymbol(String),
    #[error("symbol `{0}` is not in the alphabet")]
    UnknownSymbol(String),
    #[error("symbol index {0} is outside an alphabet of size {1}")]
    AlphabetMismatch(usize, usize),
    #[error("symbol `{0}` has a multi-character spelling; words can only be parsed over single-character symbols")]
    MultiCharSymbol(String),
    #[error("longest common suffix of an empty list")]
    EmptyWordList,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("enumeration needs {required} candidate pairs but the budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("length-capped mode requires a cap")]
    MissingCap,
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
