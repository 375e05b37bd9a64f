use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LangError {
    #[error("syntax error at line {line}, column {column}: found {found}, expected {}", expected.join(" or "))]
    Syntax { line: usize, column: usize, found: String, expected: Vec<String> },

    #[error("undefined symbol `{symbol}` at line {line}, column {column}: {detail}")]
    UndefinedSymbol { symbol: String, line: usize, column: usize, detail: &'static str },

    #[error("g{i}{j} and g{j}{i} are both given and differ (line {line})")]
    NonSymmetric { i: usize, j: usize, line: usize },

    #[error("`{symbol}` is assigned twice (line {line})")]
    Duplicate { symbol: String, line: usize },

    #[error("invalid domain at line {line}: {detail}")]
    InvalidDomain { line: usize, detail: String },
}
