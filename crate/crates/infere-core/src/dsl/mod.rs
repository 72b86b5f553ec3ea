//! The regex DSL: operators, character classes, the AST, and the two
//! text representations (plain regex and parenthetical/functional notation).

mod ast;
pub(crate) mod functional;
mod plain;

pub use ast::{LeafKind, OperatorKind, RegexAst};
pub use functional::{parse_functional, render_functional};
pub use plain::{parse_plain, render_plain};

use thiserror::Error;

/// Errors raised while parsing plain or functional regex text, or while
/// constructing an AST from untrusted pieces.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unbalanced parentheses")]
    UnbalancedParens,
    #[error("unknown token `{token}` at byte {pos}")]
    UnknownToken { token: String, pos: usize },
    #[error("unknown character class `[{0}]`")]
    UnknownCharClass(String),
    #[error("unterminated character class starting at byte {0}")]
    UnterminatedClass(usize),
    #[error("bad repetition bounds {{{k1},{k2}}}: lower bound exceeds upper")]
    BadRepetitionBounds { k1: u32, k2: u32 },
    #[error("unknown operator `{0}`")]
    UnknownOperator(String),
    #[error("operator `{op}`: {detail}")]
    ArityMismatch { op: String, detail: String },
    #[error("malformed integer `{0}`")]
    MalformedInteger(String),
    #[error("unexpected `{token}` at byte {pos}")]
    Unexpected { token: String, pos: usize },
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("empty input")]
    EmptyInput,
}
