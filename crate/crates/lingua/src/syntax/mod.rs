//! Concrete and colloquial syntax: lexing, parsing, pretty-printing and the
//! restoring transformation from colloquial to concrete text.

mod lexer;
mod parser;
mod pretty;
mod restore;

pub use lexer::{is_keyword, tokenize, Tok, Token, KEYWORDS};
pub use parser::{parse_condition, parse_expression, parse_program, parse_transfer, parse_type, Dialect};
pub use pretty::{pretty_condition, pretty_decl, pretty_exp, pretty_instruction, pretty_program, pretty_type};
pub use restore::{restore, restore_expression, restore_instruction, restore_program};

/// A lexical or grammatical error with a 1-based source position.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{col}: {message}")]
pub struct SyntaxError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl SyntaxError {
    pub fn new(line: usize, col: usize, message: impl Into<String>) -> Self {
        SyntaxError { line, col, message: message.into() }
    }
}
