//! Lingua: a denotationally specified programming language with typed
//! composites, yokes (integrity constraints), procedures and assertions.
//!
//! The crate provides an interpreter, a parser and pretty-printer for the
//! concrete syntax, a colloquial-syntax restorer, and a generator turning
//! algebraic signatures into equational grammars.

pub mod ast;
pub mod cli;
pub mod dump;
pub mod interp;
pub mod limits;
pub mod number;
pub mod ops;
pub mod procedures;
pub mod siggen;
pub mod state;
pub mod syntax;
pub mod transfer;
pub mod types;
pub mod validate;
pub mod value;

pub use interp::{Abort, Machine, Outcome};
pub use dump::dump_state;
pub use limits::Limits;
pub use number::Decimal;
pub use state::State;
