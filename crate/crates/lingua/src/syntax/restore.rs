//! The restoring transformation: colloquial text to canonical concrete text.
//!
//! Most colloquialisms are resolved while parsing. What remains is the
//! unfolding of assertion decrees `begin-asr c; … end-asr`: the decree's
//! condition is asserted before and after every instruction in its range,
//! except inside `off … on` regions and error handlers; nested decrees
//! conjoin their conditions.

use super::parser::{Dialect, Parser};
use super::pretty::{pretty_exp, pretty_instruction, pretty_program};
use super::SyntaxError;
use crate::ast::{Condition, DatExp, Instruction};

/// Parsed (spec)instructions before decrees are unfolded.
#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Spec {
    /// Atomic instruction, `skip` or assertion.
    Ins(Instruction),
    Seq(Box<Spec>, Box<Spec>),
    If(DatExp, Box<Spec>, Box<Spec>),
    IfError(DatExp, Box<Spec>),
    While(DatExp, Box<Spec>),
    /// `begin-asr c; body end-asr`
    Decree(Condition, Box<Spec>),
    /// `off body on`
    Off(Box<Spec>),
}

/// Concatenates instructions into a right-nested sequence.
fn concat(parts: Vec<Instruction>) -> Instruction {
    Instruction::seq(parts.iter().flat_map(|p| p.components()).cloned().collect::<Vec<_>>())
}

/// Lowers a spec tree outside of any decree.
pub(crate) fn lower(s: &Spec) -> Instruction {
    match s {
        Spec::Ins(i) => i.clone(),
        Spec::Seq(a, b) => concat(vec![lower(a), lower(b)]),
        Spec::If(g, a, b) => Instruction::If(g.clone(), Box::new(lower(a)), Box::new(lower(b))),
        Spec::IfError(g, h) => Instruction::IfError(g.clone(), Box::new(lower(h))),
        Spec::While(g, b) => Instruction::While(g.clone(), Box::new(lower(b))),
        Spec::Decree(c, body) => wrapped(c, body),
        Spec::Off(body) => lower(body),
    }
}

/// The range of a decree: the instruction surrounded by assertions of `c`.
fn wrapped(c: &Condition, s: &Spec) -> Instruction {
    match s {
        Spec::Off(body) => lower(body),
        Spec::Ins(Instruction::Assert(c2)) => Instruction::Assert(Condition::and(c.clone(), c2.clone())),
        Spec::Decree(c2, body) => wrapped(&Condition::and(c.clone(), c2.clone()), body),
        other => {
            let asr = || Instruction::Assert(c.clone());
            concat(vec![asr(), inner(c, other), asr()])
        }
    }
}

/// The interior of a decree's range: assertions between components and
/// inside structured instructions, but not at the outer boundary.
fn inner(c: &Condition, s: &Spec) -> Instruction {
    match s {
        Spec::Ins(i) => i.clone(),
        Spec::Seq(a, b) => concat(vec![inner(c, a), Instruction::Assert(c.clone()), inner(c, b)]),
        Spec::If(g, a, b) => Instruction::If(g.clone(), Box::new(wrapped(c, a)), Box::new(wrapped(c, b))),
        Spec::While(g, b) => Instruction::While(g.clone(), Box::new(wrapped(c, b))),
        Spec::IfError(g, h) => Instruction::IfError(g.clone(), Box::new(lower(h))),
        Spec::Decree(..) | Spec::Off(_) => wrapped(c, s),
    }
}

/// Restores a colloquial program to canonical concrete text.
pub fn restore_program(src: &str) -> Result<String, SyntaxError> {
    let mut p = Parser::new(src, Dialect::Colloquial)?;
    let program = p.program()?;
    let program = p.finish(program)?;
    Ok(pretty_program(&program))
}

/// Alias of [`restore_program`].
pub fn restore(src: &str) -> Result<String, SyntaxError> {
    restore_program(src)
}

/// Restores a single colloquial (spec)instruction.
pub fn restore_instruction(src: &str) -> Result<String, SyntaxError> {
    let mut p = Parser::new(src, Dialect::Colloquial)?;
    let spec = p.spec()?;
    let spec = p.finish(spec)?;
    Ok(pretty_instruction(&lower(&spec)))
}

/// Restores a single colloquial data expression.
pub fn restore_expression(src: &str) -> Result<String, SyntaxError> {
    let mut p = Parser::new(src, Dialect::Colloquial)?;
    let e = p.exp()?;
    let e = p.finish(e)?;
    Ok(pretty_exp(&e))
}
