//! Recursive-descent parser for both dialects.
//!
//! The concrete dialect requires fully parenthesized binary expressions and
//! the explicit closers of every construct. The colloquial dialect adds
//! operator priorities, literal sugar for lists, arrays, records and record
//! types, grouped declarations and parameters, optional `else` branches and
//! assertion decrees; it is a superset of the concrete dialect.

use super::lexer::{is_keyword, tokenize, Tok, Token};
use super::restore::{lower, Spec};
use super::SyntaxError;
use crate::ast::{BinOp, Condition, DatExp, Decl, FormalParam, FunDecl, Instruction, ProcDecl, Program, TypExp};
use crate::transfer::{Aggregate, ArithOp, Comparison, NumPredicate, Transfer};
use crate::value::Identifier;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dialect {
    Concrete,
    Colloquial,
}

type PResult<T> = Result<T, SyntaxError>;

pub(crate) struct Parser {
    toks: Vec<Token>,
    pos: usize,
    dialect: Dialect,
}

/// Tokens that close an instruction sequence.
const SEQUENCE_CLOSERS: &[&str] = &["end-program", "end", "endproc", "return", "fi", "od", "else", "end-asr", "on"];

impl Parser {
    pub(crate) fn new(src: &str, dialect: Dialect) -> PResult<Self> {
        Ok(Parser { toks: tokenize(src)?, pos: 0, dialect })
    }

    fn colloquial(&self) -> bool {
        self.dialect == Dialect::Colloquial
    }

    // ----- token helpers ----------------------------------------------------

    fn peek(&self) -> &Tok {
        self.peek_at(0)
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.peek().clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> SyntaxError {
        let t = &self.toks[self.pos.min(self.toks.len() - 1)];
        SyntaxError::new(t.line, t.col, message)
    }

    fn unexpected(&self, wanted: &str) -> SyntaxError {
        self.error(format!("expected {wanted}, found {}", self.peek()))
    }

    fn is_kw_at(&self, k: usize, kw: &str) -> bool {
        matches!(self.peek_at(k), Tok::Name(n) if n == kw)
    }

    fn is_kw(&self, kw: &str) -> bool {
        self.is_kw_at(0, kw)
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(x) if *x == s)
    }

    fn eat_kw(&mut self, kw: &str) -> bool {
        if self.is_kw(kw) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if self.is_sym(s) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_kw(&mut self, kw: &str) -> PResult<()> {
        if self.eat_kw(kw) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{kw}`")))
        }
    }

    fn expect_sym(&mut self, s: &str) -> PResult<()> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{s}`")))
        }
    }

    fn expect_eof(&self) -> PResult<()> {
        match self.peek() {
            Tok::Eof => Ok(()),
            _ => Err(self.unexpected("end of input")),
        }
    }

    fn colloquial_only(&self, what: &str) -> PResult<()> {
        if self.colloquial() {
            Ok(())
        } else {
            Err(self.error(format!("{what} is colloquial syntax, not allowed in concrete syntax")))
        }
    }

    fn ident(&mut self) -> PResult<Identifier> {
        match self.peek().clone() {
            Tok::Name(n) if is_keyword(&n) => {
                Err(self.error(format!("expected an identifier, found keyword `{n}`")))
            }
            Tok::Name(n) => {
                self.bump();
                Ok(Identifier::new(n))
            }
            _ => Err(self.unexpected("an identifier")),
        }
    }

    fn is_ident(&self, k: usize) -> bool {
        matches!(self.peek_at(k), Tok::Name(n) if !is_keyword(n))
    }

    /// Runs `f`, restoring the position if it fails.
    fn attempt<T>(&mut self, f: impl FnOnce(&mut Self) -> PResult<T>) -> PResult<T> {
        let saved = self.pos;
        let r = f(self);
        if r.is_err() {
            self.pos = saved;
        }
        r
    }

    // ----- data expressions -------------------------------------------------

    pub(crate) fn exp(&mut self) -> PResult<DatExp> {
        if self.colloquial() {
            self.or_exp()
        } else {
            self.glued()
        }
    }

    fn or_exp(&mut self) -> PResult<DatExp> {
        let mut e = self.and_exp()?;
        while self.eat_kw("or") {
            e = DatExp::bin(BinOp::Or, e, self.and_exp()?);
        }
        Ok(e)
    }

    fn and_exp(&mut self) -> PResult<DatExp> {
        let mut e = self.not_exp()?;
        while self.eat_kw("and") {
            e = DatExp::bin(BinOp::And, e, self.not_exp()?);
        }
        Ok(e)
    }

    fn not_exp(&mut self) -> PResult<DatExp> {
        if self.eat_kw("not") {
            return Ok(DatExp::Not(Box::new(self.not_exp()?)));
        }
        self.cmp_exp()
    }

    /// Comparison level: the operand of `and`, `or` and `not`.
    fn cmp_exp(&mut self) -> PResult<DatExp> {
        if !self.colloquial() {
            return self.glued();
        }
        let mut e = self.add_exp()?;
        loop {
            let op = match self.peek() {
                Tok::Sym(s @ ("=" | "<" | "<=" | ">" | ">=" | "<>")) => *s,
                _ => break,
            };
            self.bump();
            let rhs = self.add_exp()?;
            e = match op {
                "=" => DatExp::bin(BinOp::Equal, e, rhs),
                "<" => DatExp::bin(BinOp::Less, e, rhs),
                "<=" => DatExp::bin(BinOp::Leq, e, rhs),
                ">" => DatExp::bin(BinOp::Less, rhs, e),
                ">=" => DatExp::bin(BinOp::Leq, rhs, e),
                _ => DatExp::Not(Box::new(DatExp::bin(BinOp::Equal, e, rhs))),
            };
        }
        Ok(e)
    }

    fn add_exp(&mut self) -> PResult<DatExp> {
        let mut e = self.mul_exp()?;
        loop {
            let op = match self.peek() {
                Tok::Sym("+") => BinOp::Add,
                Tok::Sym("-") => BinOp::Subtract,
                Tok::Name(n) if n == "glue" => BinOp::Glue,
                _ => break,
            };
            self.bump();
            e = DatExp::bin(op, e, self.mul_exp()?);
        }
        Ok(e)
    }

    fn mul_exp(&mut self) -> PResult<DatExp> {
        let mut e = self.unary_exp()?;
        loop {
            let op = match self.peek() {
                Tok::Sym("*") => BinOp::Multiply,
                Tok::Sym("/") => BinOp::Divide,
                _ => break,
            };
            self.bump();
            e = DatExp::bin(op, e, self.unary_exp()?);
        }
        Ok(e)
    }

    fn unary_exp(&mut self) -> PResult<DatExp> {
        if self.is_sym("-") && !matches!(self.peek_at(1), Tok::Num(_)) {
            self.bump();
            let e = self.unary_exp()?;
            return Ok(DatExp::bin(BinOp::Subtract, DatExp::num(0), e));
        }
        let mut e = self.primary()?;
        loop {
            if self.eat_sym("²") {
                e = DatExp::bin(BinOp::Multiply, e.clone(), e);
            } else if self.is_sym(".") && matches!(self.peek_at(1), Tok::Sym("[")) {
                self.bump();
                self.bump();
                let index = self.exp()?;
                self.expect_sym("]")?;
                e = DatExp::Arr(Box::new(e), Box::new(index));
            } else if self.is_sym(".") && matches!(self.peek_at(1), Tok::Sym("(")) {
                self.bump();
                self.bump();
                let attr = self.ident()?;
                self.expect_sym(")")?;
                e = DatExp::Rec(Box::new(e), attr);
            } else {
                return Ok(e);
            }
        }
    }

    /// Concrete operand level: a primary followed by bare `glue` operations.
    fn glued(&mut self) -> PResult<DatExp> {
        let mut e = self.primary()?;
        while self.eat_kw("glue") {
            e = DatExp::bin(BinOp::Glue, e, self.primary()?);
        }
        Ok(e)
    }

    fn concrete_binop(&self) -> Option<BinOp> {
        Some(match self.peek() {
            Tok::Name(n) if n == "and" => BinOp::And,
            Tok::Name(n) if n == "or" => BinOp::Or,
            Tok::Name(n) if n == "glue" => BinOp::Glue,
            Tok::Sym("=") => BinOp::Equal,
            Tok::Sym("<") => BinOp::Less,
            Tok::Sym("<=") => BinOp::Leq,
            Tok::Sym("+") => BinOp::Add,
            Tok::Sym("-") => BinOp::Subtract,
            Tok::Sym("*") => BinOp::Multiply,
            Tok::Sym("/") => BinOp::Divide,
            _ => return None,
        })
    }

    /// Comma-separated elements of a colloquial literal `[e1, …, en]`.
    fn bracket_list(&mut self) -> PResult<Vec<DatExp>> {
        self.expect_sym("[")?;
        let mut items = vec![self.exp()?];
        while self.eat_sym(",") {
            items.push(self.exp()?);
        }
        self.expect_sym("]")?;
        Ok(items)
    }

    fn primary(&mut self) -> PResult<DatExp> {
        let boxed = Box::new;
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(DatExp::Num(n))
            }
            Tok::Sym("-") if matches!(self.peek_at(1), Tok::Num(_)) => {
                self.bump();
                let Tok::Num(n) = self.bump() else { unreachable!() };
                Ok(DatExp::Num(n.neg()))
            }
            Tok::Word(w) => {
                self.bump();
                Ok(DatExp::Word(w))
            }
            Tok::Sym("(") => {
                self.bump();
                if !self.colloquial() && self.eat_kw("not") {
                    let e = self.exp()?;
                    self.expect_sym(")")?;
                    return Ok(DatExp::Not(boxed(e)));
                }
                let first = self.exp()?;
                if self.eat_sym(")") {
                    return Ok(first);
                }
                let op = self.concrete_binop().ok_or_else(|| self.unexpected("an operator or `)`"))?;
                self.bump();
                let second = self.exp()?;
                self.expect_sym(")")?;
                Ok(DatExp::bin(op, first, second))
            }
            Tok::Name(n) => match n.as_str() {
                "true" | "false" => {
                    self.bump();
                    Ok(DatExp::Bool(n == "true"))
                }
                "list" => {
                    self.bump();
                    if self.is_sym("[") {
                        self.colloquial_only("a list literal")?;
                        let mut items = self.bracket_list()?.into_iter().rev();
                        let last = items.next().expect("non-empty literal");
                        let mut e = DatExp::List(boxed(last));
                        for item in items {
                            e = DatExp::Push(boxed(item), boxed(e));
                        }
                        return Ok(e);
                    }
                    let e = self.exp()?;
                    self.expect_kw("ee")?;
                    Ok(DatExp::List(boxed(e)))
                }
                "push" => {
                    self.bump();
                    let e = self.exp()?;
                    self.expect_kw("on")?;
                    let l = self.exp()?;
                    self.expect_kw("ee")?;
                    Ok(DatExp::Push(boxed(e), boxed(l)))
                }
                "top" | "pop" => {
                    self.bump();
                    self.expect_sym("(")?;
                    let e = self.exp()?;
                    self.expect_sym(")")?;
                    Ok(if n == "top" { DatExp::Top(boxed(e)) } else { DatExp::Pop(boxed(e)) })
                }
                "array" => {
                    self.bump();
                    if self.is_sym("[") {
                        self.colloquial_only("an array literal")?;
                        let mut items = self.bracket_list()?.into_iter();
                        let first = items.next().expect("non-empty literal");
                        let mut e = DatExp::Array(boxed(first));
                        for item in items {
                            e = DatExp::AddToArr(boxed(e), boxed(item));
                        }
                        return Ok(e);
                    }
                    let e = self.exp()?;
                    self.expect_kw("ee")?;
                    Ok(DatExp::Array(boxed(e)))
                }
                "add-to-arr" => {
                    self.bump();
                    let mut a = self.exp()?;
                    self.expect_kw("new")?;
                    if self.is_sym("[") {
                        self.colloquial_only("a multi-element addition")?;
                        for item in self.bracket_list()? {
                            a = DatExp::AddToArr(boxed(a), boxed(item));
                        }
                    } else {
                        a = DatExp::AddToArr(boxed(a), boxed(self.exp()?));
                    }
                    self.expect_kw("ee")?;
                    Ok(a)
                }
                "change-arr" => {
                    self.bump();
                    let mut a = self.exp()?;
                    if self.eat_kw("by") {
                        self.colloquial_only("a multi-element change")?;
                        loop {
                            let index = self.add_exp()?;
                            self.expect_sym("<=")?;
                            let value = self.exp()?;
                            a = DatExp::ChangeArr(boxed(a), boxed(index), boxed(value));
                            if !self.eat_sym(",") {
                                break;
                            }
                        }
                    } else {
                        self.expect_kw("at")?;
                        let index = self.exp()?;
                        self.expect_kw("by")?;
                        let value = self.exp()?;
                        a = DatExp::ChangeArr(boxed(a), boxed(index), boxed(value));
                    }
                    self.expect_kw("ee")?;
                    Ok(a)
                }
                "arr" => {
                    self.bump();
                    let a = self.exp()?;
                    self.expect_kw("at")?;
                    let i = self.exp()?;
                    self.expect_kw("ee")?;
                    Ok(DatExp::Arr(boxed(a), boxed(i)))
                }
                "record" => {
                    self.bump();
                    let attr = self.ident()?;
                    if self.eat_sym("<=") {
                        self.colloquial_only("a record literal")?;
                        let mut e = DatExp::Record(attr, boxed(self.exp()?));
                        loop {
                            self.eat_sym(",");
                            if self.eat_kw("ee") {
                                return Ok(e);
                            }
                            let attr = self.ident()?;
                            self.expect_sym("<=")?;
                            let value = self.exp()?;
                            e = DatExp::AddAttr(attr, boxed(value), boxed(e));
                        }
                    }
                    self.expect_kw("of-value")?;
                    let e = self.exp()?;
                    self.expect_kw("ee")?;
                    Ok(DatExp::Record(attr, boxed(e)))
                }
                "add-attr" => {
                    self.bump();
                    let attr = self.ident()?;
                    self.expect_kw("of-value")?;
                    let v = self.exp()?;
                    self.expect_kw("to")?;
                    let r = self.exp()?;
                    self.expect_kw("ee")?;
                    Ok(DatExp::AddAttr(attr, boxed(v), boxed(r)))
                }
                "rec" => {
                    self.bump();
                    let r = self.exp()?;
                    self.expect_kw("at")?;
                    let attr = self.ident()?;
                    self.expect_kw("ee")?;
                    Ok(DatExp::Rec(boxed(r), attr))
                }
                "remove-attr" => {
                    self.bump();
                    let attr = self.ident()?;
                    self.expect_kw("from")?;
                    let r = self.exp()?;
                    self.expect_kw("ee")?;
                    Ok(DatExp::RemoveAttr(attr, boxed(r)))
                }
                "change-rec" => {
                    self.bump();
                    let r = self.exp()?;
                    self.expect_kw("at")?;
                    let attr = self.ident()?;
                    self.expect_kw("by")?;
                    let v = self.exp()?;
                    self.expect_kw("ee")?;
                    Ok(DatExp::ChangeRec(boxed(r), attr, boxed(v)))
                }
                "if" => {
                    self.bump();
                    let g = self.exp()?;
                    self.expect_kw("then")?;
                    let a = self.exp()?;
                    self.expect_kw("else")?;
                    let b = self.exp()?;
                    self.expect_kw("fi")?;
                    Ok(DatExp::If(boxed(g), boxed(a), boxed(b)))
                }
                _ => {
                    let name = self.ident()?;
                    if self.eat_sym("(") {
                        let args = self.actuals(&[")"])?;
                        self.expect_sym(")")?;
                        return Ok(DatExp::Call(name, args));
                    }
                    Ok(DatExp::Var(name))
                }
            },
            _ => Err(self.unexpected("an expression")),
        }
    }

    /// Actual parameters: `empty-ap` or a comma-separated identifier list.
    /// In the colloquial dialect the list may also be empty.
    fn actuals(&mut self, closers: &[&str]) -> PResult<Vec<Identifier>> {
        if self.eat_kw("empty-ap") {
            return Ok(Vec::new());
        }
        let at_closer = closers.iter().any(|c| self.is_sym(c) || self.is_kw(c));
        if at_closer && self.colloquial() {
            return Ok(Vec::new());
        }
        let mut list = vec![self.ident()?];
        while self.eat_sym(",") {
            list.push(self.ident()?);
        }
        Ok(list)
    }

    // ----- transfer expressions ---------------------------------------------

    pub(crate) fn transfer(&mut self) -> PResult<Transfer> {
        if self.colloquial() {
            self.tr_or()
        } else {
            self.tr_glued()
        }
    }

    fn tr_or(&mut self) -> PResult<Transfer> {
        let mut t = self.tr_and()?;
        while self.eat_kw("or") {
            t = Transfer::or(t, self.tr_and()?);
        }
        Ok(t)
    }

    fn tr_and(&mut self) -> PResult<Transfer> {
        let mut t = self.tr_not()?;
        while self.eat_kw("and") {
            t = Transfer::and(t, self.tr_not()?);
        }
        Ok(t)
    }

    fn tr_not(&mut self) -> PResult<Transfer> {
        if self.eat_kw("not") {
            return Ok(Transfer::not(self.tr_not()?));
        }
        self.tr_cmp()
    }

    fn tr_cmp(&mut self) -> PResult<Transfer> {
        let mut t = self.tr_add()?;
        loop {
            let op = match self.peek() {
                Tok::Sym(s @ ("=" | "<" | "<=" | ">" | ">=" | "<>")) => *s,
                _ => break,
            };
            self.bump();
            let rhs = self.tr_add()?;
            t = match op {
                "=" => Transfer::pred(Comparison::Equal, t, rhs),
                "<" => Transfer::pred(Comparison::Less, t, rhs),
                "<=" => Transfer::pred(Comparison::Leq, t, rhs),
                ">" => Transfer::pred(Comparison::Less, rhs, t),
                ">=" => Transfer::pred(Comparison::Leq, rhs, t),
                _ => Transfer::not(Transfer::pred(Comparison::Equal, t, rhs)),
            };
        }
        Ok(t)
    }

    fn tr_add(&mut self) -> PResult<Transfer> {
        let mut t = self.tr_mul()?;
        loop {
            let op = match self.peek() {
                Tok::Sym("+") => ArithOp::Add,
                Tok::Sym("-") => ArithOp::Subtract,
                Tok::Name(n) if n == "glue" => ArithOp::Glue,
                _ => break,
            };
            self.bump();
            t = Transfer::arith(op, t, self.tr_mul()?);
        }
        Ok(t)
    }

    fn tr_mul(&mut self) -> PResult<Transfer> {
        let mut t = self.tr_unary()?;
        loop {
            let op = match self.peek() {
                Tok::Sym("*") => ArithOp::Multiply,
                Tok::Sym("/") => ArithOp::Divide,
                _ => break,
            };
            self.bump();
            t = Transfer::arith(op, t, self.tr_unary()?);
        }
        Ok(t)
    }

    fn tr_unary(&mut self) -> PResult<Transfer> {
        if self.is_sym("-") && !matches!(self.peek_at(1), Tok::Num(_)) {
            self.bump();
            let t = self.tr_unary()?;
            return Ok(Transfer::arith(ArithOp::Subtract, Transfer::num(0), t));
        }
        let t = self.tr_primary()?;
        if self.eat_sym("²") {
            return Ok(Transfer::arith(ArithOp::Multiply, t.clone(), t));
        }
        Ok(t)
    }

    fn tr_glued(&mut self) -> PResult<Transfer> {
        let mut t = self.tr_primary()?;
        while self.eat_kw("glue") {
            t = Transfer::arith(ArithOp::Glue, t, self.tr_primary()?);
        }
        Ok(t)
    }

    fn tr_parenthesized_arg(&mut self) -> PResult<Transfer> {
        self.expect_sym("(")?;
        let t = self.transfer()?;
        self.expect_sym(")")?;
        Ok(t)
    }

    fn tr_primary(&mut self) -> PResult<Transfer> {
        let boxed = Box::new;
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(Transfer::ConstNum(n))
            }
            Tok::Sym("-") if matches!(self.peek_at(1), Tok::Num(_)) => {
                self.bump();
                let Tok::Num(n) = self.bump() else { unreachable!() };
                Ok(Transfer::ConstNum(n.neg()))
            }
            Tok::Word(w) => {
                self.bump();
                Ok(Transfer::ConstWord(w))
            }
            Tok::Sym("(") => {
                self.bump();
                if !self.colloquial() && self.eat_kw("not") {
                    let t = self.transfer()?;
                    self.expect_sym(")")?;
                    return Ok(Transfer::not(t));
                }
                let first = self.transfer()?;
                if self.eat_sym(")") {
                    return Ok(first);
                }
                let op = self.peek().clone();
                self.bump();
                let second = self.transfer()?;
                self.expect_sym(")")?;
                let pred = |c| Ok(Transfer::pred(c, first.clone(), second.clone()));
                let arith = |a| Ok(Transfer::arith(a, first.clone(), second.clone()));
                match op {
                    Tok::Sym(";") => Ok(Transfer::compose(first, second)),
                    Tok::Sym("=") => pred(Comparison::Equal),
                    Tok::Sym("<") => pred(Comparison::Less),
                    Tok::Sym("<=") => pred(Comparison::Leq),
                    Tok::Sym("+") => arith(ArithOp::Add),
                    Tok::Sym("-") => arith(ArithOp::Subtract),
                    Tok::Sym("*") => arith(ArithOp::Multiply),
                    Tok::Sym("/") => arith(ArithOp::Divide),
                    Tok::Name(n) if n == "glue" => arith(ArithOp::Glue),
                    Tok::Name(n) if n == "and" => Ok(Transfer::and(first, second)),
                    Tok::Name(n) if n == "or" => Ok(Transfer::or(first, second)),
                    other => Err(self.error(format!("expected a transfer operator, found {other}"))),
                }
            }
            Tok::Name(n) => {
                self.bump();
                match n.as_str() {
                    "true" => Ok(Transfer::ConstBool(true)),
                    "false" => Ok(Transfer::ConstBool(false)),
                    "sum" => Ok(Transfer::Agg(Aggregate::Sum, boxed(self.tr_parenthesized_arg()?))),
                    "max" => Ok(Transfer::Agg(Aggregate::Max, boxed(self.tr_parenthesized_arg()?))),
                    "small-number" => {
                        Ok(Transfer::Pred1(NumPredicate::SmallNumber, boxed(self.tr_parenthesized_arg()?)))
                    }
                    "increasing" => Ok(Transfer::Pred1(NumPredicate::Increasing, boxed(self.tr_parenthesized_arg()?))),
                    "all-list" | "all-array" => {
                        let t = self.transfer()?;
                        self.expect_kw("ee")?;
                        Ok(if n == "all-list" { Transfer::AllOnLi(boxed(t)) } else { Transfer::AllInAr(boxed(t)) })
                    }
                    "top" => Ok(Transfer::GetLi),
                    "value" => Ok(Transfer::Pass),
                    "array" => {
                        if self.eat_sym(".") {
                            self.colloquial_only("`array.[…]` selection")?;
                        }
                        self.expect_sym("[")?;
                        let t = self.transfer()?;
                        self.expect_sym("]")?;
                        Ok(Transfer::GetAr(boxed(t)))
                    }
                    "record" => {
                        self.expect_sym(".")?;
                        Ok(Transfer::GetRe(self.ident()?))
                    }
                    _ => {
                        self.pos -= 1;
                        Err(self.unexpected("a transfer expression"))
                    }
                }
            }
            _ => Err(self.unexpected("a transfer expression")),
        }
    }

    // ----- type expressions -------------------------------------------------

    pub(crate) fn typ(&mut self) -> PResult<TypExp> {
        let mut t = self.typ_primary()?;
        while self.is_kw("with") {
            self.colloquial_only("`with`")?;
            self.bump();
            t = TypExp::ReplaceTransfer(Box::new(t), self.transfer()?);
        }
        Ok(t)
    }

    fn typ_primary(&mut self) -> PResult<TypExp> {
        let boxed = Box::new;
        let Tok::Name(n) = self.peek().clone() else {
            return Err(self.unexpected("a type expression"));
        };
        let alias = |p: &Self, name: &str| p.colloquial_only(&format!("`{name}`"));
        match n.as_str() {
            "boolean" => {
                self.bump();
                Ok(TypExp::Boolean)
            }
            "number" | "real" => {
                if n == "real" {
                    alias(self, &n)?;
                }
                self.bump();
                Ok(TypExp::Number)
            }
            "word" | "string" => {
                if n == "string" {
                    alias(self, &n)?;
                }
                self.bump();
                Ok(TypExp::Word)
            }
            "list-type" | "list-of" | "array-type" | "array-of" => {
                if n.ends_with("-of") {
                    alias(self, &n)?;
                }
                self.bump();
                let t = self.typ()?;
                self.expect_kw("ee")?;
                Ok(if n.starts_with("list") { TypExp::ListType(boxed(t)) } else { TypExp::ArrayType(boxed(t)) })
            }
            "record-type" => {
                self.bump();
                self.record_type_entries()
            }
            "expand-record-type" => {
                self.bump();
                let r = self.typ()?;
                self.expect_kw("at")?;
                let attr = self.ident()?;
                self.expect_kw("by")?;
                let t = self.typ()?;
                self.expect_kw("ee")?;
                Ok(TypExp::ExpandRecord(boxed(r), attr, boxed(t)))
            }
            "reduce-record-type" => {
                self.bump();
                let r = self.typ()?;
                self.expect_kw("at")?;
                let attr = self.ident()?;
                self.expect_kw("ee")?;
                Ok(TypExp::ReduceRecord(boxed(r), attr))
            }
            "replace-transfer-in" => {
                self.bump();
                let t = self.typ()?;
                self.expect_kw("by")?;
                let tr = self.transfer()?;
                self.expect_kw("ee")?;
                Ok(TypExp::ReplaceTransfer(boxed(t), tr))
            }
            _ => Ok(TypExp::Named(self.ident()?)),
        }
    }

    /// `record-type a as T ee`; colloquially a list of (possibly grouped)
    /// entries `a, b as T` or `a of type T`, optionally comma-separated.
    fn record_type_entries(&mut self) -> PResult<TypExp> {
        let mut result: Option<TypExp> = None;
        loop {
            let mut names = vec![self.ident()?];
            while self.eat_sym(",") {
                names.push(self.ident()?);
            }
            if self.eat_kw("of") {
                self.colloquial_only("`of type`")?;
                self.expect_kw("type")?;
            } else {
                self.expect_kw("as")?;
            }
            let ty = self.typ()?;
            for name in names {
                result = Some(match result {
                    None => TypExp::RecordType(name, Box::new(ty.clone())),
                    Some(r) => TypExp::ExpandRecord(Box::new(r), name, Box::new(ty.clone())),
                });
            }
            let comma = self.eat_sym(",");
            if self.eat_kw("ee") {
                break;
            }
            if !self.colloquial() {
                return Err(self.unexpected("`ee`"));
            }
            if !comma && !self.is_ident(0) {
                return Err(self.unexpected("an attribute or `ee`"));
            }
        }
        let ty = result.expect("at least one entry");
        if !self.colloquial() && !matches!(ty, TypExp::RecordType(..)) {
            return Err(self.error("multi-attribute record types are colloquial syntax"));
        }
        Ok(ty)
    }

    // ----- conditions -------------------------------------------------------

    pub(crate) fn condition(&mut self) -> PResult<Condition> {
        let mut c = self.cond_and()?;
        while self.eat_kw("or") {
            c = Condition::or(c, self.cond_and()?);
        }
        Ok(c)
    }

    fn cond_and(&mut self) -> PResult<Condition> {
        let mut c = self.cond_not()?;
        while self.eat_kw("and") {
            c = Condition::and(c, self.cond_not()?);
        }
        Ok(c)
    }

    fn cond_not(&mut self) -> PResult<Condition> {
        if self.eat_kw("not") {
            return Ok(Condition::not(self.cond_not()?));
        }
        self.cond_atom()
    }

    fn quantifier(&mut self, kw: &str) -> PResult<Condition> {
        self.expect_kw(kw)?;
        let x = self.ident()?;
        self.expect_sym(":")?;
        let c = self.condition()?;
        Ok(if kw == "for-all" { Condition::ForAll(x, Box::new(c)) } else { Condition::Exists(x, Box::new(c)) })
    }

    fn cond_atom(&mut self) -> PResult<Condition> {
        if self.eat_kw("TT") {
            return Ok(Condition::True);
        }
        if self.eat_kw("FF") {
            return Ok(Condition::False);
        }
        if self.eat_kw("defined-d") {
            self.expect_sym("(")?;
            let e = self.exp()?;
            self.expect_sym(")")?;
            return Ok(Condition::DefinedD(e));
        }
        if self.eat_kw("defined-t") {
            self.expect_sym("(")?;
            let t = self.typ()?;
            self.expect_sym(")")?;
            return Ok(Condition::DefinedT(t));
        }
        if self.is_ident(0) && self.is_kw_at(1, "is") {
            let x = self.ident()?;
            self.bump();
            return Ok(Condition::Is(x, self.typ()?));
        }
        if self.is_ident(0) && self.is_kw_at(1, "conformant-with") {
            let x = self.ident()?;
            self.bump();
            return Ok(Condition::ConformantWith(x, self.cmp_exp()?));
        }
        if self.eat_sym("[") {
            let ins = lower(&self.spec()?);
            self.expect_sym("@")?;
            let c = self.condition()?;
            self.expect_sym("]")?;
            return Ok(Condition::After(Box::new(ins), Box::new(c)));
        }
        if self.is_sym("(") && (self.is_kw_at(1, "for-all") || self.is_kw_at(1, "exists")) {
            self.bump();
            let kw = if self.is_kw("for-all") { "for-all" } else { "exists" };
            let c = self.quantifier(kw)?;
            self.expect_sym(")")?;
            return Ok(c);
        }
        if self.is_sym("(") {
            if let Ok(e) = self.attempt(|p| p.cmp_exp()) {
                return Ok(Condition::Data(e));
            }
            self.bump();
            let c = self.condition()?;
            self.expect_sym(")")?;
            return Ok(c);
        }
        Ok(Condition::Data(self.cmp_exp()?))
    }

    // ----- instructions -----------------------------------------------------

    fn at_sequence_closer(&self) -> bool {
        SEQUENCE_CLOSERS.iter().any(|c| self.is_kw(c)) || self.is_sym("@") || matches!(self.peek(), Tok::Eof)
    }

    /// A `;`-separated sequence of (spec)instructions, nested to the right.
    pub(crate) fn spec(&mut self) -> PResult<Spec> {
        let first = self.spec_item()?;
        if self.eat_sym(";") {
            if self.colloquial() && self.at_sequence_closer() {
                return Ok(first);
            }
            let rest = self.spec()?;
            return Ok(Spec::Seq(Box::new(first), Box::new(rest)));
        }
        Ok(first)
    }

    fn spec_item(&mut self) -> PResult<Spec> {
        let boxed = Box::new;
        let Tok::Name(n) = self.peek().clone() else {
            return Err(self.unexpected("an instruction"));
        };
        match n.as_str() {
            "skip" => {
                self.bump();
                Ok(Spec::Ins(Instruction::Skip))
            }
            "yoke" => {
                self.bump();
                let x = self.ident()?;
                self.expect_sym(":=")?;
                Ok(Spec::Ins(Instruction::Yoke(x, self.transfer()?)))
            }
            "if" => {
                self.bump();
                let g = self.exp()?;
                self.expect_kw("then")?;
                let a = self.spec()?;
                let b = if self.eat_kw("else") {
                    self.spec()?
                } else {
                    self.colloquial_only("`if` without `else`")?;
                    Spec::Ins(Instruction::Skip)
                };
                self.expect_kw("fi")?;
                Ok(Spec::If(g, boxed(a), boxed(b)))
            }
            "if-error" => {
                self.bump();
                let g = self.exp()?;
                self.expect_kw("then")?;
                let h = self.spec()?;
                self.expect_kw("fi")?;
                Ok(Spec::IfError(g, boxed(h)))
            }
            "while" => {
                self.bump();
                let g = self.exp()?;
                self.expect_kw("do")?;
                let b = self.spec()?;
                self.expect_kw("od")?;
                Ok(Spec::While(g, boxed(b)))
            }
            "call" => {
                self.bump();
                let proc = self.ident()?;
                let (vals, refs) = self.call_sections()?;
                Ok(Spec::Ins(Instruction::Call { proc, vals, refs }))
            }
            "asr" => {
                self.bump();
                let c = self.condition()?;
                self.expect_kw("rsa")?;
                Ok(Spec::Ins(Instruction::Assert(c)))
            }
            "begin-asr" => {
                self.colloquial_only("`begin-asr`")?;
                self.bump();
                let c = self.condition()?;
                self.eat_sym(";");
                let body = if self.is_kw("end-asr") { Spec::Ins(Instruction::Skip) } else { self.spec()? };
                self.expect_kw("end-asr")?;
                Ok(Spec::Decree(c, boxed(body)))
            }
            "off" => {
                self.colloquial_only("`off … on`")?;
                self.bump();
                let body = self.spec()?;
                self.expect_kw("on")?;
                Ok(Spec::Off(boxed(body)))
            }
            _ => {
                let x = self.ident()?;
                self.expect_sym(":=")?;
                Ok(Spec::Ins(Instruction::Assign(x, self.exp()?)))
            }
        }
    }

    /// `(val a, b ref c)`; colloquially either section may be missing and
    /// they may come in either order.
    fn call_sections(&mut self) -> PResult<(Vec<Identifier>, Vec<Identifier>)> {
        self.expect_sym("(")?;
        if !self.colloquial() {
            self.expect_kw("val")?;
            let vals = self.actuals(&["ref"])?;
            self.expect_kw("ref")?;
            let refs = self.actuals(&[")"])?;
            self.expect_sym(")")?;
            return Ok((vals, refs));
        }
        let (mut vals, mut refs) = (None, None);
        loop {
            if self.eat_sym(")") {
                break;
            }
            let slot = if self.eat_kw("val") {
                &mut vals
            } else if self.eat_kw("ref") {
                &mut refs
            } else {
                return Err(self.unexpected("`val`, `ref` or `)`"));
            };
            if slot.is_some() {
                return Err(self.error("parameter section given twice"));
            }
            *slot = Some(self.actuals(&["ref", "val", ")"])?);
        }
        Ok((vals.unwrap_or_default(), refs.unwrap_or_default()))
    }

    // ----- declarations and programs ----------------------------------------

    fn starts_decl(&self, k: usize) -> bool {
        ["let", "set", "proc", "fun"].iter().any(|kw| self.is_kw_at(k, kw))
            || (self.is_kw_at(k, "begin") && self.is_kw_at(k + 1, "multiproc"))
    }

    fn decl(&mut self) -> PResult<Vec<Decl>> {
        if self.eat_kw("let") {
            let mut names = vec![self.ident()?];
            while self.is_sym(",") {
                self.colloquial_only("a grouped declaration")?;
                self.bump();
                names.push(self.ident()?);
            }
            self.expect_kw("be")?;
            let ty = self.typ()?;
            self.expect_kw("tel")?;
            return Ok(names.into_iter().map(|x| Decl::Var(x, ty.clone())).collect());
        }
        if self.eat_kw("set") {
            let x = self.ident()?;
            self.expect_kw("as")?;
            let ty = self.typ()?;
            self.expect_kw("tes")?;
            return Ok(vec![Decl::Type(x, ty)]);
        }
        if self.is_kw("proc") {
            return Ok(vec![Decl::Proc(self.proc_decl()?)]);
        }
        if self.eat_kw("begin") {
            self.expect_kw("multiproc")?;
            let mut procs = vec![self.proc_decl()?];
            loop {
                self.eat_sym(";");
                if self.eat_kw("end") {
                    self.expect_kw("multiproc")?;
                    break;
                }
                procs.push(self.proc_decl()?);
            }
            return Ok(vec![Decl::MultiProc(procs)]);
        }
        if self.eat_kw("fun") {
            let name = self.ident()?;
            self.expect_sym("(")?;
            let params = self.formals(&[")"])?;
            self.expect_sym(")")?;
            let body = self.body()?;
            self.expect_kw("return")?;
            let result = self.exp()?;
            self.expect_kw("as")?;
            let result_ty = self.typ()?;
            self.expect_kw("end")?;
            self.expect_kw("fun")?;
            return Ok(vec![Decl::Fun(FunDecl { name, params, body, result, result_ty })]);
        }
        Err(self.unexpected("a declaration"))
    }

    fn proc_decl(&mut self) -> PResult<ProcDecl> {
        self.expect_kw("proc")?;
        let name = self.ident()?;
        self.expect_sym("(")?;
        let (vals, refs) = if self.colloquial() {
            let (mut vals, mut refs) = (None, None);
            loop {
                if self.eat_sym(")") {
                    break;
                }
                let slot = if self.eat_kw("val") {
                    &mut vals
                } else if self.eat_kw("ref") {
                    &mut refs
                } else {
                    return Err(self.unexpected("`val`, `ref` or `)`"));
                };
                if slot.is_some() {
                    return Err(self.error("parameter section given twice"));
                }
                *slot = Some(self.formals(&["ref", "val", ")"])?);
            }
            (vals.unwrap_or_default(), refs.unwrap_or_default())
        } else {
            self.expect_kw("val")?;
            let vals = self.formals(&["ref"])?;
            self.expect_kw("ref")?;
            let refs = self.formals(&[")"])?;
            self.expect_sym(")")?;
            (vals, refs)
        };
        let body = self.body()?;
        if !self.eat_kw("endproc") {
            self.expect_kw("end")?;
            self.expect_kw("proc")?;
        }
        Ok(ProcDecl { name, vals, refs, body })
    }

    /// Formal parameters: `empty-fp` or `x as T, y as T`; colloquially
    /// `x, y as T` groups and an empty list are allowed.
    fn formals(&mut self, closers: &[&str]) -> PResult<Vec<FormalParam>> {
        if self.eat_kw("empty-fp") {
            return Ok(Vec::new());
        }
        let at_closer = closers.iter().any(|c| self.is_sym(c) || self.is_kw(c));
        if at_closer && self.colloquial() {
            return Ok(Vec::new());
        }
        let mut params = Vec::new();
        loop {
            let mut names = vec![self.ident()?];
            while self.is_sym(",") {
                self.colloquial_only("grouped parameters")?;
                self.bump();
                names.push(self.ident()?);
            }
            self.expect_kw("as")?;
            let ty = self.typ()?;
            params.extend(names.into_iter().map(|name| FormalParam { name, ty: ty.clone() }));
            if self.eat_sym(",") {
                continue;
            }
            if self.colloquial() && self.is_ident(0) {
                continue;
            }
            return Ok(params);
        }
    }

    fn is_sym_at(&self, k: usize, s: &str) -> bool {
        matches!(self.peek_at(k), Tok::Sym(x) if *x == s)
    }

    /// A program body without `begin-program … end-program`: declarations,
    /// then one instruction; the preamble ends at the last declaration.
    /// A run of `skip ;` followed by a declaration: those skips belong to
    /// the preamble.
    fn skips_before_decl(&self) -> bool {
        let mut k = 0;
        while self.is_kw_at(k, "skip") && self.is_sym_at(k + 1, ";") {
            k += 2;
            if self.starts_decl(k) {
                return true;
            }
        }
        false
    }

    pub(crate) fn body(&mut self) -> PResult<Program> {
        let mut preamble = Vec::new();
        loop {
            if self.starts_decl(0) {
                preamble.extend(self.decl()?);
                if self.eat_sym(";") && !(self.colloquial() && self.at_sequence_closer()) {
                    continue;
                }
                return Ok(Program::new(preamble, Instruction::Skip));
            }
            if self.skips_before_decl() {
                self.bump();
                self.bump();
                preamble.push(Decl::Skip);
                continue;
            }
            let ins = lower(&self.spec()?);
            return Ok(Program::new(preamble, ins));
        }
    }

    pub(crate) fn program(&mut self) -> PResult<Program> {
        if self.eat_kw("begin-program") {
            let p = self.body()?;
            self.expect_kw("end-program")?;
            return Ok(p);
        }
        if self.colloquial() {
            return self.body();
        }
        Err(self.unexpected("`begin-program`"))
    }

    pub(crate) fn finish<T>(&self, value: T) -> PResult<T> {
        self.expect_eof()?;
        Ok(value)
    }
}

fn parse_whole<T>(src: &str, dialect: Dialect, f: impl FnOnce(&mut Parser) -> PResult<T>) -> PResult<T> {
    let mut p = Parser::new(src, dialect)?;
    let v = f(&mut p)?;
    p.finish(v)
}

/// Parses a whole program.
pub fn parse_program(src: &str, dialect: Dialect) -> PResult<Program> {
    parse_whole(src, dialect, Parser::program)
}

pub fn parse_expression(src: &str, dialect: Dialect) -> PResult<DatExp> {
    parse_whole(src, dialect, Parser::exp)
}

pub fn parse_transfer(src: &str, dialect: Dialect) -> PResult<Transfer> {
    parse_whole(src, dialect, Parser::transfer)
}

pub fn parse_type(src: &str, dialect: Dialect) -> PResult<TypExp> {
    parse_whole(src, dialect, Parser::typ)
}

pub fn parse_condition(src: &str, dialect: Dialect) -> PResult<Condition> {
    parse_whole(src, dialect, Parser::condition)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn concrete(src: &str) -> PResult<Program> {
        parse_program(src, Dialect::Concrete)
    }

    #[test]
    fn sequences_nest_right() {
        let p = concrete("begin-program a := 1; b := 2; c := 3 end-program").unwrap();
        let assign = |x: &str, n| Instruction::Assign(x.into(), DatExp::num(n));
        assert_eq!(
            p.body,
            Instruction::Seq(
                Box::new(assign("a", 1)),
                Box::new(Instruction::Seq(Box::new(assign("b", 2)), Box::new(assign("c", 3))))
            )
        );
        assert!(p.preamble.is_empty());
    }

    #[test]
    fn trivial_program() {
        let p = concrete("begin-program skip end-program").unwrap();
        assert_eq!(p, Program::new(vec![], Instruction::Skip));
    }

    #[test]
    fn missing_else_is_an_error() {
        let err = concrete("begin-program if x then y := 1 end-program").unwrap_err();
        assert_eq!(err.line, 1);
        assert!(concrete("begin-program if x then y := 1 fi end-program").is_err());
    }

    #[test]
    fn keywords_are_reserved() {
        let err = concrete("begin-program value := 1 end-program").unwrap_err();
        assert!(err.message.contains("keyword"), "{err}");
    }

    #[test]
    fn preamble_split() {
        let p = concrete("begin-program let x be number tel ; skip ; set t as word tes ; x := 1 end-program").unwrap();
        assert_eq!(p.preamble.len(), 3);
        assert_eq!(p.preamble[1], Decl::Skip);
        let p = concrete("begin-program let x be number tel ; skip ; skip end-program").unwrap();
        assert_eq!(p.preamble.len(), 1);
        assert_eq!(p.body, Instruction::Seq(Box::new(Instruction::Skip), Box::new(Instruction::Skip)));
    }

    #[test]
    fn colloquial_priorities() {
        let e = parse_expression("x + y + z + x*y", Dialect::Colloquial).unwrap();
        let v = DatExp::var;
        let expected = DatExp::bin(
            BinOp::Add,
            DatExp::bin(BinOp::Add, DatExp::bin(BinOp::Add, v("x"), v("y")), v("z")),
            DatExp::bin(BinOp::Multiply, v("x"), v("y")),
        );
        assert_eq!(e, expected);
        assert!(parse_expression("x + y", Dialect::Concrete).is_err());
    }

    #[test]
    fn conditions_mix_data_and_validation() {
        let c = parse_condition("(x and defined-d (y))", Dialect::Concrete).unwrap();
        assert_eq!(
            c,
            Condition::And(Box::new(Condition::Data(DatExp::var("x"))), Box::new(Condition::DefinedD(DatExp::var("y"))))
        );
        let c = parse_condition("(x and y)", Dialect::Concrete).unwrap();
        assert_eq!(c, Condition::Data(DatExp::bin(BinOp::And, DatExp::var("x"), DatExp::var("y"))));
    }

    #[test]
    fn transfers() {
        let t = parse_transfer("(value < 10)", Dialect::Concrete).unwrap();
        assert_eq!(t, Transfer::pred(Comparison::Less, Transfer::Pass, Transfer::num(10)));
        let t = parse_transfer("2 + value < 10 and record.a > 0", Dialect::Colloquial).unwrap();
        assert_eq!(
            t,
            Transfer::and(
                Transfer::pred(
                    Comparison::Less,
                    Transfer::arith(ArithOp::Add, Transfer::num(2), Transfer::Pass),
                    Transfer::num(10)
                ),
                Transfer::pred(Comparison::Less, Transfer::num(0), Transfer::GetRe("a".into()))
            )
        );
    }

    #[test]
    fn record_type_entries() {
        let t = parse_type("record-type a, b as number, c of type word ee", Dialect::Colloquial).unwrap();
        let expected = TypExp::ExpandRecord(
            Box::new(TypExp::ExpandRecord(
                Box::new(TypExp::RecordType("a".into(), Box::new(TypExp::Number))),
                "b".into(),
                Box::new(TypExp::Number),
            )),
            "c".into(),
            Box::new(TypExp::Word),
        );
        assert_eq!(t, expected);
        assert!(parse_type("record-type a as number, b as word ee", Dialect::Concrete).is_err());
    }
}
