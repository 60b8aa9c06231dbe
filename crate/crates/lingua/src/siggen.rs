//! Many-sorted signatures, the equational grammars of their abstract
//! syntaxes, and reachability of carriers.
//!
//! A signature file holds one declaration per line:
//!
//! ```text
//! # comment
//! sort Empty                 # a carrier, possibly without constructors
//! 0    : -> NumExp           # a constant
//! plus : NumExp x NumExp -> NumExp
//! ```
//!
//! Carriers are ordered by first mention, functions by declaration.

use std::collections::BTreeSet;
use std::fmt;

/// Symbol used for a carrier whose language is empty.
pub const EMPTY_LANGUAGE: &str = "∅";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SignatureError {
    #[error("line {line}: expected `name : C1 x ... x Cn -> C`")]
    MissingArrow { line: usize },
    #[error("line {line}: expected `name : ...`")]
    MissingColon { line: usize },
    #[error("line {line}: invalid name `{name}`")]
    InvalidName { line: usize, name: String },
    #[error("line {line}: function `{name}` declared twice")]
    DuplicateFunction { line: usize, name: String },
    #[error("line {line}: carrier `{name}` declared twice")]
    DuplicateCarrier { line: usize, name: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constructor {
    pub name: String,
    pub arity: Vec<String>,
    pub sort: String,
}

impl Constructor {
    pub fn is_constant(&self) -> bool {
        self.arity.is_empty()
    }
}

/// A signature: carrier names, and constructors with their arities and sorts.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    carriers: Vec<String>,
    constructors: Vec<Constructor>,
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name != "x"
        && name != "->"
        && !name.chars().any(|c| c.is_whitespace() || matches!(c, ':' | '(' | ')' | ',' | '|' | '#'))
}

impl Signature {
    pub fn new() -> Self {
        Signature::default()
    }

    pub fn carriers(&self) -> &[String] {
        &self.carriers
    }

    pub fn constructors(&self) -> &[Constructor] {
        &self.constructors
    }

    pub fn constructor(&self, name: &str) -> Option<&Constructor> {
        self.constructors.iter().find(|c| c.name == name)
    }

    fn mention(&mut self, carrier: &str) {
        if !self.carriers.iter().any(|c| c == carrier) {
            self.carriers.push(carrier.to_string());
        }
    }

    /// Declares a carrier; returns `false` if it was already known.
    pub fn add_carrier(&mut self, name: &str) -> bool {
        let fresh = !self.carriers.iter().any(|c| c == name);
        self.mention(name);
        fresh
    }

    /// Adds a constructor (carriers are declared implicitly); returns `false`
    /// and leaves the signature unchanged if the name is taken.
    pub fn add_constructor(&mut self, name: &str, arity: &[&str], sort: &str) -> bool {
        if self.constructor(name).is_some() {
            return false;
        }
        for c in arity {
            self.mention(c);
        }
        self.mention(sort);
        self.constructors.push(Constructor {
            name: name.to_string(),
            arity: arity.iter().map(|c| c.to_string()).collect(),
            sort: sort.to_string(),
        });
        true
    }

    /// Constructors of the given sort, in declaration order.
    pub fn productions<'a>(&'a self, carrier: &'a str) -> impl Iterator<Item = &'a Constructor> + 'a {
        self.constructors.iter().filter(move |c| c.sort == carrier)
    }
}

/// Parses the line-oriented signature format.
pub fn parse_signature(text: &str) -> Result<Signature, SignatureError> {
    let mut sig = Signature::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix("sort ") {
            let name = rest.trim();
            if !valid_name(name) {
                return Err(SignatureError::InvalidName { line, name: name.to_string() });
            }
            if !sig.add_carrier(name) {
                return Err(SignatureError::DuplicateCarrier { line, name: name.to_string() });
            }
            continue;
        }
        let (name, profile) = content.split_once(':').ok_or(SignatureError::MissingColon { line })?;
        let name = name.trim();
        let profile = profile.replace('→', "->").replace('↦', "->").replace('×', " x ");
        let (args, sort) = profile.split_once("->").ok_or(SignatureError::MissingArrow { line })?;
        let sort = sort.trim();
        let args: Vec<&str> = args.split_whitespace().filter(|t| *t != "x").collect();
        for n in std::iter::once(&name).chain(std::iter::once(&sort)).chain(args.iter()) {
            if !valid_name(n) {
                return Err(SignatureError::InvalidName { line, name: n.to_string() });
            }
        }
        if !sig.add_constructor(name, &args, sort) {
            return Err(SignatureError::DuplicateFunction { line, name: name.to_string() });
        }
    }
    Ok(sig)
}

/// One grammar equation: a carrier's language as a union of monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub carrier: String,
    pub alternatives: Vec<Constructor>,
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = ", self.carrier)?;
        if self.alternatives.is_empty() {
            return f.write_str(EMPTY_LANGUAGE);
        }
        for (i, alt) in self.alternatives.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            f.write_str(&alt.name)?;
            if !alt.is_constant() {
                write!(f, "({})", alt.arity.join(", "))?;
            }
        }
        Ok(())
    }
}

/// The equational grammar of a signature's abstract syntax.
pub fn grammar(sig: &Signature) -> Vec<Equation> {
    sig.carriers()
        .iter()
        .map(|c| Equation { carrier: c.clone(), alternatives: sig.productions(c).cloned().collect() })
        .collect()
}

/// The grammar as text, one equation per line.
pub fn gen_grammar(sig: &Signature) -> String {
    grammar(sig).iter().map(|e| format!("{e}\n")).collect()
}

/// Carriers with a non-empty language: the least set closed under
/// "some constructor of this sort has all its argument carriers in the set".
pub fn reachable_carriers(sig: &Signature) -> BTreeSet<String> {
    let mut reached = BTreeSet::new();
    loop {
        let before = reached.len();
        for c in sig.constructors() {
            if c.arity.iter().all(|a| reached.contains(a)) {
                reached.insert(c.sort.clone());
            }
        }
        if reached.len() == before {
            return reached;
        }
    }
}

/// A ground term `f(t1, …, tn)` of the abstract syntax.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub head: String,
    pub args: Vec<Term>,
}

impl Term {
    pub fn constant(name: &str) -> Term {
        Term { head: name.to_string(), args: Vec::new() }
    }

    pub fn apply(name: &str, args: Vec<Term>) -> Term {
        Term { head: name.to_string(), args }
    }

    pub fn depth(&self) -> usize {
        1 + self.args.iter().map(Term::depth).max().unwrap_or(0)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.head)?;
        if !self.args.is_empty() {
            let args: Vec<String> = self.args.iter().map(ToString::to_string).collect();
            write!(f, "({})", args.join(", "))?;
        }
        Ok(())
    }
}

/// A grammar read back from its text form, used to validate terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grammar {
    equations: Vec<Equation>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("grammar line {line}: {message}")]
pub struct GrammarError {
    pub line: usize,
    pub message: String,
}

impl Grammar {
    /// Parses text produced by [`gen_grammar`].
    pub fn parse(text: &str) -> Result<Grammar, GrammarError> {
        let mut equations = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            if raw.trim().is_empty() {
                continue;
            }
            let err = |message: &str| GrammarError { line, message: message.to_string() };
            let (carrier, rhs) = raw.split_once(" = ").ok_or_else(|| err("expected `C = ...`"))?;
            let carrier = carrier.trim().to_string();
            let mut alternatives = Vec::new();
            if rhs.trim() != EMPTY_LANGUAGE {
                for alt in rhs.split(" | ") {
                    let alt = alt.trim();
                    let (name, arity) = match alt.split_once('(') {
                        None => (alt, Vec::new()),
                        Some((name, rest)) => {
                            let inner = rest.strip_suffix(')').ok_or_else(|| err("unclosed monomial"))?;
                            (name, inner.split(", ").map(str::to_string).collect())
                        }
                    };
                    alternatives.push(Constructor { name: name.to_string(), arity, sort: carrier.clone() });
                }
            }
            equations.push(Equation { carrier, alternatives });
        }
        Ok(Grammar { equations })
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    /// Whether the term belongs to the language of `carrier`.
    pub fn accepts(&self, carrier: &str, term: &Term) -> bool {
        let Some(eq) = self.equations.iter().find(|e| e.carrier == carrier) else {
            return false;
        };
        eq.alternatives.iter().any(|alt| {
            alt.name == term.head
                && alt.arity.len() == term.args.len()
                && alt.arity.iter().zip(&term.args).all(|(c, t)| self.accepts(c, t))
        })
    }
}
