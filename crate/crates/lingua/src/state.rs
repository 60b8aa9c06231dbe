//! Memory states: environments, valuation and the error register.

use std::collections::BTreeMap;
use std::rc::Rc;

use crate::ast::{FunDecl, ProcDecl};
use crate::types::Type;
use crate::value::{Composite, Data, ErrorWord, Identifier};

/// A typed data or a pseudo-value (`data == None`, written Ω).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Value {
    pub data: Option<Data>,
    pub ty: Type,
}

impl Value {
    pub fn uninitialized(ty: Type) -> Self {
        Value { data: None, ty }
    }

    pub fn from_composite(c: Composite, ty: Type) -> Self {
        Value { data: Some(c.data), ty: Type { body: c.body, ..ty } }
    }

    /// The composite carried by this value; `None` for Ω.
    pub fn composite(&self) -> Option<Composite> {
        self.data.as_ref().map(|d| Composite { data: d.clone(), body: self.ty.body.clone() })
    }
}

/// Type and procedure environments.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Env {
    pub types: BTreeMap<Identifier, Type>,
    pub procs: BTreeMap<Identifier, Procedure>,
}

/// An imperative procedure: one member of a (possibly single) group of
/// mutually recursive siblings, closed over its declaration environment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImpProc {
    pub group: Rc<[ProcDecl]>,
    pub index: usize,
    pub env: Rc<Env>,
}

impl ImpProc {
    pub fn decl(&self) -> &ProcDecl {
        &self.group[self.index]
    }

    /// The call-time local environment: the declaration environment with every
    /// sibling (including this procedure) bound.
    pub fn local_env(&self) -> Env {
        let mut env = (*self.env).clone();
        for (index, decl) in self.group.iter().enumerate() {
            let sibling = ImpProc { group: self.group.clone(), index, env: self.env.clone() };
            env.procs.insert(decl.name.clone(), Procedure::Imperative(sibling));
        }
        env
    }
}

/// A functional procedure, closed over its declaration environment (which
/// does not contain the procedure itself).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunProc {
    pub decl: Rc<FunDecl>,
    pub env: Rc<Env>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Procedure {
    Imperative(ImpProc),
    Functional(FunProc),
}

/// A full memory state.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct State {
    pub env: Env,
    pub vars: BTreeMap<Identifier, Value>,
    /// `None` is the `OK` register.
    pub error: Option<ErrorWord>,
}

impl State {
    /// The initial state: all maps empty, register `OK`.
    pub fn initial() -> Self {
        State::default()
    }

    pub fn is_error(&self) -> bool {
        self.error.is_some()
    }

    /// The register contents, `OK` when clear.
    pub fn error_of(&self) -> &str {
        self.error.as_ref().map_or("OK", |e| e.as_str())
    }

    pub fn load_error(mut self, e: ErrorWord) -> State {
        self.error = Some(e);
        self
    }

    /// Bound in any of the type environment, procedure environment or valuation.
    pub fn declared(&self, ide: &Identifier) -> bool {
        self.env.types.contains_key(ide) || self.env.procs.contains_key(ide) || self.vars.contains_key(ide)
    }

    /// The three key sets are pairwise disjoint.
    pub fn is_disjoint(&self) -> bool {
        let t = &self.env.types;
        let p = &self.env.procs;
        let v = &self.vars;
        t.keys().all(|k| !p.contains_key(k) && !v.contains_key(k)) && p.keys().all(|k| !v.contains_key(k))
    }
}
