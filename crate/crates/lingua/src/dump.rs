//! Deterministic text rendering of a memory state.
//!
//! One line per binding, `kind ide = rendering`, with kinds `var`, `type`
//! and `proc`; keys are sorted and the last line shows the error register.

use std::fmt::Write as _;

use crate::ast::FormalParam;
use crate::state::{Procedure, State};
use crate::syntax::pretty_type;
use crate::value::Identifier;

/// Rendering of an uninitialized variable.
pub const PSEUDO_VALUE: &str = "Ω";

fn params(list: &[FormalParam]) -> String {
    if list.is_empty() {
        return "empty-fp".to_string();
    }
    list.iter().map(|p| format!("{} as {}", p.name, pretty_type(&p.ty))).collect::<Vec<_>>().join(", ")
}

fn render_procedure(p: &Procedure) -> String {
    match p {
        Procedure::Imperative(imp) => {
            let d = imp.decl();
            format!("imperative (val {} ref {})", params(&d.vals), params(&d.refs))
        }
        Procedure::Functional(fun) => {
            let d = &fun.decl;
            format!("functional ({}) as {}", params(&d.params), pretty_type(&d.result_ty))
        }
    }
}

/// Renders the full state dump, newline-terminated.
pub fn dump_state(s: &State) -> String {
    let mut lines: Vec<(&Identifier, String)> = Vec::new();
    for (name, value) in &s.vars {
        let rendering = value.data.as_ref().map_or_else(|| PSEUDO_VALUE.to_string(), ToString::to_string);
        lines.push((name, format!("var {name} = {rendering}")));
    }
    for (name, ty) in &s.env.types {
        lines.push((name, format!("type {name} = {ty}")));
    }
    for (name, p) in &s.env.procs {
        lines.push((name, format!("proc {name} = {}", render_procedure(p))));
    }
    lines.sort();
    let mut out = String::new();
    for (_, line) in lines {
        out.push_str(&line);
        out.push('\n');
    }
    let _ = writeln!(out, "error = {}", s.error_of());
    out
}
