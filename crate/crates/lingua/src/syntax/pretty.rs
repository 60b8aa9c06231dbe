//! Canonical concrete-syntax rendering: one construct per line, two-space
//! indentation, fully parenthesized expressions.

use crate::ast::{Condition, DatExp, Decl, FormalParam, FunDecl, Instruction, ProcDecl, Program, TypExp};
use crate::value::Identifier;

const INDENT: &str = "  ";

pub fn pretty_exp(e: &DatExp) -> String {
    let p = pretty_exp;
    match e {
        DatExp::Bool(b) => b.to_string(),
        DatExp::Num(n) => n.to_string(),
        DatExp::Word(w) => format!("'{w}'"),
        DatExp::Var(x) => x.to_string(),
        DatExp::Not(a) => format!("(not {})", p(a)),
        DatExp::Binary(op, a, b) => format!("({} {} {})", p(a), op.symbol(), p(b)),
        DatExp::List(a) => format!("list {} ee", p(a)),
        DatExp::Push(x, l) => format!("push {} on {} ee", p(x), p(l)),
        DatExp::Top(a) => format!("top ({})", p(a)),
        DatExp::Pop(a) => format!("pop ({})", p(a)),
        DatExp::Array(a) => format!("array {} ee", p(a)),
        DatExp::AddToArr(a, x) => format!("add-to-arr {} new {} ee", p(a), p(x)),
        DatExp::ChangeArr(a, i, x) => format!("change-arr {} at {} by {} ee", p(a), p(i), p(x)),
        DatExp::Arr(a, i) => format!("arr {} at {} ee", p(a), p(i)),
        DatExp::Record(k, v) => format!("record {k} of-value {} ee", p(v)),
        DatExp::AddAttr(k, v, r) => format!("add-attr {k} of-value {} to {} ee", p(v), p(r)),
        DatExp::Rec(r, k) => format!("rec {} at {k} ee", p(r)),
        DatExp::RemoveAttr(k, r) => format!("remove-attr {k} from {} ee", p(r)),
        DatExp::ChangeRec(r, k, v) => format!("change-rec {} at {k} by {} ee", p(r), p(v)),
        DatExp::If(g, a, b) => format!("if {} then {} else {} fi", p(g), p(a), p(b)),
        DatExp::Call(f, args) => format!("{f}({})", actuals(args)),
    }
}

fn actuals(args: &[Identifier]) -> String {
    if args.is_empty() {
        return "empty-ap".to_string();
    }
    args.iter().map(Identifier::as_str).collect::<Vec<_>>().join(", ")
}

fn formals(params: &[FormalParam]) -> String {
    if params.is_empty() {
        return "empty-fp".to_string();
    }
    params.iter().map(|f| format!("{} as {}", f.name, pretty_type(&f.ty))).collect::<Vec<_>>().join(", ")
}

pub fn pretty_type(t: &TypExp) -> String {
    let p = pretty_type;
    match t {
        TypExp::Boolean => "boolean".to_string(),
        TypExp::Number => "number".to_string(),
        TypExp::Word => "word".to_string(),
        TypExp::Named(x) => x.to_string(),
        TypExp::ListType(a) => format!("list-type {} ee", p(a)),
        TypExp::ArrayType(a) => format!("array-type {} ee", p(a)),
        TypExp::RecordType(k, a) => format!("record-type {k} as {} ee", p(a)),
        TypExp::ExpandRecord(r, k, a) => format!("expand-record-type {} at {k} by {} ee", p(r), p(a)),
        TypExp::ReduceRecord(r, k) => format!("reduce-record-type {} at {k} ee", p(r)),
        TypExp::ReplaceTransfer(a, tr) => format!("replace-transfer-in {} by {tr} ee", p(a)),
    }
}

pub fn pretty_condition(c: &Condition) -> String {
    let p = pretty_condition;
    match c {
        Condition::Data(e) => pretty_exp(e),
        Condition::True => "TT".to_string(),
        Condition::False => "FF".to_string(),
        Condition::DefinedD(e) => format!("defined-d ({})", pretty_exp(e)),
        Condition::DefinedT(t) => format!("defined-t ({})", pretty_type(t)),
        Condition::Is(x, t) => format!("{x} is {}", pretty_type(t)),
        Condition::ConformantWith(x, e) => format!("{x} conformant-with {}", pretty_exp(e)),
        Condition::After(i, c) => {
            let lines = instruction_lines(i);
            let flat: Vec<&str> = lines.iter().map(|l| l.trim()).collect();
            format!("[{} @ {}]", flat.join(" "), p(c))
        }
        Condition::And(a, b) => format!("({} and {})", p(a), p(b)),
        Condition::Or(a, b) => format!("({} or {})", p(a), p(b)),
        Condition::Not(a) => format!("(not {})", p(a)),
        Condition::ForAll(x, c) => format!("(for-all {x} : {})", p(c)),
        Condition::Exists(x, c) => format!("(exists {x} : {})", p(c)),
    }
}

fn indented(lines: Vec<String>) -> impl Iterator<Item = String> {
    lines.into_iter().map(|l| format!("{INDENT}{l}"))
}

/// Joins blocks with ` ;` appended to the last line of every block but the last.
fn join_blocks(blocks: Vec<Vec<String>>) -> Vec<String> {
    let n = blocks.len();
    let mut out = Vec::new();
    for (k, mut block) in blocks.into_iter().enumerate() {
        if k + 1 < n {
            if let Some(last) = block.last_mut() {
                last.push_str(" ;");
            }
        }
        out.extend(block);
    }
    out
}

fn instruction_lines(i: &Instruction) -> Vec<String> {
    match i {
        Instruction::Seq(..) => join_blocks(i.components().into_iter().map(instruction_lines).collect()),
        Instruction::Assign(x, e) => vec![format!("{x} := {}", pretty_exp(e))],
        Instruction::Yoke(x, t) => vec![format!("yoke {x} := {t}")],
        Instruction::Skip => vec!["skip".to_string()],
        Instruction::If(g, a, b) => {
            let mut out = vec![format!("if {} then", pretty_exp(g))];
            out.extend(indented(instruction_lines(a)));
            out.push("else".to_string());
            out.extend(indented(instruction_lines(b)));
            out.push("fi".to_string());
            out
        }
        Instruction::IfError(g, h) => {
            let mut out = vec![format!("if-error {} then", pretty_exp(g))];
            out.extend(indented(instruction_lines(h)));
            out.push("fi".to_string());
            out
        }
        Instruction::While(g, b) => {
            let mut out = vec![format!("while {} do", pretty_exp(g))];
            out.extend(indented(instruction_lines(b)));
            out.push("od".to_string());
            out
        }
        Instruction::Call { proc, vals, refs } => {
            vec![format!("call {proc} (val {} ref {})", actuals(vals), actuals(refs))]
        }
        Instruction::Assert(c) => vec![format!("asr {} rsa", pretty_condition(c))],
    }
}

fn proc_lines(p: &ProcDecl) -> Vec<String> {
    let mut out = vec![format!("proc {} (val {} ref {})", p.name, formals(&p.vals), formals(&p.refs))];
    out.extend(indented(body_lines(&p.body)));
    out.push("end proc".to_string());
    out
}

fn fun_lines(f: &FunDecl) -> Vec<String> {
    let mut out = vec![format!("fun {} ({})", f.name, formals(&f.params))];
    out.extend(indented(body_lines(&f.body)));
    out.push(format!("return {} as {}", pretty_exp(&f.result), pretty_type(&f.result_ty)));
    out.push("end fun".to_string());
    out
}

fn decl_lines(d: &Decl) -> Vec<String> {
    match d {
        Decl::Skip => vec!["skip".to_string()],
        Decl::Var(x, t) => vec![format!("let {x} be {} tel", pretty_type(t))],
        Decl::Type(x, t) => vec![format!("set {x} as {} tes", pretty_type(t))],
        Decl::Proc(p) => proc_lines(p),
        Decl::MultiProc(ps) => {
            let mut out = vec!["begin multiproc".to_string()];
            for p in ps {
                out.extend(indented(proc_lines(p)));
            }
            out.push("end multiproc".to_string());
            out
        }
        Decl::Fun(f) => fun_lines(f),
    }
}

/// A program body: preamble items and the instruction, `;`-separated.
fn body_lines(p: &Program) -> Vec<String> {
    let mut blocks: Vec<Vec<String>> = p.preamble.iter().map(decl_lines).collect();
    blocks.push(instruction_lines(&p.body));
    join_blocks(blocks)
}

pub fn pretty_instruction(i: &Instruction) -> String {
    instruction_lines(i).join("\n")
}

pub fn pretty_decl(d: &Decl) -> String {
    decl_lines(d).join("\n")
}

pub fn pretty_program(p: &Program) -> String {
    let mut out = vec!["begin-program".to_string()];
    out.extend(indented(body_lines(p)));
    out.push("end-program".to_string());
    out.join("\n") + "\n"
}
