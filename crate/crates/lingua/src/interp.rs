//! Evaluators for expressions, types, declarations, instructions and programs.

use std::collections::BTreeMap;
use std::fmt;
use std::rc::Rc;

use crate::ast::{BinOp, DatExp, Decl, Instruction, Program, TypExp};
use crate::limits::Limits;
use crate::ops::{and_c, cc_apply, Arg, Operation};
use crate::procedures::{has_repetitions, pass_actual, return_referential};
use crate::state::{Env, FunProc, ImpProc, Procedure, State, Value};
use crate::types::{Type, TypeE};
use crate::value::{catalog, fail, Body, Composite, CompositeE, Data, ErrorWord, Identifier};

/// Host-level interruption of an evaluation; never a Lingua error.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Abort {
    /// Step budget or call depth exhausted: the run is treated as non-terminating.
    #[error("step budget exhausted")]
    Budget,
    /// A condition that has no executable meaning (quantifiers).
    #[error("condition not executable: {0}")]
    NotExecutable(String),
}

pub type Outcome<T> = Result<T, Abort>;

pub const DEFAULT_MAX_STEPS: u64 = 10_000_000;
pub const DEFAULT_MAX_CALL_DEPTH: usize = 1_000;

type TraceHook = Box<dyn FnMut(&Instruction)>;

/// Interpreter configuration and the running step budget.
pub struct Machine {
    pub limits: Limits,
    steps_left: u64,
    depth: usize,
    max_call_depth: usize,
    trace: Option<TraceHook>,
}

impl Default for Machine {
    fn default() -> Self {
        Machine::new(Limits::default())
    }
}

impl fmt::Debug for Machine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Machine")
            .field("limits", &self.limits)
            .field("steps_left", &self.steps_left)
            .field("max_call_depth", &self.max_call_depth)
            .finish()
    }
}

impl Machine {
    pub fn new(limits: Limits) -> Self {
        Machine {
            limits,
            steps_left: DEFAULT_MAX_STEPS,
            depth: 0,
            max_call_depth: DEFAULT_MAX_CALL_DEPTH,
            trace: None,
        }
    }

    pub fn with_max_steps(mut self, steps: u64) -> Self {
        self.steps_left = steps;
        self
    }

    pub fn with_max_call_depth(mut self, depth: usize) -> Self {
        self.max_call_depth = depth;
        self
    }

    /// Installs a hook called once per executed atomic instruction.
    pub fn with_trace(mut self, hook: impl FnMut(&Instruction) + 'static) -> Self {
        self.trace = Some(Box::new(hook));
        self
    }

    pub fn steps_left(&self) -> u64 {
        self.steps_left
    }

    pub(crate) fn tick(&mut self) -> Outcome<()> {
        if self.steps_left == 0 {
            return Err(Abort::Budget);
        }
        self.steps_left -= 1;
        Ok(())
    }

    fn traced(&mut self, ins: &Instruction) {
        if let Some(hook) = self.trace.as_mut() {
            hook(ins);
        }
    }

    fn enter_call(&mut self) -> Outcome<()> {
        self.tick()?;
        if self.depth >= self.max_call_depth {
            return Err(Abort::Budget);
        }
        self.depth += 1;
        Ok(())
    }

    fn leave_call(&mut self) {
        self.depth -= 1;
    }

    // ----- data expressions -------------------------------------------------

    pub fn eval_exp(&mut self, e: &DatExp, s: &State) -> Outcome<CompositeE> {
        if let Some(err) = &s.error {
            return Ok(Err(err.clone()));
        }
        let limits = self.limits.clone();
        let apply = |op: Operation, args: Vec<Arg>| cc_apply(op, &args, &limits);
        Ok(match e {
            DatExp::Bool(b) => Ok(Composite::boolean(*b)),
            DatExp::Num(n) => apply_constant(Data::Number(n.clone()), Body::NUMBER, &limits),
            DatExp::Word(w) => apply_constant(Data::Word(w.clone()), Body::WORD, &limits),
            DatExp::Var(x) => match s.vars.get(x) {
                None => fail(catalog::UNDECLARED_VARIABLE),
                Some(v) => v.composite().ok_or_else(|| ErrorWord::new(catalog::UNINITIALIZED_VARIABLE)),
            },
            DatExp::Not(a) => crate::ops::not_c(&self.eval_exp(a, s)?),
            DatExp::Binary(BinOp::And, a, b) => {
                let ra = self.eval_exp(a, s)?;
                match decide(&ra) {
                    Decided::Stop(r) => r,
                    Decided::False => Ok(Composite::boolean(false)),
                    Decided::True => and_c(&ra, &self.eval_exp(b, s)?),
                }
            }
            DatExp::Binary(BinOp::Or, a, b) => {
                let ra = self.eval_exp(a, s)?;
                match decide(&ra) {
                    Decided::Stop(r) => r,
                    Decided::True => Ok(Composite::boolean(true)),
                    Decided::False => crate::ops::or_c(&ra, &self.eval_exp(b, s)?),
                }
            }
            DatExp::Binary(op, a, b) => {
                let ra = self.eval_exp(a, s)?;
                let rb = self.eval_exp(b, s)?;
                apply(binary_operation(*op), vec![ra.into(), rb.into()])
            }
            DatExp::List(a) => apply(Operation::CreateLi, vec![self.eval_exp(a, s)?.into()]),
            DatExp::Push(elem, list) => {
                let re = self.eval_exp(elem, s)?;
                let rl = self.eval_exp(list, s)?;
                apply(Operation::PushLi, vec![re.into(), rl.into()])
            }
            DatExp::Top(a) => apply(Operation::TopLi, vec![self.eval_exp(a, s)?.into()]),
            DatExp::Pop(a) => apply(Operation::PopLi, vec![self.eval_exp(a, s)?.into()]),
            DatExp::Array(a) => apply(Operation::CreateAr, vec![self.eval_exp(a, s)?.into()]),
            DatExp::AddToArr(arr, elem) => {
                let ra = self.eval_exp(arr, s)?;
                let re = self.eval_exp(elem, s)?;
                apply(Operation::PutToAr, vec![ra.into(), re.into()])
            }
            DatExp::ChangeArr(arr, idx, elem) => {
                let ra = self.eval_exp(arr, s)?;
                let ri = self.eval_exp(idx, s)?;
                let re = self.eval_exp(elem, s)?;
                apply(Operation::ChangeInAr, vec![ra.into(), ri.into(), re.into()])
            }
            DatExp::Arr(arr, idx) => {
                let ra = self.eval_exp(arr, s)?;
                let ri = self.eval_exp(idx, s)?;
                apply(Operation::GetFromAr, vec![ra.into(), ri.into()])
            }
            DatExp::Record(attr, v) => {
                apply(Operation::CreateRe, vec![attr.clone().into(), self.eval_exp(v, s)?.into()])
            }
            DatExp::AddAttr(attr, v, rec) => {
                let rv = self.eval_exp(v, s)?;
                let rr = self.eval_exp(rec, s)?;
                apply(Operation::PutToRe, vec![attr.clone().into(), rv.into(), rr.into()])
            }
            DatExp::Rec(rec, attr) => {
                apply(Operation::GetFromRe, vec![self.eval_exp(rec, s)?.into(), attr.clone().into()])
            }
            DatExp::RemoveAttr(attr, rec) => {
                apply(Operation::CutFromRe, vec![self.eval_exp(rec, s)?.into(), attr.clone().into()])
            }
            DatExp::ChangeRec(rec, attr, v) => {
                let rr = self.eval_exp(rec, s)?;
                let rv = self.eval_exp(v, s)?;
                apply(Operation::ChangeInRe, vec![rr.into(), attr.clone().into(), rv.into()])
            }
            DatExp::If(g, a, b) => match self.eval_exp(g, s)? {
                Err(e) => Err(e),
                Ok(c) => match c.as_bool() {
                    Some(true) => self.eval_exp(a, s)?,
                    Some(false) => self.eval_exp(b, s)?,
                    None => fail(catalog::BOOLEAN_EXPECTED),
                },
            },
            DatExp::Call(name, args) => self.call_fun(name, args, s)?,
        })
    }

    // ----- type expressions -------------------------------------------------

    pub fn eval_typ(&self, t: &TypExp, s: &State) -> TypeE {
        if let Some(err) = &s.error {
            return Err(err.clone());
        }
        eval_type(t, &s.env.types)
    }

    // ----- declarations and programs ----------------------------------------

    pub fn exec_decl(&mut self, d: &Decl, s: State) -> Outcome<State> {
        if s.is_error() {
            return Ok(s);
        }
        Ok(match d {
            Decl::Skip => s,
            Decl::Var(x, t) => {
                if s.declared(x) {
                    return Ok(s.load_error(ErrorWord::new(catalog::VARIABLE_DECLARED)));
                }
                match self.eval_typ(t, &s) {
                    Err(e) => s.load_error(e),
                    Ok(ty) => {
                        let mut s = s;
                        s.vars.insert(x.clone(), Value::uninitialized(ty));
                        s
                    }
                }
            }
            Decl::Type(x, t) => {
                if s.declared(x) {
                    return Ok(s.load_error(ErrorWord::new(catalog::IDENTIFIER_NOT_FREE)));
                }
                match self.eval_typ(t, &s) {
                    Err(e) => s.load_error(e),
                    Ok(ty) => {
                        let mut s = s;
                        s.env.types.insert(x.clone(), ty);
                        s
                    }
                }
            }
            Decl::Proc(p) => {
                if s.declared(&p.name) {
                    return Ok(s.load_error(ErrorWord::new(catalog::VARIABLE_DECLARED)));
                }
                if formals_repeat(p.vals.iter().chain(&p.refs)) {
                    return Ok(s.load_error(ErrorWord::new(catalog::FORMAL_PAR_REPETITIONS)));
                }
                let mut s = s;
                let proc = ImpProc { group: Rc::from(vec![p.clone()]), index: 0, env: Rc::new(s.env.clone()) };
                s.env.procs.insert(p.name.clone(), Procedure::Imperative(proc));
                s
            }
            Decl::MultiProc(ps) => {
                if has_repetitions(ps.iter().map(|p| &p.name)) {
                    return Ok(s.load_error(ErrorWord::new(catalog::PROCEDURE_NAMES_REPEATED)));
                }
                if ps.iter().any(|p| s.declared(&p.name)) {
                    return Ok(s.load_error(ErrorWord::new(catalog::PROCEDURE_DECLARED)));
                }
                if ps.iter().any(|p| formals_repeat(p.vals.iter().chain(&p.refs))) {
                    return Ok(s.load_error(ErrorWord::new(catalog::FORMAL_PAR_REPETITIONS)));
                }
                let mut s = s;
                let group: Rc<[_]> = Rc::from(ps.clone());
                let env = Rc::new(s.env.clone());
                for (index, p) in ps.iter().enumerate() {
                    let proc = ImpProc { group: group.clone(), index, env: env.clone() };
                    s.env.procs.insert(p.name.clone(), Procedure::Imperative(proc));
                }
                s
            }
            Decl::Fun(f) => {
                if s.declared(&f.name) {
                    return Ok(s.load_error(ErrorWord::new(catalog::VARIABLE_DECLARED)));
                }
                if formals_repeat(f.params.iter()) {
                    return Ok(s.load_error(ErrorWord::new(catalog::FORMAL_PAR_REPETITIONS)));
                }
                let mut s = s;
                let proc = FunProc { decl: Rc::new(f.clone()), env: Rc::new(s.env.clone()) };
                s.env.procs.insert(f.name.clone(), Procedure::Functional(proc));
                s
            }
        })
    }

    /// Runs the preamble and then the instruction.
    pub fn exec_program(&mut self, p: &Program, mut s: State) -> Outcome<State> {
        for d in &p.preamble {
            s = self.exec_decl(d, s)?;
        }
        self.exec(&p.body, s)
    }

    /// Runs a program from the initial state.
    pub fn run(&mut self, p: &Program) -> Outcome<State> {
        self.exec_program(p, State::initial())
    }

    // ----- instructions -----------------------------------------------------

    pub fn exec(&mut self, ins: &Instruction, s: State) -> Outcome<State> {
        // Sequences compose left-then-right, so a handler later in the
        // sequence still sees the error; every other instruction is transparent.
        if s.is_error() && !matches!(ins, Instruction::IfError(..) | Instruction::Seq(..)) {
            return Ok(s);
        }
        match ins {
            Instruction::Skip => Ok(s),
            Instruction::Assign(x, e) => {
                self.tick()?;
                self.traced(ins);
                self.assign(x, e, s)
            }
            Instruction::Yoke(x, t) => {
                self.tick()?;
                self.traced(ins);
                Ok(self.replace_tr(x, t, s))
            }
            Instruction::Seq(a, b) => {
                let s = self.exec(a, s)?;
                self.exec(b, s)
            }
            Instruction::If(g, a, b) => {
                self.tick()?;
                match self.eval_exp(g, &s)? {
                    Err(e) => Ok(s.load_error(e)),
                    Ok(c) => match c.as_bool() {
                        Some(true) => self.exec(a, s),
                        Some(false) => self.exec(b, s),
                        None => Ok(s.load_error(ErrorWord::new(catalog::BOOLEAN_EXPECTED))),
                    },
                }
            }
            Instruction::While(g, body) => {
                let mut s = s;
                loop {
                    if s.is_error() {
                        return Ok(s);
                    }
                    self.tick()?;
                    match self.eval_exp(g, &s)? {
                        Err(e) => return Ok(s.load_error(e)),
                        Ok(c) => match c.as_bool() {
                            Some(true) => s = self.exec(body, s)?,
                            Some(false) => return Ok(s),
                            None => return Ok(s.load_error(ErrorWord::new(catalog::BOOLEAN_EXPECTED))),
                        },
                    }
                }
            }
            Instruction::IfError(g, handler) => self.if_error(g, handler, s),
            Instruction::Call { proc, vals, refs } => {
                self.traced(ins);
                self.call_imp(proc, vals, refs, s)
            }
            Instruction::Assert(c) => self.assert(c, s),
        }
    }

    fn assign(&mut self, x: &Identifier, e: &DatExp, s: State) -> Outcome<State> {
        let Some(old) = s.vars.get(x) else {
            return Ok(s.load_error(ErrorWord::new(catalog::IDENTIFIER_NOT_DECLARED)));
        };
        let new = match self.eval_exp(e, &s)? {
            Err(err) => return Ok(s.load_error(err)),
            Ok(c) => c,
        };
        let yoke = old.ty.transfer.eval(&Ok(new.clone()), &self.limits);
        let verdict = match yoke {
            Err(err) => Some(err),
            Ok(_) if !coherent(&new.body, &old.ty.body) => Some(ErrorWord::new(catalog::NO_COHERENCE)),
            Ok(r) if r.as_bool().is_none() => Some(ErrorWord::new(catalog::A_YOKE_EXPECTED)),
            Ok(r) if !r.is_true() => Some(ErrorWord::new(catalog::YOKE_NOT_SATISFIED)),
            Ok(_) => None,
        };
        if let Some(err) = verdict {
            return Ok(s.load_error(err));
        }
        let value = Value::from_composite(new, old.ty.clone());
        let mut s = s;
        s.vars.insert(x.clone(), value);
        Ok(s)
    }

    fn replace_tr(&mut self, x: &Identifier, t: &crate::transfer::Transfer, s: State) -> State {
        let Some(old) = s.vars.get(x) else {
            return s.load_error(ErrorWord::new(catalog::IDENTIFIER_NOT_DECLARED));
        };
        if let Some(c) = old.composite() {
            if !t.admits(&c, &self.limits) {
                return s.load_error(ErrorWord::new(catalog::YOKE_NOT_SATISFIED));
            }
        }
        let mut value = old.clone();
        value.ty.transfer = t.clone();
        let mut s = s;
        s.vars.insert(x.clone(), value);
        s
    }

    fn if_error(&mut self, g: &DatExp, handler: &Instruction, s: State) -> Outcome<State> {
        let Some(err) = s.error.clone() else {
            return Ok(s);
        };
        self.tick()?;
        let mut cleaned = s.clone();
        cleaned.error = None;
        let handled = match self.eval_exp(g, &cleaned)? {
            Err(e) => return Ok(s.load_error(e.annotate(catalog::ERROR_HANDLING_NOT_EXECUTED))),
            Ok(c) => c,
        };
        let Data::Word(word) = &handled.data else {
            let e = ErrorWord::new(catalog::WORD_EXPECTED);
            return Ok(s.load_error(e.annotate(catalog::ERROR_HANDLING_NOT_EXECUTED)));
        };
        if word != err.as_str() {
            return Ok(s);
        }
        let after = self.exec(handler, cleaned)?;
        match after.error.clone() {
            Some(e2) => Ok(s.load_error(e2.annotate(catalog::ERROR_HANDLING_NOT_EXECUTED))),
            None => Ok(after.load_error(err.annotate(catalog::ERROR_HANDLING_EXECUTED))),
        }
    }

    // ----- procedure calls --------------------------------------------------

    fn call_imp(&mut self, name: &Identifier, vals: &[Identifier], refs: &[Identifier], s: State) -> Outcome<State> {
        let proc = match s.env.procs.get(name) {
            None => return Ok(s.load_error(ErrorWord::new(catalog::PROCEDURE_NOT_DECLARED))),
            Some(Procedure::Functional(_)) => {
                return Ok(s.load_error(ErrorWord::new(catalog::PROCEDURE_NOT_IMPERATIVE)))
            }
            Some(Procedure::Imperative(p)) => p.clone(),
        };
        let decl = proc.decl();
        let local = match pass_actual(&decl.vals, &decl.refs, vals, refs, &proc.env.types, &s.vars, &self.limits) {
            Err(e) => return Ok(s.load_error(e)),
            Ok(v) => v,
        };
        self.enter_call()?;
        let body_state = State { env: proc.local_env(), vars: local, error: None };
        let terminal = self.exec_program(&decl.body, body_state);
        self.leave_call();
        let terminal = terminal?;
        if let Some(e) = terminal.error {
            return Ok(s.load_error(e));
        }
        match return_referential(&decl.refs, refs, &proc.env.types, &terminal.vars, &s.vars, &self.limits) {
            Err(e) => Ok(s.load_error(e)),
            Ok(vars) => {
                let mut s = s;
                s.vars = vars;
                Ok(s)
            }
        }
    }

    fn call_fun(&mut self, name: &Identifier, args: &[Identifier], s: &State) -> Outcome<CompositeE> {
        let proc = match s.env.procs.get(name) {
            None => return Ok(fail(catalog::PROCEDURE_NOT_DECLARED)),
            Some(Procedure::Imperative(_)) => return Ok(fail(catalog::PROCEDURE_NOT_FUNCTIONAL)),
            Some(Procedure::Functional(f)) => f.clone(),
        };
        let decl = &proc.decl;
        let local = match pass_actual(&decl.params, &[], args, &[], &proc.env.types, &s.vars, &self.limits) {
            Err(e) => return Ok(Err(e)),
            Ok(v) => v,
        };
        self.enter_call()?;
        let body_state = State { env: (*proc.env).clone(), vars: local, error: None };
        let result = self.exec_program(&decl.body, body_state).and_then(|t| self.export(decl, &t));
        self.leave_call();
        result
    }

    fn export(&mut self, decl: &crate::ast::FunDecl, t: &State) -> Outcome<CompositeE> {
        if let Some(e) = &t.error {
            return Ok(Err(e.clone()));
        }
        let ty = match self.eval_typ(&decl.result_ty, t) {
            Err(e) => return Ok(Err(e)),
            Ok(ty) => ty,
        };
        let c = match self.eval_exp(&decl.result, t)? {
            Err(e) => return Ok(Err(e)),
            Ok(c) => c,
        };
        if !coherent(&c.body, &ty.body) {
            return Ok(fail(catalog::BODIES_NOT_COHERENT));
        }
        if !ty.transfer.admits(&c, &self.limits) {
            return Ok(fail(catalog::YOKE_NOT_SATISFIED));
        }
        Ok(Ok(c))
    }
}

enum Decided {
    Stop(CompositeE),
    True,
    False,
}

/// Inspects the left operand of a lazy connective.
fn decide(r: &CompositeE) -> Decided {
    match r {
        Err(e) => Decided::Stop(Err(e.clone())),
        Ok(c) => match c.as_bool() {
            Some(true) => Decided::True,
            Some(false) => Decided::False,
            None => Decided::Stop(fail(catalog::BOOLEAN_EXPECTED)),
        },
    }
}

fn apply_constant(data: Data, body: Body, limits: &Limits) -> CompositeE {
    let data = data.round(limits);
    if data.oversized(limits) {
        return fail(catalog::OVERLOAD);
    }
    Ok(Composite { data, body })
}

fn binary_operation(op: BinOp) -> Operation {
    match op {
        BinOp::Equal => Operation::Equal,
        BinOp::Less => Operation::Less,
        BinOp::Leq => Operation::Leq,
        BinOp::Add => Operation::Add,
        BinOp::Subtract => Operation::Subtract,
        BinOp::Multiply => Operation::Multiply,
        BinOp::Divide => Operation::Divide,
        BinOp::Glue => Operation::Glue,
        BinOp::And | BinOp::Or => unreachable!("connectives are evaluated lazily"),
    }
}

fn formals_repeat<'a>(params: impl Iterator<Item = &'a crate::ast::FormalParam>) -> bool {
    has_repetitions(params.map(|p| &p.name))
}

/// Evaluates a type expression against a type environment.
pub fn eval_type(t: &TypExp, types: &BTreeMap<Identifier, Type>) -> TypeE {
    Ok(match t {
        TypExp::Boolean => Type::boolean(),
        TypExp::Number => Type::number(),
        TypExp::Word => Type::word(),
        TypExp::Named(x) => types.get(x).cloned().ok_or_else(|| ErrorWord::new(catalog::TYPE_CONSTANT_UNDEFINED))?,
        TypExp::ListType(inner) => eval_type(inner, types)?.list_of(),
        TypExp::ArrayType(inner) => eval_type(inner, types)?.array_of(),
        TypExp::RecordType(attr, inner) => Type::record_of(attr.clone(), eval_type(inner, types)?),
        TypExp::ExpandRecord(rec, attr, inner) => {
            let rec = eval_type(rec, types)?;
            let inner = eval_type(inner, types)?;
            rec.put_attribute(attr.clone(), inner)?
        }
        TypExp::ReduceRecord(rec, attr) => eval_type(rec, types)?.cut_attribute(attr)?,
        TypExp::ReplaceTransfer(inner, tr) => eval_type(inner, types)?.replace_transfer(tr.clone()),
    })
}

/// Bodies are coherent when equal, or when both are records whose attribute
/// sets are comparable by inclusion and agree on the shared attributes.
pub fn coherent(a: &Body, b: &Body) -> bool {
    if a == b {
        return true;
    }
    let (Body::Record(x), Body::Record(y)) = (a, b) else {
        return false;
    };
    let shared_agree = x.iter().all(|(k, bx)| y.get(k).is_none_or(|by| by == bx));
    let comparable = x.keys().all(|k| y.contains_key(k)) || y.keys().all(|k| x.contains_key(k));
    shared_agree && comparable
}

/// Convenience for callers that only have an [`Env`].
pub fn eval_type_in(t: &TypExp, env: &Env) -> TypeE {
    eval_type(t, &env.types)
}
