//! Shared generators for property tests and the acceptance harness.
#![allow(dead_code)]

use lingua::ast::{BinOp, Condition, DatExp, Decl, FormalParam, FunDecl, Instruction, ProcDecl, Program, TypExp};
use lingua::state::Value;
use lingua::transfer::{Aggregate, ArithOp, Comparison, NumPredicate, Transfer};
use lingua::types::Type;
use lingua::value::{Composite, ErrorWord, Identifier};
use lingua::{Decimal, State};
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::TestRunner;

pub const VARS: &[&str] = &["x", "y", "z", "flag", "name", "items"];
pub const ATTRS: &[&str] = &["ch-name", "age", "tag"];
pub const WORDS: &[&str] = &["a", "star of sales", "", "overload", "division-by-zero"];
/// Error words planted in error-carrying states; none of them is raised by
/// the generated programs themselves.
pub const PLANTED_ERRORS: &[&str] = &["planted", "disk-full", "identifier-not-declared"];

/// Draws `n` values from a strategy with a fixed seed.
pub fn sample<S: Strategy>(strategy: S, n: usize) -> Vec<S::Value> {
    let mut runner = TestRunner::deterministic();
    (0..n).map(|_| strategy.new_tree(&mut runner).expect("strategy").current()).collect()
}

pub fn ident() -> impl Strategy<Value = Identifier> {
    prop::sample::select(VARS).prop_map(Identifier::new)
}

fn attr() -> impl Strategy<Value = Identifier> {
    prop::sample::select(ATTRS).prop_map(Identifier::new)
}

pub fn number() -> impl Strategy<Value = Decimal> {
    prop_oneof![
        4 => (0i64..20).prop_map(Decimal::from),
        1 => (0i64..100, 1u32..3).prop_map(|(c, s)| Decimal::new(c.into(), s)),
    ]
}

fn word() -> impl Strategy<Value = String> {
    prop::sample::select(WORDS).prop_map(str::to_string)
}

fn bin_op() -> impl Strategy<Value = BinOp> {
    prop::sample::select(vec![
        BinOp::And,
        BinOp::Or,
        BinOp::Equal,
        BinOp::Less,
        BinOp::Leq,
        BinOp::Add,
        BinOp::Subtract,
        BinOp::Multiply,
        BinOp::Divide,
        BinOp::Glue,
    ])
}

/// Data expressions of bounded depth over every constructor.
pub fn dat_exp(depth: u32) -> BoxedStrategy<DatExp> {
    let leaf = prop_oneof![
        any::<bool>().prop_map(DatExp::Bool),
        number().prop_map(DatExp::Num),
        word().prop_map(DatExp::Word),
        ident().prop_map(DatExp::Var),
    ]
    .boxed();
    if depth == 0 {
        return leaf;
    }
    let sub = || dat_exp(depth - 1);
    prop_oneof![
        3 => leaf,
        2 => (bin_op(), sub(), sub()).prop_map(|(op, x, y)| DatExp::Binary(op, Box::new(x), Box::new(y))),
        1 => sub().prop_map(|x| DatExp::Not(Box::new(x))),
        1 => sub().prop_map(|x| DatExp::List(Box::new(x))),
        1 => (sub(), sub()).prop_map(|(x, l)| DatExp::Push(Box::new(x), Box::new(l))),
        1 => sub().prop_map(|x| DatExp::Top(Box::new(x))),
        1 => sub().prop_map(|x| DatExp::Pop(Box::new(x))),
        1 => sub().prop_map(|x| DatExp::Array(Box::new(x))),
        1 => (sub(), sub()).prop_map(|(a, x)| DatExp::AddToArr(Box::new(a), Box::new(x))),
        1 => (sub(), sub(), sub()).prop_map(|(a, i, x)| DatExp::ChangeArr(Box::new(a), Box::new(i), Box::new(x))),
        1 => (sub(), sub()).prop_map(|(a, i)| DatExp::Arr(Box::new(a), Box::new(i))),
        1 => (attr(), sub()).prop_map(|(k, v)| DatExp::Record(k, Box::new(v))),
        1 => (attr(), sub(), sub()).prop_map(|(k, v, r)| DatExp::AddAttr(k, Box::new(v), Box::new(r))),
        1 => (sub(), attr()).prop_map(|(r, k)| DatExp::Rec(Box::new(r), k)),
        1 => (attr(), sub()).prop_map(|(k, r)| DatExp::RemoveAttr(k, Box::new(r))),
        1 => (sub(), attr(), sub()).prop_map(|(r, k, v)| DatExp::ChangeRec(Box::new(r), k, Box::new(v))),
        1 => (sub(), sub(), sub()).prop_map(|(g, x, y)| DatExp::If(Box::new(g), Box::new(x), Box::new(y))),
        1 => prop::collection::vec(ident(), 0..3).prop_map(|args| DatExp::Call(Identifier::new("F"), args)),
    ]
    .boxed()
}

pub fn transfer(depth: u32) -> BoxedStrategy<Transfer> {
    let leaf = prop_oneof![
        number().prop_map(Transfer::ConstNum),
        word().prop_map(Transfer::ConstWord),
        any::<bool>().prop_map(Transfer::ConstBool),
        Just(Transfer::GetLi),
        attr().prop_map(Transfer::GetRe),
        Just(Transfer::Pass),
    ]
    .boxed();
    if depth == 0 {
        return leaf;
    }
    let sub = || transfer(depth - 1);
    let arith = prop::sample::select(vec![ArithOp::Add, ArithOp::Subtract, ArithOp::Multiply, ArithOp::Divide, ArithOp::Glue]);
    let cmp = prop::sample::select(vec![Comparison::Equal, Comparison::Less, Comparison::Leq]);
    prop_oneof![
        3 => leaf,
        1 => (arith, sub(), sub()).prop_map(|(op, x, y)| Transfer::Arith(op, Box::new(x), Box::new(y))),
        1 => (prop::sample::select(vec![Aggregate::Sum, Aggregate::Max]), sub()).prop_map(|(a, t)| Transfer::Agg(a, Box::new(t))),
        1 => (cmp, sub(), sub()).prop_map(|(op, x, y)| Transfer::Pred(op, Box::new(x), Box::new(y))),
        1 => (prop::sample::select(vec![NumPredicate::SmallNumber, NumPredicate::Increasing]), sub())
            .prop_map(|(p, t)| Transfer::Pred1(p, Box::new(t))),
        1 => (sub(), sub()).prop_map(|(x, y)| Transfer::and(x, y)),
        1 => (sub(), sub()).prop_map(|(x, y)| Transfer::or(x, y)),
        1 => sub().prop_map(Transfer::not),
        1 => sub().prop_map(|t| Transfer::AllOnLi(Box::new(t))),
        1 => sub().prop_map(|t| Transfer::AllInAr(Box::new(t))),
        1 => sub().prop_map(|t| Transfer::GetAr(Box::new(t))),
        1 => (sub(), sub()).prop_map(|(x, y)| Transfer::compose(x, y)),
    ]
    .boxed()
}

pub fn typ_exp(depth: u32) -> BoxedStrategy<TypExp> {
    let leaf = prop_oneof![
        Just(TypExp::Boolean),
        Just(TypExp::Number),
        Just(TypExp::Word),
        Just(TypExp::Named(Identifier::new("T"))),
    ]
    .boxed();
    if depth == 0 {
        return leaf;
    }
    let sub = || typ_exp(depth - 1);
    prop_oneof![
        3 => leaf,
        1 => sub().prop_map(|t| TypExp::ListType(Box::new(t))),
        1 => sub().prop_map(|t| TypExp::ArrayType(Box::new(t))),
        1 => (attr(), sub()).prop_map(|(k, t)| TypExp::RecordType(k, Box::new(t))),
        1 => (sub(), attr(), sub()).prop_map(|(r, k, t)| TypExp::ExpandRecord(Box::new(r), k, Box::new(t))),
        1 => (sub(), attr()).prop_map(|(r, k)| TypExp::ReduceRecord(Box::new(r), k)),
        1 => (sub(), transfer(1)).prop_map(|(t, tr)| TypExp::ReplaceTransfer(Box::new(t), tr)),
    ]
    .boxed()
}

/// Conditions built through the smart constructors, as the parser builds them.
pub fn condition(depth: u32) -> BoxedStrategy<Condition> {
    let leaf = prop_oneof![
        2 => dat_exp(1).prop_map(Condition::Data),
        1 => Just(Condition::True),
        1 => Just(Condition::False),
        1 => dat_exp(1).prop_map(Condition::DefinedD),
        1 => typ_exp(1).prop_map(Condition::DefinedT),
        1 => (ident(), typ_exp(1)).prop_map(|(x, t)| Condition::Is(x, t)),
        1 => (ident(), dat_exp(1)).prop_map(|(x, e)| Condition::ConformantWith(x, e)),
    ]
    .boxed();
    if depth == 0 {
        return leaf;
    }
    let sub = || condition(depth - 1);
    prop_oneof![
        3 => leaf,
        1 => (sub(), sub()).prop_map(|(a, b)| Condition::and(a, b)),
        1 => (sub(), sub()).prop_map(|(a, b)| Condition::or(a, b)),
        1 => sub().prop_map(Condition::not),
        1 => (instruction(1), sub()).prop_map(|(i, c)| Condition::After(Box::new(i), Box::new(c))),
        1 => (ident(), sub()).prop_map(|(x, c)| Condition::ForAll(x, Box::new(c))),
        1 => (ident(), sub()).prop_map(|(x, c)| Condition::Exists(x, Box::new(c))),
    ]
    .boxed()
}

fn atomic_instruction() -> BoxedStrategy<Instruction> {
    prop_oneof![
        4 => (ident(), dat_exp(2)).prop_map(|(x, e)| Instruction::Assign(x, e)),
        1 => (ident(), transfer(2)).prop_map(|(x, t)| Instruction::Yoke(x, t)),
        1 => Just(Instruction::Skip),
        1 => (prop::collection::vec(ident(), 0..2), prop::collection::vec(ident(), 0..2))
            .prop_map(|(vals, refs)| Instruction::Call { proc: Identifier::new("P"), vals, refs }),
    ]
    .boxed()
}

/// Right-nested sequence of the components of `parts`.
pub fn flat_seq(parts: Vec<Instruction>) -> Instruction {
    Instruction::seq(parts.iter().flat_map(Instruction::components).cloned().collect::<Vec<_>>())
}

/// Instructions of bounded depth; sequences are right-nested as parsed.
pub fn instruction(depth: u32) -> BoxedStrategy<Instruction> {
    let leaf = prop_oneof![4 => atomic_instruction(), 1 => condition(0).prop_map(Instruction::Assert)].boxed();
    if depth == 0 {
        return leaf;
    }
    let sub = || instruction(depth - 1);
    prop_oneof![
        3 => leaf,
        2 => prop::collection::vec(sub(), 2..4).prop_map(flat_seq),
        1 => (dat_exp(2), sub(), sub()).prop_map(|(g, x, y)| Instruction::If(g, Box::new(x), Box::new(y))),
        1 => (dat_exp(1), sub()).prop_map(|(g, h)| Instruction::IfError(g, Box::new(h))),
        1 => (dat_exp(2), sub()).prop_map(|(g, body)| Instruction::While(g, Box::new(body))),
        1 => condition(depth.min(2) - 1).prop_map(Instruction::Assert),
    ]
    .boxed()
}

fn formals(max: usize) -> impl Strategy<Value = Vec<FormalParam>> {
    prop::collection::btree_set(prop::sample::select(&["a", "b", "c"][..]), 0..=max).prop_flat_map(|names| {
        let names: Vec<&str> = names.into_iter().collect();
        prop::collection::vec(typ_exp(1), names.len()).prop_map(move |tys| {
            names.iter().zip(tys).map(|(n, ty)| FormalParam { name: Identifier::new(*n), ty }).collect()
        })
    })
}

fn proc_decl(name: &'static str, depth: u32) -> BoxedStrategy<ProcDecl> {
    (formals(1), formals(1), program(depth))
        .prop_map(move |(vals, refs, body)| ProcDecl { name: Identifier::new(name), vals, refs, body })
        .boxed()
}

/// Preamble items; `skip` is never generated last, where it would be read
/// as the instruction.
fn decl(depth: u32) -> BoxedStrategy<Decl> {
    let simple = prop_oneof![
        3 => (ident(), typ_exp(2)).prop_map(|(x, t)| Decl::Var(x, t)),
        2 => typ_exp(2).prop_map(|t| Decl::Type(Identifier::new("T"), t)),
    ]
    .boxed();
    if depth == 0 {
        return simple;
    }
    prop_oneof![
        4 => simple,
        1 => proc_decl("P", depth - 1).prop_map(Decl::Proc),
        1 => (proc_decl("P", depth - 1), proc_decl("Q", depth - 1)).prop_map(|(p, q)| Decl::MultiProc(vec![p, q])),
        1 => (formals(2), program(depth - 1), dat_exp(2), typ_exp(1)).prop_map(|(params, body, result, result_ty)| {
            Decl::Fun(FunDecl { name: Identifier::new("F"), params, body, result, result_ty })
        }),
    ]
    .boxed()
}

/// Programs: a preamble (with interior `skip`s) and an instruction.
pub fn program(depth: u32) -> BoxedStrategy<Program> {
    let item = prop_oneof![5 => decl(depth), 1 => Just(Decl::Skip)];
    (prop::collection::vec(item, 0..3), decl(depth), any::<bool>(), instruction(depth.min(3)))
        .prop_map(|(mut preamble, last, with_last, body)| {
            if with_last || preamble.last() == Some(&Decl::Skip) {
                preamble.push(last);
            }
            Program::new(preamble, body)
        })
        .boxed()
}

// ---------------------------------------------------------------------------
// Executable programs over a fixed, well-typed vocabulary.
// ---------------------------------------------------------------------------

/// Small numeric expressions over `x` and `y`.
pub fn num_exp(depth: u32) -> BoxedStrategy<DatExp> {
    let leaf = prop_oneof![(0i64..6).prop_map(DatExp::num), Just(DatExp::var("x")), Just(DatExp::var("y"))].boxed();
    if depth == 0 {
        return leaf;
    }
    let ops = prop::sample::select(vec![BinOp::Add, BinOp::Subtract, BinOp::Multiply, BinOp::Divide]);
    prop_oneof![2 => leaf, 1 => (ops, num_exp(depth - 1), num_exp(depth - 1)).prop_map(|(op, a, b)| DatExp::bin(op, a, b))]
        .boxed()
}

pub fn bool_exp() -> BoxedStrategy<DatExp> {
    let cmp = prop::sample::select(vec![BinOp::Less, BinOp::Leq, BinOp::Equal]);
    prop_oneof![
        3 => (cmp, num_exp(1), num_exp(1)).prop_map(|(op, a, b)| DatExp::bin(op, a, b)),
        1 => Just(DatExp::var("flag")),
        1 => any::<bool>().prop_map(DatExp::Bool),
    ]
    .boxed()
}

/// Values assignable to the record variable `person`, some of them growing
/// or shrinking its attribute set.
fn record_exp() -> BoxedStrategy<DatExp> {
    let person = || Box::new(DatExp::var("person"));
    prop_oneof![
        num_exp(1).prop_map(move |e| DatExp::ChangeRec(person(), Identifier::new("age"), Box::new(e))),
        num_exp(1).prop_map(move |e| DatExp::AddAttr(Identifier::new("tag"), Box::new(e), person())),
        Just(DatExp::RemoveAttr(Identifier::new("tag"), person())),
        Just(DatExp::Record(Identifier::new("age"), Box::new(DatExp::num(1)))),
    ]
    .boxed()
}

/// Loop-free instructions touching `x`, `y`, `flag`, `items` and `person`
/// (never the loop counter `i`).
pub fn straight_line(depth: u32) -> BoxedStrategy<Instruction> {
    let atom = prop_oneof![
        4 => (prop::sample::select(vec!["x", "y"]), num_exp(2)).prop_map(|(v, e)| Instruction::Assign(v.into(), e)),
        2 => bool_exp().prop_map(|e| Instruction::Assign("flag".into(), e)),
        1 => num_exp(1).prop_map(|e| Instruction::Assign(
            "items".into(),
            DatExp::Push(Box::new(e), Box::new(DatExp::var("items")))
        )),
        1 => record_exp().prop_map(|e| Instruction::Assign("person".into(), e)),
        1 => Just(Instruction::Assign("x".into(), DatExp::Word("w".into()))),
        1 => Just(Instruction::Skip),
        1 => bool_exp().prop_map(|e| Instruction::Assert(Condition::Data(e))),
    ]
    .boxed();
    if depth == 0 {
        return atom;
    }
    let sub = || straight_line(depth - 1);
    prop_oneof![
        3 => atom,
        2 => prop::collection::vec(sub(), 2..4).prop_map(flat_seq),
        1 => (bool_exp(), sub(), sub()).prop_map(|(g, a, b)| Instruction::If(g, Box::new(a), Box::new(b))),
        1 => (prop::sample::select(vec!["division-by-zero", "no-coherence"]), sub())
            .prop_map(|(w, h)| Instruction::IfError(DatExp::Word(w.into()), Box::new(h))),
    ]
    .boxed()
}

/// `while i < bound do body ; i := i + 1 od`, at most `bound` rounds.
pub fn counted_loop(max_rounds: i64) -> BoxedStrategy<(i64, Instruction)> {
    (0..=max_rounds, straight_line(2))
        .prop_map(|(bound, body)| {
            let guard = DatExp::bin(BinOp::Less, DatExp::var("i"), DatExp::num(bound));
            let step = Instruction::Assign("i".into(), DatExp::bin(BinOp::Add, DatExp::var("i"), DatExp::num(1)));
            (bound, Instruction::While(guard, Box::new(Instruction::seq([body, step]))))
        })
        .boxed()
}

/// The fixed preamble for executable programs, and its initialization.
pub fn executable_preamble() -> (Vec<Decl>, Instruction) {
    let num = |n: &str| Decl::Var(n.into(), TypExp::Number);
    let preamble = vec![
        num("i"),
        num("x"),
        num("y"),
        Decl::Var("flag".into(), TypExp::Boolean),
        Decl::Var("items".into(), TypExp::ListType(Box::new(TypExp::Number))),
        Decl::Var(
            "person".into(),
            TypExp::ExpandRecord(
                Box::new(TypExp::RecordType("age".into(), Box::new(TypExp::Number))),
                "ch-name".into(),
                Box::new(TypExp::Word),
            ),
        ),
    ];
    let person = DatExp::AddAttr(
        "ch-name".into(),
        Box::new(DatExp::Word("John".into())),
        Box::new(DatExp::Record("age".into(), Box::new(DatExp::num(40)))),
    );
    let init = Instruction::seq([
        Instruction::Assign("i".into(), DatExp::num(0)),
        Instruction::Assign("x".into(), DatExp::num(3)),
        Instruction::Assign("y".into(), DatExp::num(2)),
        Instruction::Assign("flag".into(), DatExp::Bool(true)),
        Instruction::Assign("items".into(), DatExp::List(Box::new(DatExp::num(1)))),
        Instruction::Assign("person".into(), person),
    ]);
    (preamble, init)
}

/// Terminating programs: fixed preamble, initialization, and a mix of
/// straight-line code and counted loops.
pub fn terminating_program() -> BoxedStrategy<Program> {
    let part = prop_oneof![2 => straight_line(2), 1 => counted_loop(4).prop_map(|(_, w)| w)];
    prop::collection::vec(part, 1..4)
        .prop_map(|parts| {
            let (preamble, init) = executable_preamble();
            let mut body = vec![init];
            body.extend(parts);
            Program::new(preamble, flat_seq(body))
        })
        .boxed()
}

/// States carrying a planted error word, over a few typed variables.
pub fn error_state() -> BoxedStrategy<State> {
    (prop::sample::select(PLANTED_ERRORS), 0i64..50, any::<bool>())
        .prop_map(|(word, n, b)| {
            let mut s = State::initial();
            s.vars.insert("x".into(), Value::from_composite(Composite::number(n), Type::number()));
            s.vars.insert("flag".into(), Value::from_composite(Composite::boolean(b), Type::boolean()));
            s.vars.insert("y".into(), Value::uninitialized(Type::number()));
            s.vars.insert("name".into(), Value::from_composite(Composite::word("a"), Type::word()));
            s.env.types.insert("T".into(), Type::number());
            s.load_error(ErrorWord::new(word))
        })
        .boxed()
}
