//! Composite constructors: total versions of the data operations that check
//! bodies, report abstract errors, round and guard against overload.

use std::collections::BTreeMap;

use crate::limits::Limits;
use crate::number::Decimal;
use crate::value::{catalog, fail, Body, Composite, CompositeE, Data, ErrorWord, Identifier, Simple};

/// The non-Boolean operations on composites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Operation {
    Equal,
    Less,
    Leq,
    Add,
    Subtract,
    Multiply,
    Divide,
    Glue,
    CreateLi,
    PushLi,
    TopLi,
    PopLi,
    CreateAr,
    PutToAr,
    ChangeInAr,
    GetFromAr,
    CreateRe,
    PutToRe,
    GetFromRe,
    CutFromRe,
    ChangeInRe,
}

impl Operation {
    pub const ALL: [Operation; 21] = [
        Operation::Equal,
        Operation::Less,
        Operation::Leq,
        Operation::Add,
        Operation::Subtract,
        Operation::Multiply,
        Operation::Divide,
        Operation::Glue,
        Operation::CreateLi,
        Operation::PushLi,
        Operation::TopLi,
        Operation::PopLi,
        Operation::CreateAr,
        Operation::PutToAr,
        Operation::ChangeInAr,
        Operation::GetFromAr,
        Operation::CreateRe,
        Operation::PutToRe,
        Operation::GetFromRe,
        Operation::CutFromRe,
        Operation::ChangeInRe,
    ];

    /// Argument shape: `true` marks an identifier slot, `false` a composite slot.
    pub fn signature(self) -> &'static [bool] {
        use Operation::*;
        match self {
            TopLi | PopLi | CreateLi | CreateAr => &[false],
            Equal | Less | Leq | Add | Subtract | Multiply | Divide | Glue | PushLi | PutToAr
            | GetFromAr => &[false, false],
            ChangeInAr => &[false, false, false],
            CreateRe => &[true, false],
            PutToRe => &[true, false, false],
            GetFromRe | CutFromRe => &[false, true],
            ChangeInRe => &[false, true, false],
        }
    }
}

/// An argument to a composite constructor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Arg {
    Com(CompositeE),
    Ide(Identifier),
}

impl From<CompositeE> for Arg {
    fn from(c: CompositeE) -> Self {
        Arg::Com(c)
    }
}

impl From<Composite> for Arg {
    fn from(c: Composite) -> Self {
        Arg::Com(Ok(c))
    }
}

impl From<Identifier> for Arg {
    fn from(i: Identifier) -> Self {
        Arg::Ide(i)
    }
}

fn number(c: &Composite) -> Result<&Decimal, ErrorWord> {
    match &c.data {
        Data::Number(n) => Ok(n),
        _ => fail(catalog::NUMBER_EXPECTED),
    }
}

fn word(c: &Composite) -> Result<&str, ErrorWord> {
    match &c.data {
        Data::Word(w) => Ok(w),
        _ => fail(catalog::WORD_EXPECTED),
    }
}

fn list(c: &Composite) -> Result<(&Vec<Data>, &Body), ErrorWord> {
    match (&c.data, &c.body) {
        (Data::List(items), Body::List(inner)) => Ok((items, inner)),
        _ => fail(catalog::LIST_EXPECTED),
    }
}

fn array(c: &Composite) -> Result<(&BTreeMap<Decimal, Data>, &Body), ErrorWord> {
    match (&c.data, &c.body) {
        (Data::Array(entries), Body::Array(inner)) => Ok((entries, inner)),
        _ => fail(catalog::ARRAY_EXPECTED),
    }
}

type RecordParts<'a> = (&'a BTreeMap<Identifier, Data>, &'a BTreeMap<Identifier, Body>);

fn record(c: &Composite) -> Result<RecordParts<'_>, ErrorWord> {
    match (&c.data, &c.body) {
        (Data::Record(entries), Body::Record(attrs)) => Ok((entries, attrs)),
        _ => fail(catalog::RECORD_EXPECTED),
    }
}

fn same_body(expected: &Body, actual: &Body) -> Result<(), ErrorWord> {
    if expected == actual {
        Ok(())
    } else {
        fail(catalog::INCONSISTENT_BODIES)
    }
}

/// Applies a composite constructor. Errors among the arguments are returned
/// first (leftmost wins), then body checks, then partiality of the underlying
/// data operation; a successful result is rounded and checked for overload.
///
/// Panics if the argument vector does not match [`Operation::signature`].
pub fn cc_apply(op: Operation, args: &[Arg], limits: &Limits) -> CompositeE {
    let shape = op.signature();
    assert_eq!(shape.len(), args.len(), "arity mismatch for {op:?}");
    for arg in args {
        if let Arg::Com(Err(e)) = arg {
            return Err(e.clone());
        }
    }
    let com = |i: usize| match &args[i] {
        Arg::Com(Ok(c)) => c,
        other => panic!("argument {i} of {op:?} must be a composite, got {other:?}"),
    };
    let ide = |i: usize| match &args[i] {
        Arg::Ide(x) => x,
        other => panic!("argument {i} of {op:?} must be an identifier, got {other:?}"),
    };
    let result = apply(op, &com, &ide, limits)?;
    let data = result.data.round(limits);
    if data.oversized(limits) {
        return fail(catalog::OVERLOAD);
    }
    Ok(Composite { data, body: result.body })
}

fn apply<'a>(
    op: Operation,
    com: &dyn Fn(usize) -> &'a Composite,
    ide: &dyn Fn(usize) -> &'a Identifier,
    limits: &Limits,
) -> CompositeE {
    use Operation::*;
    match op {
        Equal => {
            let (a, b) = (com(0), com(1));
            if !a.data.is_simple() || !b.data.is_simple() {
                return fail(catalog::SIMPLE_DATA_EXPECTED);
            }
            same_body(&a.body, &b.body)?;
            Ok(Composite::boolean(a.data == b.data))
        }
        Less | Leq => {
            let (a, b) = (number(com(0))?, number(com(1))?);
            Ok(Composite::boolean(if op == Less { a < b } else { a <= b }))
        }
        Add | Subtract | Multiply | Divide => {
            let (a, b) = (number(com(0))?, number(com(1))?);
            let n = match op {
                Add => a.add(b),
                Subtract => a.sub(b),
                Multiply => a.mul(b),
                _ => match a.div_truncated(b, limits.max_frac_digits) {
                    Some(q) => q,
                    None => return fail(catalog::DIVISION_BY_ZERO),
                },
            };
            Ok(Composite::number(n))
        }
        Glue => {
            let (a, b) = (word(com(0))?, word(com(1))?);
            Ok(Composite::word(format!("{a}{b}")))
        }
        CreateLi => {
            let e = com(0);
            Ok(Composite::new(Data::List(vec![e.data.clone()]), Body::list(e.body.clone())))
        }
        PushLi => {
            let (e, l) = (com(0), com(1));
            let (items, inner) = list(l)?;
            same_body(inner, &e.body)?;
            let mut items = items.clone();
            items.push(e.data.clone());
            Ok(Composite::new(Data::List(items), l.body.clone()))
        }
        TopLi => {
            let (items, inner) = list(com(0))?;
            match items.last() {
                Some(d) => Ok(Composite::new(d.clone(), inner.clone())),
                None => fail(catalog::EMPTY_LIST),
            }
        }
        PopLi => {
            let l = com(0);
            let (items, _) = list(l)?;
            if items.is_empty() {
                return fail(catalog::EMPTY_LIST);
            }
            Ok(Composite::new(Data::List(items[..items.len() - 1].to_vec()), l.body.clone()))
        }
        CreateAr => {
            let e = com(0);
            let entries = BTreeMap::from([(Decimal::one(), e.data.clone())]);
            Ok(Composite::new(Data::Array(entries), Body::array(e.body.clone())))
        }
        PutToAr => {
            let (a, e) = (com(0), com(1));
            let (entries, inner) = array(a)?;
            same_body(inner, &e.body)?;
            let next = entries.keys().next_back().cloned().unwrap_or_else(Decimal::zero).add(&Decimal::one());
            let mut entries = entries.clone();
            entries.insert(next, e.data.clone());
            Ok(Composite::new(Data::Array(entries), a.body.clone()))
        }
        ChangeInAr => {
            let (a, i, e) = (com(0), com(1), com(2));
            let (entries, inner) = array(a)?;
            let key = number(i)?;
            same_body(inner, &e.body)?;
            if !entries.contains_key(key) {
                return fail(catalog::ARRAY_INDEX_UNDEFINED);
            }
            let mut entries = entries.clone();
            entries.insert(key.clone(), e.data.clone());
            Ok(Composite::new(Data::Array(entries), a.body.clone()))
        }
        GetFromAr => {
            let (entries, inner) = array(com(0))?;
            let key = number(com(1))?;
            match entries.get(key) {
                Some(d) => Ok(Composite::new(d.clone(), inner.clone())),
                None => fail(catalog::ARRAY_INDEX_UNDEFINED),
            }
        }
        CreateRe => {
            let (name, e) = (ide(0), com(1));
            Ok(Composite::new(
                Data::Record(BTreeMap::from([(name.clone(), e.data.clone())])),
                Body::Record(BTreeMap::from([(name.clone(), e.body.clone())])),
            ))
        }
        PutToRe => {
            let (name, e, r) = (ide(0), com(1), com(2));
            let (entries, attrs) = record(r)?;
            if attrs.contains_key(name) {
                return fail(catalog::ATTRIBUTE_NOT_FREE);
            }
            let (mut entries, mut attrs) = (entries.clone(), attrs.clone());
            entries.insert(name.clone(), e.data.clone());
            attrs.insert(name.clone(), e.body.clone());
            Ok(Composite::new(Data::Record(entries), Body::Record(attrs)))
        }
        GetFromRe => {
            let (r, name) = (com(0), ide(1));
            let (entries, attrs) = record(r)?;
            match (entries.get(name), attrs.get(name)) {
                (Some(d), Some(b)) => Ok(Composite::new(d.clone(), b.clone())),
                _ => fail(catalog::UNKNOWN_ATTRIBUTE),
            }
        }
        CutFromRe => {
            let (r, name) = (com(0), ide(1));
            let (entries, attrs) = record(r)?;
            if !attrs.contains_key(name) {
                return fail(catalog::UNKNOWN_ATTRIBUTE);
            }
            let (mut entries, mut attrs) = (entries.clone(), attrs.clone());
            entries.remove(name);
            attrs.remove(name);
            Ok(Composite::new(Data::Record(entries), Body::Record(attrs)))
        }
        ChangeInRe => {
            let (r, name, e) = (com(0), ide(1), com(2));
            let (entries, attrs) = record(r)?;
            let old = attrs.get(name).ok_or_else(|| ErrorWord::new(catalog::UNKNOWN_ATTRIBUTE))?;
            same_body(old, &e.body)?;
            let mut entries = entries.clone();
            entries.insert(name.clone(), e.data.clone());
            Ok(Composite::new(Data::Record(entries), r.body.clone()))
        }
    }
}

fn boolean(c: &CompositeE) -> Result<bool, ErrorWord> {
    match c {
        Err(e) => Err(e.clone()),
        Ok(Composite { data: Data::Bool(b), body: Body::Simple(Simple::Boolean) }) => Ok(*b),
        Ok(_) => fail(catalog::BOOLEAN_EXPECTED),
    }
}

/// McCarthy conjunction: the left argument decides first; `ff and ee = ff`.
pub fn and_c(a: &CompositeE, b: &CompositeE) -> CompositeE {
    if !boolean(a)? {
        return Ok(Composite::boolean(false));
    }
    boolean(b)?;
    b.clone()
}

/// McCarthy negation.
pub fn not_c(a: &CompositeE) -> CompositeE {
    Ok(Composite::boolean(!boolean(a)?))
}

/// McCarthy disjunction, defined by De Morgan from [`and_c`] and [`not_c`].
pub fn or_c(a: &CompositeE, b: &CompositeE) -> CompositeE {
    not_c(&and_c(&not_c(a), &not_c(b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn num(n: i64) -> Arg {
        Arg::Com(Ok(Composite::number(n)))
    }

    fn nums(ns: &[i64]) -> Composite {
        Composite::new(Data::List(ns.iter().map(|&n| Data::number(n)).collect()), Body::list(Body::NUMBER))
    }

    fn run(op: Operation, args: Vec<Arg>) -> CompositeE {
        cc_apply(op, &args, &Limits::default())
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(run(Operation::Divide, vec![num(6), num(0)]), fail("division-by-zero"));
    }

    #[test]
    fn push_appends() {
        assert_eq!(run(Operation::PushLi, vec![num(3), nums(&[1, 2]).into()]), Ok(nums(&[1, 2, 3])));
        assert_eq!(
            run(Operation::PushLi, vec![Composite::word("a").into(), nums(&[1]).into()]),
            fail("inconsistent-bodies")
        );
    }

    #[test]
    fn glue_and_equal() {
        let w = |s: &str| Arg::from(Composite::word(s));
        assert_eq!(run(Operation::Glue, vec![w("ab"), w("cd")]), Ok(Composite::word("abcd")));
        assert_eq!(run(Operation::Equal, vec![num(2), nums(&[1]).into()]), fail("simple-data-expected"));
    }

    #[test]
    fn first_error_wins() {
        let e1 = Arg::Com(fail("first"));
        let e2 = Arg::Com(fail("second"));
        assert_eq!(run(Operation::Add, vec![e1, e2]), fail("first"));
        assert_eq!(run(Operation::PushLi, vec![num(1), Arg::Com(fail("second"))]), fail("second"));
    }

    #[test]
    fn arrays_grow_from_one() {
        let a = run(Operation::CreateAr, vec![num(7)]).unwrap();
        let a = run(Operation::PutToAr, vec![a.into(), num(8)]).unwrap();
        let Data::Array(entries) = &a.data else { panic!() };
        assert_eq!(entries.keys().cloned().collect::<Vec<_>>(), vec![Decimal::from(1), Decimal::from(2)]);
        assert_eq!(run(Operation::GetFromAr, vec![a.clone().into(), num(3)]), fail("array-index-undefined"));
        assert_eq!(run(Operation::GetFromAr, vec![a.into(), num(2)]), Ok(Composite::number(8)));
    }

    #[test]
    fn records() {
        let x = Identifier::from("x");
        let r = run(Operation::CreateRe, vec![x.clone().into(), num(1)]).unwrap();
        assert_eq!(
            run(Operation::PutToRe, vec![x.clone().into(), num(2), r.clone().into()]),
            fail("attribute-not-free")
        );
        assert_eq!(
            run(Operation::GetFromRe, vec![r.clone().into(), Identifier::from("y").into()]),
            fail("unknown-attribute")
        );
        assert_eq!(
            run(Operation::ChangeInRe, vec![r.clone().into(), x.clone().into(), Composite::word("w").into()]),
            fail("inconsistent-bodies")
        );
        let cut = run(Operation::CutFromRe, vec![r.into(), x.into()]).unwrap();
        assert_eq!(cut.body, Body::Record(BTreeMap::new()));
    }

    #[test]
    fn overload_after_rounding() {
        let limits = Limits { max_int_digits: 2, ..Limits::default() };
        assert_eq!(cc_apply(Operation::Multiply, &[num(10), num(10)], &limits), fail("overload"));
        assert_eq!(cc_apply(Operation::Multiply, &[num(9), num(11)], &limits), Ok(Composite::number(99)));
    }

    #[test]
    fn mccarthy_is_lazy_on_the_left() {
        let ff = Ok(Composite::boolean(false));
        let tt = Ok(Composite::boolean(true));
        let ee: CompositeE = fail("overload");
        assert_eq!(and_c(&ff, &ee), ff);
        assert_eq!(and_c(&ee, &ff), ee);
        assert_eq!(or_c(&tt, &fail("x")), tt);
        assert_eq!(not_c(&tt), ff);
        assert_eq!(and_c(&Ok(Composite::number(1)), &tt), fail("Boolean-expected"));
    }
}
