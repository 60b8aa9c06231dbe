//! Transfers: composite-to-composite functions kept as constructor trees so
//! that types can be compared structurally. Yokes are transfers with Boolean
//! results; their connectives follow Kleene's three-valued logic.

use std::fmt;

use crate::limits::Limits;
use crate::number::Decimal;
use crate::ops::{cc_apply, Arg, Operation};
use crate::value::{catalog, fail, Body, Composite, CompositeE, Data, Identifier};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArithOp {
    Add,
    Subtract,
    Multiply,
    Divide,
    Glue,
}

impl ArithOp {
    pub fn operation(self) -> Operation {
        match self {
            ArithOp::Add => Operation::Add,
            ArithOp::Subtract => Operation::Subtract,
            ArithOp::Multiply => Operation::Multiply,
            ArithOp::Divide => Operation::Divide,
            ArithOp::Glue => Operation::Glue,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            ArithOp::Add => "+",
            ArithOp::Subtract => "-",
            ArithOp::Multiply => "*",
            ArithOp::Divide => "/",
            ArithOp::Glue => "glue",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Comparison {
    Equal,
    Less,
    Leq,
}

impl Comparison {
    pub fn operation(self) -> Operation {
        match self {
            Comparison::Equal => Operation::Equal,
            Comparison::Less => Operation::Less,
            Comparison::Leq => Operation::Leq,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Comparison::Equal => "=",
            Comparison::Less => "<",
            Comparison::Leq => "<=",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Aggregate {
    Sum,
    Max,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NumPredicate {
    /// Number within [-9999, 9999].
    SmallNumber,
    /// Strictly increasing list of numbers.
    Increasing,
}

/// Bound used by [`NumPredicate::SmallNumber`].
pub const SMALL_NUMBER_BOUND: i64 = 9999;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Transfer {
    ConstNum(Decimal),
    ConstWord(String),
    ConstBool(bool),
    Arith(ArithOp, Box<Transfer>, Box<Transfer>),
    Agg(Aggregate, Box<Transfer>),
    Pred(Comparison, Box<Transfer>, Box<Transfer>),
    Pred1(NumPredicate, Box<Transfer>),
    And(Box<Transfer>, Box<Transfer>),
    Or(Box<Transfer>, Box<Transfer>),
    Not(Box<Transfer>),
    AllOnLi(Box<Transfer>),
    AllInAr(Box<Transfer>),
    /// Top of the input list.
    GetLi,
    /// Array element at the index computed by the inner transfer.
    GetAr(Box<Transfer>),
    /// Record attribute.
    GetRe(Identifier),
    /// Identity.
    Pass,
    /// Run the first transfer, then the second on its result.
    Compose(Box<Transfer>, Box<Transfer>),
}

/// The trivial yoke `true`.
pub const TT: Transfer = Transfer::ConstBool(true);

impl Transfer {
    pub fn arith(op: ArithOp, a: Transfer, b: Transfer) -> Transfer {
        Transfer::Arith(op, Box::new(a), Box::new(b))
    }

    pub fn pred(op: Comparison, a: Transfer, b: Transfer) -> Transfer {
        Transfer::Pred(op, Box::new(a), Box::new(b))
    }

    pub fn and(a: Transfer, b: Transfer) -> Transfer {
        Transfer::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Transfer, b: Transfer) -> Transfer {
        Transfer::Or(Box::new(a), Box::new(b))
    }

    pub fn not(a: Transfer) -> Transfer {
        Transfer::Not(Box::new(a))
    }

    pub fn num(n: i64) -> Transfer {
        Transfer::ConstNum(Decimal::from(n))
    }

    pub fn compose(first: Transfer, then: Transfer) -> Transfer {
        Transfer::Compose(Box::new(first), Box::new(then))
    }

    /// Applies the transfer. Every transfer is transparent for errors.
    pub fn eval(&self, input: &CompositeE, limits: &Limits) -> CompositeE {
        let c = match input {
            Err(e) => return Err(e.clone()),
            Ok(c) => c,
        };
        let two = |op: Operation, a: &Transfer, b: &Transfer| {
            let ra = a.eval(input, limits);
            let rb = b.eval(input, limits);
            cc_apply(op, &[Arg::Com(ra), Arg::Com(rb)], limits)
        };
        match self {
            Transfer::ConstNum(n) => Ok(Composite::number(n.clone())),
            Transfer::ConstWord(w) => Ok(Composite::word(w.clone())),
            Transfer::ConstBool(b) => Ok(Composite::boolean(*b)),
            Transfer::Arith(op, a, b) => two(op.operation(), a, b),
            Transfer::Pred(op, a, b) => two(op.operation(), a, b),
            Transfer::Agg(agg, t) => aggregate(*agg, &t.eval(input, limits)?, limits),
            Transfer::Pred1(p, t) => num_predicate(*p, &t.eval(input, limits)?),
            Transfer::And(a, b) => kleene_and(&a.eval(input, limits), &b.eval(input, limits)),
            Transfer::Or(a, b) => kleene_or(&a.eval(input, limits), &b.eval(input, limits)),
            Transfer::Not(a) => kleene_not(&a.eval(input, limits)),
            Transfer::AllOnLi(t) => match (&c.data, &c.body) {
                (Data::List(items), Body::List(inner)) => all_elements(t, items.iter(), inner, limits),
                _ => fail(catalog::LIST_EXPECTED),
            },
            Transfer::AllInAr(t) => match (&c.data, &c.body) {
                (Data::Array(entries), Body::Array(inner)) => {
                    all_elements(t, entries.values(), inner, limits)
                }
                _ => fail(catalog::ARRAY_EXPECTED),
            },
            Transfer::GetLi => cc_apply(Operation::TopLi, &[Arg::Com(Ok(c.clone()))], limits),
            Transfer::GetAr(t) => {
                let index = t.eval(input, limits);
                cc_apply(Operation::GetFromAr, &[Arg::Com(Ok(c.clone())), Arg::Com(index)], limits)
            }
            Transfer::GetRe(attr) => {
                cc_apply(Operation::GetFromRe, &[Arg::Com(Ok(c.clone())), Arg::Ide(attr.clone())], limits)
            }
            Transfer::Pass => Ok(c.clone()),
            Transfer::Compose(first, then) => then.eval(&first.eval(input, limits), limits),
        }
    }

    /// Clan membership: the transfer maps the composite to `(tt, Boolean)`.
    pub fn admits(&self, c: &Composite, limits: &Limits) -> bool {
        matches!(self.eval(&Ok(c.clone()), limits), Ok(r) if r.is_true() && r.body == Body::BOOLEAN)
    }
}

fn all_elements<'a>(
    t: &Transfer,
    items: impl Iterator<Item = &'a Data>,
    inner: &Body,
    limits: &Limits,
) -> CompositeE {
    let mut all = true;
    for d in items {
        let r = t.eval(&Ok(Composite::new(d.clone(), inner.clone())), limits)?;
        all &= r.is_true() && r.body == Body::BOOLEAN;
    }
    Ok(Composite::boolean(all))
}

fn number_list(c: &Composite) -> Result<Vec<Decimal>, crate::value::ErrorWord> {
    match (&c.data, &c.body) {
        (Data::List(items), Body::List(inner)) => {
            if **inner != Body::NUMBER {
                return fail(catalog::NUMBER_EXPECTED);
            }
            Ok(items
                .iter()
                .map(|d| match d {
                    Data::Number(n) => n.clone(),
                    _ => unreachable!("well-structured number list"),
                })
                .collect())
        }
        _ => fail(catalog::LIST_EXPECTED),
    }
}

fn aggregate(agg: Aggregate, c: &Composite, limits: &Limits) -> CompositeE {
    let nums = number_list(c)?;
    let mut iter = nums.into_iter();
    let first = iter.next().ok_or_else(|| crate::value::ErrorWord::new(catalog::EMPTY_LIST))?;
    let mut acc = Composite::number(first);
    for n in iter {
        acc = match agg {
            Aggregate::Sum => cc_apply(Operation::Add, &[acc.into(), Composite::number(n).into()], limits)?,
            Aggregate::Max => {
                let Data::Number(current) = &acc.data else { unreachable!() };
                if n > *current {
                    Composite::number(n)
                } else {
                    acc
                }
            }
        };
    }
    Ok(acc)
}

fn num_predicate(p: NumPredicate, c: &Composite) -> CompositeE {
    match p {
        NumPredicate::SmallNumber => match &c.data {
            Data::Number(n) => {
                let bound = Decimal::from(SMALL_NUMBER_BOUND);
                Ok(Composite::boolean(*n <= bound && *n >= bound.neg()))
            }
            _ => fail(catalog::NUMBER_EXPECTED),
        },
        NumPredicate::Increasing => {
            let nums = number_list(c)?;
            Ok(Composite::boolean(nums.windows(2).all(|w| w[0] < w[1])))
        }
    }
}

fn is_false(c: &CompositeE) -> bool {
    matches!(c, Ok(c) if c.data == Data::Bool(false))
}

/// Kleene conjunction: `ff` on either side wins, even against an error.
pub fn kleene_and(a: &CompositeE, b: &CompositeE) -> CompositeE {
    if is_false(a) || is_false(b) {
        return Ok(Composite::boolean(false));
    }
    let a = a.clone()?;
    let b = b.clone()?;
    if a.as_bool().is_none() || b.as_bool().is_none() {
        return fail(catalog::BOOLEAN_EXPECTED);
    }
    Ok(Composite::boolean(true))
}

pub fn kleene_not(a: &CompositeE) -> CompositeE {
    match a.clone()?.as_bool() {
        Some(b) => Ok(Composite::boolean(!b)),
        None => fail(catalog::BOOLEAN_EXPECTED),
    }
}

/// Kleene disjunction by De Morgan.
pub fn kleene_or(a: &CompositeE, b: &CompositeE) -> CompositeE {
    kleene_not(&kleene_and(&kleene_not(a), &kleene_not(b)))
}

impl fmt::Display for Transfer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Transfer::ConstNum(n) => write!(f, "{n}"),
            Transfer::ConstWord(w) => write!(f, "'{w}'"),
            Transfer::ConstBool(true) => f.write_str("true"),
            Transfer::ConstBool(false) => f.write_str("false"),
            Transfer::Arith(op, a, b) => write!(f, "({a} {} {b})", op.symbol()),
            Transfer::Pred(op, a, b) => write!(f, "({a} {} {b})", op.symbol()),
            Transfer::Agg(Aggregate::Sum, t) => write!(f, "sum ({t})"),
            Transfer::Agg(Aggregate::Max, t) => write!(f, "max ({t})"),
            Transfer::Pred1(NumPredicate::SmallNumber, t) => write!(f, "small-number ({t})"),
            Transfer::Pred1(NumPredicate::Increasing, t) => write!(f, "increasing ({t})"),
            Transfer::And(a, b) => write!(f, "({a} and {b})"),
            Transfer::Or(a, b) => write!(f, "({a} or {b})"),
            Transfer::Not(a) => write!(f, "(not {a})"),
            Transfer::AllOnLi(t) => write!(f, "all-list {t} ee"),
            Transfer::AllInAr(t) => write!(f, "all-array {t} ee"),
            Transfer::GetLi => f.write_str("top"),
            Transfer::GetAr(t) => write!(f, "array [{t}]"),
            Transfer::GetRe(i) => write!(f, "record.{i}"),
            Transfer::Pass => f.write_str("value"),
            Transfer::Compose(a, b) => write!(f, "({a} ; {b})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(t: &Transfer, c: Composite) -> CompositeE {
        t.eval(&Ok(c), &Limits::default())
    }

    #[test]
    fn less_than_ten() {
        let t = Transfer::pred(Comparison::Less, Transfer::Pass, Transfer::num(10));
        assert_eq!(eval(&t, Composite::number(5)), Ok(Composite::boolean(true)));
    }

    #[test]
    fn kleene_ff_beats_error() {
        let ee = Transfer::arith(ArithOp::Divide, Transfer::Pass, Transfer::num(0));
        let t = Transfer::and(Transfer::ConstBool(false), ee.clone());
        assert_eq!(eval(&t, Composite::number(1)), Ok(Composite::boolean(false)));
        let t = Transfer::and(ee, Transfer::ConstBool(false));
        assert_eq!(eval(&t, Composite::number(1)), Ok(Composite::boolean(false)));
    }

    #[test]
    fn transparency() {
        assert_eq!(Transfer::num(3).eval(&fail("x"), &Limits::default()), fail("x"));
    }

    #[test]
    fn quantifier_over_list() {
        let t = Transfer::AllOnLi(Box::new(Transfer::pred(Comparison::Less, Transfer::Pass, Transfer::num(10))));
        let l = Composite::new(
            Data::List(vec![Data::number(1), Data::number(2), Data::number(30)]),
            Body::list(Body::NUMBER),
        );
        assert_eq!(eval(&t, l), Ok(Composite::boolean(false)));
        assert_eq!(eval(&t, Composite::number(1)), fail("list-expected"));
    }

    #[test]
    fn aggregates() {
        let l = Composite::new(Data::List(vec![Data::number(4), Data::number(9), Data::number(2)]), Body::list(Body::NUMBER));
        assert_eq!(eval(&Transfer::Agg(Aggregate::Sum, Box::new(Transfer::Pass)), l.clone()), Ok(Composite::number(15)));
        assert_eq!(eval(&Transfer::Agg(Aggregate::Max, Box::new(Transfer::Pass)), l.clone()), Ok(Composite::number(9)));
        assert_eq!(
            eval(&Transfer::Pred1(NumPredicate::Increasing, Box::new(Transfer::Pass)), l),
            Ok(Composite::boolean(false))
        );
        let empty = Composite::new(Data::List(vec![]), Body::list(Body::NUMBER));
        assert_eq!(eval(&Transfer::Agg(Aggregate::Sum, Box::new(Transfer::Pass)), empty), fail("empty-list"));
    }

    #[test]
    fn clan_membership() {
        let limits = Limits::default();
        assert!(Transfer::Pass.admits(&Composite::boolean(true), &limits));
        assert!(!Transfer::num(5).admits(&Composite::number(5), &limits));
        let rec = Composite::new(
            Data::Record([("x".into(), Data::number(1))].into_iter().collect()),
            Body::record([("x", Body::NUMBER)]),
        );
        let t = Transfer::pred(Comparison::Equal, Transfer::GetRe("x".into()), Transfer::num(1));
        assert!(t.admits(&rec, &limits));
    }
}
