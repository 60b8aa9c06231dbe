use std::collections::BTreeMap;

use lingua::number::Decimal;
use lingua::ops::{cc_apply, Arg, Operation};
use lingua::transfer::{ArithOp, Comparison, Transfer};
use lingua::types::Type;
use lingua::value::{Body, Composite, CompositeE, Data, ErrorWord, Identifier};
use lingua::Limits;
use proptest::prelude::*;

const ATTRS: &[&str] = &["ch-name", "age", "tag"];

fn big_number() -> impl Strategy<Value = Decimal> {
    prop_oneof![
        3 => (-20i64..20).prop_map(Decimal::from),
        1 => (any::<i64>(), 0u32..4).prop_map(|(c, s)| Decimal::new(c.into(), s)),
        1 => Just("999999999999999999999999999999".parse::<Decimal>().unwrap()),
    ]
}

fn simple() -> impl Strategy<Value = Composite> {
    prop_oneof![
        any::<bool>().prop_map(Composite::boolean),
        big_number().prop_map(Composite::number),
        prop::sample::select(vec!["", "a", "bc"]).prop_map(Composite::word),
    ]
}

fn numbers_list() -> impl Strategy<Value = Composite> {
    prop::collection::vec(-5i64..5, 0..4)
        .prop_map(|ns| Composite::new(Data::List(ns.into_iter().map(Data::number).collect()), Body::list(Body::NUMBER)))
}

fn words_array() -> impl Strategy<Value = Composite> {
    prop::collection::vec(prop::sample::select(vec!["x", "y"]), 1..4).prop_map(|ws| {
        let entries: BTreeMap<Decimal, Data> =
            ws.into_iter().enumerate().map(|(i, w)| (Decimal::from(i as i64 + 1), Data::word(w))).collect();
        Composite::new(Data::Array(entries), Body::array(Body::WORD))
    })
}

fn small_record() -> impl Strategy<Value = Composite> {
    prop::collection::btree_map(prop::sample::select(ATTRS), -3i64..3, 1..3).prop_map(|m| {
        let data = m.iter().map(|(k, v)| (Identifier::new(*k), Data::number(*v))).collect();
        let body = m.keys().map(|k| (Identifier::new(*k), Body::NUMBER)).collect();
        Composite::new(Data::Record(data), Body::Record(body))
    })
}

fn composite() -> impl Strategy<Value = Composite> {
    prop_oneof![3 => simple(), 1 => numbers_list(), 1 => words_array(), 1 => small_record()]
}

fn composite_e() -> impl Strategy<Value = CompositeE> {
    prop_oneof![
        6 => composite().prop_map(Ok),
        1 => prop::sample::select(vec!["e1", "e2"]).prop_map(|w| Err(ErrorWord::new(w))),
    ]
}

fn args_for(op: Operation) -> BoxedStrategy<Vec<Arg>> {
    let slots: Vec<BoxedStrategy<Arg>> = op
        .signature()
        .iter()
        .map(|is_ide| {
            if *is_ide {
                prop::sample::select(ATTRS).prop_map(|a| Arg::Ide(Identifier::new(a))).boxed()
            } else {
                composite_e().prop_map(Arg::Com).boxed()
            }
        })
        .collect();
    slots.boxed()
}

fn op_and_args() -> impl Strategy<Value = (Operation, Vec<Arg>)> {
    prop::sample::select(Operation::ALL.to_vec()).prop_flat_map(|op| args_for(op).prop_map(move |a| (op, a)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn results_are_well_structured_and_representable((op, args) in op_and_args()) {
        let limits = Limits::default();
        if let Ok(c) = cc_apply(op, &args, &limits) {
            prop_assert!(c.body.admits(&c.data), "{:?} gave {}", op, c);
            prop_assert!(!c.oversized(&limits));
        }
    }

    #[test]
    fn leftmost_error_argument_wins((op, args) in op_and_args()) {
        let first_error = args.iter().find_map(|a| match a {
            Arg::Com(Err(e)) => Some(e.clone()),
            _ => None,
        });
        if let Some(e) = first_error {
            prop_assert_eq!(cc_apply(op, &args, &Limits::default()), Err(e));
        }
    }

    #[test]
    fn array_keys_form_an_initial_segment(steps in prop::collection::vec((0u8..2, 1i64..6, 0i64..9), 0..12)) {
        let limits = Limits::default();
        let mut a = cc_apply(Operation::CreateAr, &[Composite::number(0).into()], &limits).unwrap();
        for (kind, index, value) in steps {
            let v: Arg = Composite::number(value).into();
            let next = if kind == 0 {
                cc_apply(Operation::PutToAr, &[a.clone().into(), v], &limits)
            } else {
                cc_apply(Operation::ChangeInAr, &[a.clone().into(), Composite::number(index).into(), v], &limits)
            };
            if let Ok(c) = next {
                a = c;
            }
            let Data::Array(entries) = &a.data else { panic!("array expected") };
            let expected: Vec<Decimal> = (1..=entries.len() as i64).map(Decimal::from).collect();
            prop_assert_eq!(entries.keys().cloned().collect::<Vec<_>>(), expected);
        }
    }

    #[test]
    fn transfers_are_transparent_for_errors(word in "[a-z]{1,8}", n in -5i64..5) {
        let t = Transfer::pred(Comparison::Less, Transfer::arith(ArithOp::Add, Transfer::Pass, Transfer::num(n)), Transfer::num(3));
        let e: CompositeE = Err(ErrorWord::new(word));
        prop_assert_eq!(t.eval(&e, &Limits::default()), e);
    }

    #[test]
    fn transfer_disjunction_obeys_de_morgan(a in 0usize..4, b in 0usize..4, c in simple()) {
        let pool = [
            Transfer::ConstBool(true),
            Transfer::ConstBool(false),
            Transfer::arith(ArithOp::Divide, Transfer::Pass, Transfer::num(0)),
            Transfer::pred(Comparison::Less, Transfer::Pass, Transfer::num(0)),
        ];
        let (x, y) = (pool[a].clone(), pool[b].clone());
        let limits = Limits::default();
        let input = Ok(c);
        let direct = Transfer::or(x.clone(), y.clone()).eval(&input, &limits);
        let derived = Transfer::not(Transfer::and(Transfer::not(x), Transfer::not(y))).eval(&input, &limits);
        prop_assert_eq!(direct, derived);
    }
}

/// Every list of at most three numbers from a small range, by brute force.
fn small_lists() -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..3 {
        let mut next = Vec::new();
        for l in &frontier {
            for n in 0..12 {
                let mut l2: Vec<i64> = l.clone();
                l2.push(n);
                next.push(l2);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

#[test]
fn list_types_admit_exactly_lists_of_admitted_elements() {
    let limits = Limits::default();
    let below_ten = Type::number().replace_transfer(Transfer::pred(Comparison::Less, Transfer::Pass, Transfer::num(10)));
    let lists = below_ten.clone().list_of();
    for l in small_lists() {
        let c = Composite::new(Data::List(l.iter().copied().map(Data::number).collect()), Body::list(Body::NUMBER));
        let elementwise = l.iter().all(|n| below_ten.admits(&Composite::number(*n), &limits));
        assert_eq!(lists.admits(&c, &limits), elementwise, "{l:?}");
    }
}
