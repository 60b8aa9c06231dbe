use lingua::cli::load_program;
use lingua::state::State;
use lingua::value::Data;
use lingua::{Decimal, Machine};
use proptest::prelude::*;

fn run(src: &str) -> State {
    let program = load_program(src, true).unwrap_or_else(|e| panic!("{e}\n{src}"));
    Machine::default().run(&program).expect("terminates")
}

fn number(s: &State, name: &str) -> Decimal {
    match &s.vars[&name.into()].data {
        Some(Data::Number(n)) => n.clone(),
        other => panic!("{name} holds {other:?}"),
    }
}

const COUNTDOWN: &str = "
  proc countdown (val empty-fp ref n, steps as number)
    if n > 0 then n := n - 1; steps := steps + 1; call countdown (ref n, steps) fi
  end proc;";

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bodies_cannot_read_globals(global in prop::sample::select(vec!["g", "total", "h2"]), k in 0i64..9) {
        let src = format!(
            "let {global}, out be number tel;
             proc peek (val empty-fp ref r as number) r := {global} + 1 end proc;
             {global} := {k};
             out := 0;
             call peek (ref out)"
        );
        let end = run(&src);
        prop_assert_eq!(end.error_of(), "undeclared-variable");
    }

    #[test]
    fn calls_restore_the_environment(k in 0i64..20) {
        let src = format!(
            "set T as number tes;
             proc bump (val d as T ref r as T)
               set U as T tes;
               let tmp be U tel;
               tmp := d * 2;
               r := r + tmp
             end proc;
             let a, b be T tel;
             a := {k}; b := 1;
             call bump (val a ref b)"
        );
        let program = load_program(&src, true).unwrap();
        let mut m = Machine::default();
        let before = m.exec_program(&lingua::ast::Program::new(program.preamble.clone(), lingua::ast::Instruction::Skip), State::initial()).unwrap();
        let after = Machine::default().run(&program).unwrap();
        prop_assert_eq!(&after.env, &before.env);
        prop_assert!(!after.vars.contains_key(&"tmp".into()));
        prop_assert_eq!(number(&after, "b"), Decimal::from(1 + 2 * k));
    }

    #[test]
    fn functional_calls_leave_other_variables_alone(k in -6i64..6, m in 0i64..5) {
        let src = format!(
            "fun power (n, m as number)
               let p be number tel;
               p := 1;
               while m > 0 do p := p * n; m := m - 1 od
             return p as number
             end fun;
             let base, exp, r be number tel;
             base := {k}; exp := {m}; r := 0;
             r := power(base, exp)"
        );
        let s = run(&src);
        prop_assert_eq!(number(&s, "base"), Decimal::from(k));
        prop_assert_eq!(number(&s, "exp"), Decimal::from(m));
        prop_assert_eq!(number(&s, "r"), Decimal::from(k.pow(m as u32)));
        prop_assert!(!s.vars.contains_key(&"p".into()));
    }
}

#[test]
fn recursion_agrees_with_iteration() {
    for n in 0..=50 {
        let recursive = run(&format!(
            "{COUNTDOWN} let n, steps be number tel; n := {n}; steps := 0; call countdown (ref n, steps)"
        ));
        let iterative = run(&format!(
            "let n, steps be number tel; n := {n}; steps := 0;
             while n > 0 do n := n - 1; steps := steps + 1 od"
        ));
        assert_eq!(recursive.vars, iterative.vars, "n = {n}");
    }
}

#[test]
fn runaway_recursion_exhausts_the_budget() {
    // The call-depth limit is well within a generous thread stack.
    let worker = std::thread::Builder::new().stack_size(512 << 20).spawn(runaway_recursion).unwrap();
    worker.join().unwrap();
}

fn runaway_recursion() {
    let program = load_program(
        "proc loop (val empty-fp ref n as number) call loop (ref n) end proc;
         let n be number tel; n := 0; call loop (ref n)",
        true,
    )
    .unwrap();
    assert_eq!(Machine::default().run(&program), Err(lingua::Abort::Budget));
}
