//! Integer square root by binary search, under a loop-invariant assertion,
//! for a range of inputs.

use lingua::cli::load_program;
use lingua::value::Data;
use lingua::Machine;

fn main() {
    let template = include_str!("../corpus/isr.lingua");
    for n in [0, 1, 2, 15, 16, 99, 100, 2000] {
        let src = template.replace("n := 2000;", &format!("n := {n};"));
        let program = load_program(&src, true).expect("valid program");
        let state = Machine::default().run(&program).expect("terminates");
        let root = match &state.vars[&"x".into()].data {
            Some(Data::Number(x)) => x.to_string(),
            other => format!("{other:?}"),
        };
        println!("isr({n}) = {root}  [{}]", state.error_of());
    }
}
