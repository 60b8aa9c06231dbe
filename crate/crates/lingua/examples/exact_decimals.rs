//! Exact decimal arithmetic with truncating division and representability
//! limits: results that exceed the limits become the `overload` error.

use lingua::cli::load_program;
use lingua::{dump_state, Limits, Machine};

fn run(src: &str, limits: Limits) {
    let program = load_program(src, true).expect("valid program");
    let state = Machine::new(limits).run(&program).expect("terminates");
    println!("{src}\n{}", dump_state(&state));
}

fn main() {
    run("let a, b, c be number tel; a := 0.1 + 0.2; b := 1 / 3; c := 2 * 0.5", Limits::default());
    let tight = Limits { max_int_digits: 4, ..Limits::default() };
    run("let big be number tel; big := 99 * 99; big := big * 99", tight);
}
