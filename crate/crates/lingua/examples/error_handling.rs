//! Errors are values in the state's error register; `if-error` handlers
//! recover from a named error and annotate the register.

use lingua::cli::load_program;
use lingua::{dump_state, Machine};

fn main() {
    let programs = [
        "let x be number tel; x := 1 / 0",
        "let x be number tel; x := 1 / 0; if-error 'division-by-zero' then x := 0 fi",
        "let x be number tel; x := 1 / 0; if-error 'overload' then x := 0 fi",
    ];
    for src in programs {
        let program = load_program(src, true).expect("valid program");
        let state = Machine::default().run(&program).expect("terminates");
        println!("{src}\n{}", dump_state(&state));
    }
}
