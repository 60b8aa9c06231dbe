//! Types carry yokes (integrity constraints). Each assignment is checked
//! against the variable's yoke and body; failures load an error word.

use lingua::cli::load_program;
use lingua::{dump_state, Machine};

const PROGRAMS: &[(&str, &str)] = &[
    ("yoke holds", "let x be number with value < 10 tel; x := 7"),
    ("yoke violated", "let x be number with value < 10 tel; x := 11"),
    ("yoke not Boolean", "let x be number with value + 1 tel; x := 3"),
    ("wrong body", "let x be number tel; x := 'five'"),
    (
        "yoke replaced",
        "let x be number tel; x := 40; yoke x := value > 5; x := 12; x := 3",
    ),
    (
        "type constants",
        "set small as number with value < 100 tes; let age be small tel; age := 42",
    ),
];

fn main() {
    for (title, src) in PROGRAMS {
        let program = load_program(src, true).expect("valid program");
        let state = Machine::default().run(&program).expect("terminates");
        println!("== {title}\n{src}\n{}", dump_state(&state));
    }
}
