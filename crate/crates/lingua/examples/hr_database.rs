//! Runs the bundled HR database program: record and array types with yokes,
//! building a one-entry salesmen register, then dumps the final state.

use lingua::cli::load_program;
use lingua::{dump_state, Machine};

fn main() {
    let src = include_str!("../corpus/hr_database.lingua");
    let program = load_program(src, true).expect("valid program");
    let state = Machine::default().run(&program).expect("terminates");
    print!("{}", dump_state(&state));
}
