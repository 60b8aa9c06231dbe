//! Runtime-checked assertions: a colloquial `begin-asr … end-asr` block is
//! restored into explicit checks around every atomic instruction.

use lingua::cli::{execute, load_program, RunOptions};
use lingua::syntax::restore_instruction;
use lingua::dump_state;

fn main() {
    let block = "begin-asr x > 0; x := x - 1; y := x end-asr";
    println!("{block}\nrestores to\n{}\n", restore_instruction(block).expect("valid block"));

    let src = "let x, y be number tel; x := 2; y := 0; begin-asr x > 0; x := x - 1; x := x - 1; y := x end-asr";
    let program = load_program(src, true).expect("valid program");
    let checked = execute(&program, &RunOptions::default()).expect("terminates");
    println!("with assertions:\n{}", dump_state(&checked));
    let unchecked = execute(&program, &RunOptions { assertions: false, ..RunOptions::default() }).expect("terminates");
    println!("assertions erased:\n{}", dump_state(&unchecked));
}
