//! Restores colloquial source (implicit precedence, grouped declarations,
//! optional `else`) into fully bracketed concrete syntax.

use lingua::syntax::{restore_expression, restore_program};

fn main() {
    println!("{}", restore_expression("x + y + z + x * y").expect("valid expression"));
    println!("{}", restore_expression("a < b + 1 and not c or d").expect("valid expression"));
    let src = "let x, y, z be number tel; x := 1; if x > 0 then y := x fi; while y < 10 do y := y * 2 od";
    print!("{}", restore_program(src).expect("valid program"));
}
