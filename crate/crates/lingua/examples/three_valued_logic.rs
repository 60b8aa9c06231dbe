//! Prints the two three-valued logics side by side: the lazy (McCarthy)
//! connectives on composites and the Kleene connectives used by yokes.

use lingua::ops::{and_c, not_c, or_c};
use lingua::transfer::{ArithOp, Transfer};
use lingua::value::{Composite, CompositeE, ErrorWord};
use lingua::Limits;

fn show(c: &CompositeE) -> String {
    match c {
        Ok(c) => c.data.to_string(),
        Err(e) => format!("!{e}"),
    }
}

fn main() {
    let values: [CompositeE; 3] = [Ok(Composite::boolean(true)), Ok(Composite::boolean(false)), Err(ErrorWord::new("err"))];
    println!("Lazy connectives on composites (left operand decides first):");
    for a in &values {
        for b in &values {
            println!("  {:>6} and {:>6} = {:>6}    {:>6} or {:>6} = {:>6}", show(a), show(b), show(&and_c(a, b)), show(a), show(b), show(&or_c(a, b)));
        }
        println!("  not {:>6} = {}", show(a), show(&not_c(a)));
    }

    // In yokes, a definite `false` (for `and`) or `true` (for `or`) wins
    // even when the other side fails.
    let limits = Limits::default();
    let input: CompositeE = Ok(Composite::number(1));
    let transfers = [
        ("true", Transfer::ConstBool(true)),
        ("false", Transfer::ConstBool(false)),
        ("1/0", Transfer::arith(ArithOp::Divide, Transfer::Pass, Transfer::num(0))),
    ];
    println!("\nKleene connectives in transfers:");
    for (na, a) in &transfers {
        for (nb, b) in &transfers {
            let and = Transfer::and(a.clone(), b.clone()).eval(&input, &limits);
            let or = Transfer::or(a.clone(), b.clone()).eval(&input, &limits);
            println!("  {na:>5} AND {nb:>5} = {:>18}    {na:>5} OR {nb:>5} = {:>18}", show(&and), show(&or));
        }
    }
}
