//! Turns a many-sorted signature into an equational grammar, reports the
//! carriers that have terms, and checks terms against the grammar.

use lingua::siggen::{gen_grammar, parse_signature, reachable_carriers, Grammar, Term};

fn main() {
    let sig = parse_signature(include_str!("../corpus/algnumboo.sig")).expect("valid signature");
    let text = gen_grammar(&sig);
    print!("{text}");
    println!("reachable: {:?}", reachable_carriers(&sig));

    let grammar = Grammar::parse(&text).expect("generated grammar parses");
    let one = Term::constant("1");
    let sum = Term::apply("plus", vec![one.clone(), one.clone()]);
    let test = Term::apply("less", vec![sum.clone(), one.clone()]);
    for (carrier, term) in [("NumExp", &sum), ("BooExp", &test), ("NumExp", &test)] {
        println!("{term} in {carrier}: {}", grammar.accepts(carrier, term));
    }

    let bare = parse_signature(include_str!("../corpus/algnumboo_no_constants.sig")).expect("valid signature");
    println!("without constants, reachable: {:?}", reachable_carriers(&bare));
}
