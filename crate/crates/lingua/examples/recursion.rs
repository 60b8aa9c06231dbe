//! Imperative, mutually recursive and functional procedures.

use lingua::cli::load_program;
use lingua::{dump_state, Machine};

fn main() {
    let programs = [
        ("countdown", include_str!("../corpus/countdown.lingua")),
        ("parity", include_str!("../corpus/parity.lingua")),
        ("absolute power", include_str!("../corpus/absolute_power.lingua")),
    ];
    // Deep recursion needs a generous stack.
    let worker = std::thread::Builder::new().stack_size(256 << 20).spawn(move || {
        for (title, src) in programs {
            let program = load_program(src, true).expect("valid program");
            let state = Machine::default().run(&program).expect("terminates");
            println!("== {title}\n{}", dump_state(&state));
        }
        let runaway = load_program(
            "proc spin (val empty-fp ref n as number) call spin (ref n) end proc;
             let n be number tel; n := 0; call spin (ref n)",
            true,
        )
        .expect("valid program");
        println!("== runaway recursion\n{:?}", Machine::default().run(&runaway));
    });
    worker.expect("spawn").join().expect("worker");
}
