use std::process::ExitCode;

use lingua::cli::{run_cli, Exit};

/// Deeply nested programs recurse deeply; give the interpreter room.
const STACK_SIZE: usize = 512 * 1024 * 1024;

fn main() -> ExitCode {
    let worker = std::thread::Builder::new().stack_size(STACK_SIZE).spawn(|| {
        let stdout = std::io::stdout();
        let stderr = std::io::stderr();
        run_cli(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
    });
    let exit = match worker.map(|handle| handle.join()) {
        Ok(Ok(exit)) => exit,
        _ => Exit::Internal,
    };
    ExitCode::from(exit.code())
}
