//! Command-line front end: restore, parse, execute, and tooling commands.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::ast::Program;
use crate::dump::dump_state;
use crate::interp::{Abort, Machine, DEFAULT_MAX_STEPS};
use crate::limits::Limits;
use crate::siggen::{gen_grammar, parse_signature};
use crate::state::State;
use crate::syntax::{parse_program, pretty_instruction, restore_program, Dialect, SyntaxError};

/// Process exit statuses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    /// The final state carries an error word.
    LinguaError = 1,
    /// Unreadable input, parse or restore failure.
    Input = 2,
    /// Step budget or call depth exhausted.
    Budget = 3,
    /// The interpreter met something it cannot execute.
    Internal = 4,
}

impl Exit {
    pub fn code(self) -> u8 {
        self as u8
    }
}

#[derive(Parser, Debug)]
#[command(name = "lingua", version, about = "Run, check and restore Lingua programs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Restore, parse and execute a program, then print the final state.
    Run {
        file: PathBuf,
        #[command(flatten)]
        options: RunArgs,
    },
    /// Restore and parse a program without running it.
    Check {
        file: PathBuf,
        /// Parse the file as concrete syntax only.
        #[arg(long)]
        no_restore: bool,
    },
    /// Print the concrete text of a colloquial program.
    Restore { file: PathBuf },
    /// Print the abstract-syntax grammar of a signature file.
    Grammar { file: PathBuf },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Step budget; exhausting it ends the run with status 3.
    #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
    max_steps: u64,
    /// File of `key = integer` representability limits.
    #[arg(long)]
    limits: Option<PathBuf>,
    /// Whether assertions are executed or erased.
    #[arg(long, value_enum, default_value_t = Switch::On)]
    assertions: Switch,
    /// Parse the file as concrete syntax only.
    #[arg(long)]
    no_restore: bool,
    /// Print every executed atomic instruction to standard error.
    #[arg(long)]
    trace: bool,
}

/// Settings of one program run.
#[derive(Clone, Debug)]
pub struct RunOptions {
    pub max_steps: u64,
    pub limits: Limits,
    pub assertions: bool,
    pub restore: bool,
    pub trace: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { max_steps: DEFAULT_MAX_STEPS, limits: Limits::default(), assertions: true, restore: true, trace: false }
    }
}

/// Parses program text, colloquial (restored) or strictly concrete.
pub fn load_program(src: &str, restore: bool) -> Result<Program, SyntaxError> {
    if restore {
        parse_program(&restore_program(src)?, Dialect::Concrete)
    } else {
        parse_program(src, Dialect::Concrete)
    }
}

/// Executes a parsed program from the initial state.
pub fn execute(program: &Program, options: &RunOptions) -> Result<State, Abort> {
    let mut machine = Machine::new(options.limits.clone()).with_max_steps(options.max_steps);
    if options.trace {
        machine = machine.with_trace(|ins| {
            let line = pretty_instruction(ins).lines().map(str::trim).collect::<Vec<_>>().join(" ");
            let _ = writeln!(std::io::stderr().lock(), "{line}");
        });
    }
    if options.assertions {
        machine.run(program)
    } else {
        machine.run(&program.erase_assertions())
    }
}

fn read(path: &Path, err: &mut dyn Write) -> Option<String> {
    match std::fs::read_to_string(path) {
        Ok(text) => Some(text),
        Err(e) => {
            let _ = writeln!(err, "{}: {e}", path.display());
            None
        }
    }
}

fn syntax_failure(path: &Path, e: &SyntaxError, err: &mut dyn Write) -> Exit {
    let _ = writeln!(err, "{}:{e}", path.display());
    Exit::Input
}

fn cmd_run(file: &Path, args: &RunArgs, out: &mut dyn Write, err: &mut dyn Write) -> Exit {
    let limits = match &args.limits {
        None => Limits::default(),
        Some(path) => {
            let Some(text) = read(path, err) else { return Exit::Input };
            match text.parse() {
                Ok(l) => l,
                Err(e) => {
                    let _ = writeln!(err, "{}: {e}", path.display());
                    return Exit::Input;
                }
            }
        }
    };
    let Some(src) = read(file, err) else { return Exit::Input };
    let program = match load_program(&src, !args.no_restore) {
        Ok(p) => p,
        Err(e) => return syntax_failure(file, &e, err),
    };
    let options = RunOptions {
        max_steps: args.max_steps,
        limits,
        assertions: args.assertions == Switch::On,
        restore: !args.no_restore,
        trace: args.trace,
    };
    match execute(&program, &options) {
        Ok(state) => {
            let _ = out.write_all(dump_state(&state).as_bytes());
            if state.is_error() {
                Exit::LinguaError
            } else {
                Exit::Success
            }
        }
        Err(abort @ Abort::Budget) => {
            let _ = writeln!(err, "{abort}");
            Exit::Budget
        }
        Err(abort @ Abort::NotExecutable(_)) => {
            let _ = writeln!(err, "{abort}");
            Exit::Internal
        }
    }
}

/// Runs the command line `args` (including the program name), writing
/// results to `out` and diagnostics to `err`.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> Exit
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { Exit::Input } else { Exit::Success };
        }
    };
    match &cli.command {
        Command::Run { file, options } => cmd_run(file, options, out, err),
        Command::Check { file, no_restore } => {
            let Some(src) = read(file, err) else { return Exit::Input };
            match load_program(&src, !no_restore) {
                Ok(_) => {
                    let _ = writeln!(out, "ok");
                    Exit::Success
                }
                Err(e) => syntax_failure(file, &e, err),
            }
        }
        Command::Restore { file } => {
            let Some(src) = read(file, err) else { return Exit::Input };
            match restore_program(&src) {
                Ok(text) => {
                    let _ = out.write_all(text.as_bytes());
                    Exit::Success
                }
                Err(e) => syntax_failure(file, &e, err),
            }
        }
        Command::Grammar { file } => {
            let Some(src) = read(file, err) else { return Exit::Input };
            match parse_signature(&src) {
                Ok(sig) => {
                    let _ = out.write_all(gen_grammar(&sig).as_bytes());
                    Exit::Success
                }
                Err(e) => {
                    let _ = writeln!(err, "{}: {e}", file.display());
                    Exit::Input
                }
            }
        }
    }
}
