use std::process::ExitCode;

use lattice_cuts::cli::{run_command, EXIT_OK, EXIT_MISMATCH};

fn main() -> ExitCode {
    let out = run_command(std::env::args_os());
    if out.code == EXIT_OK || out.code == EXIT_MISMATCH {
        print!("{}", out.text);
    } else {
        eprint!("{}", out.text);
    }
    ExitCode::from(out.code as u8)
}
