use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, text) = lattice_sugeno::cli::run(std::env::args_os());
    if code == lattice_sugeno::cli::EXIT_USAGE {
        eprint!("{text}");
    } else {
        print!("{text}");
    }
    ExitCode::from(code as u8)
}
