use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let mut out = io::stdout();
    let mut err = io::stderr();
    let code = blockperm::cli::run(std::env::args_os(), &mut out, &mut err);
    ExitCode::from(code as u8)
}
