use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let stdin = io::stdin();
    let mut input = stdin.lock();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = ordchomp::cli::run(std::env::args_os(), &mut input, &mut out, &mut io::stderr());
    let _ = out.flush();
    ExitCode::from(code as u8)
}
