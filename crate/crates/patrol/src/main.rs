use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let mut stdout = std::io::stdout().lock();
    let status = patrol::run(std::env::args_os(), &mut stdout);
    let _ = stdout.flush();
    ExitCode::from(status)
}
