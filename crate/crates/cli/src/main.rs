use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = cyclotoric_cli::run(std::env::args_os());
    let mut stdout = std::io::stdout().lock();
    // a closed pipe is not worth a panic
    let _ = stdout.write_all(outcome.stdout.as_bytes());
    let _ = stdout.flush();
    ExitCode::from(outcome.code as u8)
}
