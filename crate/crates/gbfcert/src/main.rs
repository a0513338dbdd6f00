use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(gbfcert::cli::run(std::env::args()) as u8)
}
