use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(rank1heat::cli::run(std::env::args()) as u8)
}
