use std::process::ExitCode;

fn main() -> ExitCode {
    evidencia::cli::run(std::env::args_os())
}
