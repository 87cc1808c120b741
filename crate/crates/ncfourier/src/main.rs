use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(ncfourier::cli::run(std::env::args_os()))
}
