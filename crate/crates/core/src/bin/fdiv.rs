use std::process::ExitCode;

fn main() -> ExitCode {
    fdiv::cli::run()
}
