use std::process::ExitCode;

fn main() -> ExitCode {
    ringheat::cli::main_with_args(std::env::args_os())
}
