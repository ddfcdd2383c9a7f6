use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(redei::run(std::env::args_os()) as u8)
}
