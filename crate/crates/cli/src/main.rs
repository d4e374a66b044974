use std::process::ExitCode;

use qmop_cli::{run, Status};

fn main() -> ExitCode {
    let result = run(std::env::args_os());
    let text = result.render();
    if result.status == Status::Error {
        eprintln!("{text}");
    } else {
        println!("{text}");
    }
    ExitCode::from(result.exit_code() as u8)
}
