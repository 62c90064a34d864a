use std::process::ExitCode;

fn main() -> ExitCode {
    let result = topokit::cli::run(std::env::args_os());
    if result.exit_code == 2 {
        eprintln!("{}", result.payload);
    } else {
        println!("{}", result.payload);
    }
    ExitCode::from(result.exit_code as u8)
}
