use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let stdout = std::io::stdout();
    match asymerr::cli::run(std::env::args_os()) {
        Ok(text) => {
            let _ = stdout.lock().write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            let _ = stdout.lock().write_all(e.stdout.as_bytes());
            eprint!("{}", e.render());
            ExitCode::from(e.exit)
        }
    }
}
