use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let o = qtorus::cli::run(std::env::args_os());
    eprint!("{}", o.stderr);
    match &o.out_file {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &o.stdout) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(qtorus::cli::EXIT_USAGE as u8);
            }
        }
        None => {
            let _ = std::io::stdout().write_all(o.stdout.as_bytes());
        }
    }
    ExitCode::from(o.code as u8)
}
