use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use kernsamp::Error;
use kernsamp_cli::{output_path, run, RunConfig, RunError};

fn main() -> ExitCode {
    let config = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&config).and_then(|body| write_output(&config.out, &body)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.diagnostic());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn write_output(out: &str, body: &str) -> Result<(), RunError> {
    match output_path(out) {
        None => std::io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| Error::from(e).into()),
        Some(path) => std::fs::write(&path, body)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())).into()),
    }
}
