use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use ifps_cli::config::CONFIG_ENV;

fn main() -> ExitCode {
    let config = std::env::var_os(CONFIG_ENV).map(PathBuf::from);
    let out = ifps_cli::run(std::env::args_os(), config.as_deref());
    // A closed pipe is not worth a panic.
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
