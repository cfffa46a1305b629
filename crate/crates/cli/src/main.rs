use std::process::ExitCode;

use clap::Parser;
use mpf_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    match run(cli, &mut stdout.lock()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("mpf: {f}");
            ExitCode::from(f.code)
        }
    }
}
