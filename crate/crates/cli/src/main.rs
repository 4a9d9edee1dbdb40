mod args;
mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match commands::dispatch(&cli.command) {
        Ok(report) => {
            let elapsed = cli.timing.then(|| start.elapsed().as_millis() as u64);
            let text = report.render(cli.format, elapsed);
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(2);
            }
            if report.failed {
                eprintln!("genfib: a statement expected to hold failed");
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("genfib: {e}");
            match e {
                genfib::Error::Inconsistent(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
