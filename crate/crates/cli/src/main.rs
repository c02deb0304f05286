use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use sing_cli::args::Cli;
use sing_cli::cert::Certificate;
use sing_cli::commands::write_file;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.global.threads {
        if threads == 0 {
            eprintln!("singcheck: --threads must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global().expect("thread pool");
    }
    let start = Instant::now();
    let outcome = match sing_cli::run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("singcheck: {e}");
            return ExitCode::from(2);
        }
    };
    let wall = cli.global.timings.then(|| start.elapsed().as_millis() as u64);
    let cert = Certificate::new(&cli, outcome, wall);
    let text = cert.to_json();
    match &cli.global.cert {
        Some(path) => {
            if let Err(e) = write_file(path, &text) {
                eprintln!("singcheck: {e}");
                return ExitCode::from(2);
            }
        }
        None => {
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
        }
    }
    ExitCode::from(cert.exit_code)
}
