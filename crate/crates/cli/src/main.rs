use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use xychain_cli::args::{resolve, Cli};
use xychain_cli::{commands, CliError, RunConfig};

fn start(config: &RunConfig) -> Result<(), CliError> {
    if let Some(n) = config.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    }
    commands::run(config)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            e.exit()
        }
        Err(e) => {
            let err = CliError::Usage(e.to_string().trim_end().to_string());
            return fail(&err);
        }
    };
    match resolve(cli).and_then(|config| start(&config)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(&e),
    }
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("error[{}]: {e}", e.category());
    ExitCode::from(e.exit_code() as u8)
}
