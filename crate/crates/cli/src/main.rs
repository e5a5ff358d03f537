use std::process::ExitCode;

use clap::Parser;
use kgws_cli::args::Cli;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("KGWS_LOG", "warn")).init();
    let cli = Cli::parse();
    match kgws_cli::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("kgws: {e}");
            e.into()
        }
    }
}
