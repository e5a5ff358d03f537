//! Command-line front end of the `kgws` library.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod presets;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use args::{Cli, Command};
use error::Result;

fn with_output(path: Option<&Path>, f: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match path {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            let outcome = f(&mut w);
            w.flush()?;
            outcome
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            let outcome = f(&mut w);
            w.flush()?;
            outcome
        }
    }
}

/// Runs one parsed command line.
pub fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Spectrum(a) => {
            with_output(a.output.output.as_deref(), |w| commands::spectrum(a, w))
        }
        Command::Verify(a) => with_output(a.output.as_deref(), |w| commands::verify(a, w)),
        Command::Scan(a) => with_output(a.output.output.as_deref(), |w| commands::scan(a, w)),
        Command::Wavefunction(a) => {
            with_output(a.output.output.as_deref(), |w| commands::wavefunction(a, w))
        }
    }
}
