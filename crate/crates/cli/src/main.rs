mod args;
mod commands;
mod error;
mod io;
mod report;
mod sweep;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use error::{CliResult, EXIT_PRECONDITION};
use report::Format;

fn run(cli: Cli) -> CliResult<()> {
    let cfg = cli.global.config()?;
    let requested = cli.global.format;
    let (report, default_format) = match &cli.command {
        Command::Dsharp { arcs, emit } => (commands::dsharp(*arcs, *emit)?, Format::Json),
        Command::Rho { digraph, normalize } => (commands::rho(digraph, *normalize, cfg)?, Format::Json),
        Command::Bounds { digraph, arcs, family } => {
            let format = requested.unwrap_or(Format::Json);
            (commands::bounds(digraph.as_deref(), *arcs, *family, cfg, format)?, format)
        }
        Command::Verify(v) => {
            let format = if v.range.is_some() { Format::Csv } else { Format::Json };
            (commands::verify(v, cfg)?, format)
        }
        Command::Enumerate { arcs, cap, rho } => (commands::enumerate(*arcs, *cap, *rho, cfg)?, Format::Text),
        Command::Oracle { arcs, vertices } => (commands::oracle(*arcs, *vertices, cfg)?, Format::Json),
    };
    let rendered = report.render(requested.unwrap_or(default_format))?;
    match &cli.global.out {
        Some(path) => std::fs::write(path, rendered)?,
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(rendered.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { EXIT_PRECONDITION } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("digrho: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
