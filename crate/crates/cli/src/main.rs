use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use filtreg_cli::{emit_plot_data, emit_report, run_manifest_path, ExitStatus, Format};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutputFormat {
    Table,
    Csv,
}

/// Filter-regular sequences over truncated local rings: run a manifest.
#[derive(Debug, Parser)]
#[command(version, about)]
struct Args {
    /// Path to a TOML run manifest.
    manifest: PathBuf,
    #[arg(long, value_enum, default_value = "table")]
    format: OutputFormat,
    /// Write (n, value) pairs of every Hilbert table to this file.
    #[arg(long, value_name = "PATH")]
    emit_plot_data: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let report = match run_manifest_path(&args.manifest) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(ExitStatus::Error.code() as u8);
        }
    };
    let format = match args.format {
        OutputFormat::Table => Format::Table,
        OutputFormat::Csv => Format::Csv,
    };
    print!("{}", emit_report(&report, format));
    if format == Format::Csv {
        for e in &report.errors {
            eprintln!("error: {e}");
        }
    }
    if let Some(path) = &args.emit_plot_data {
        if let Err(e) = std::fs::write(path, emit_plot_data(&report)) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(ExitStatus::Error.code() as u8);
        }
    }
    ExitCode::from(report.exit_status().code() as u8)
}
