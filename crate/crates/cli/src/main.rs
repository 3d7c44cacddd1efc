mod commands;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ecograph_core::{Access, AssetType, PartialDate, SortDir};

/// Validate, analyse, export and serve a foundation-model ecosystem corpus.
#[derive(Debug, Parser)]
#[command(name = "ecograph", version)]
struct Cli {
    /// Write the command's output to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Corpus {
    /// Asset files or directories.
    #[arg(env = "ECOGRAPH_ASSETS", default_value = "assets")]
    paths: Vec<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check every asset file; exit 1 on errors.
    Validate {
        /// Fail on warnings too.
        #[arg(long)]
        strict: bool,
        #[command(flatten)]
        corpus: Corpus,
    },
    /// Organization breakdown, type totals, stubs, cycles and opacity.
    Stats {
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        corpus: Corpus,
    },
    /// Nodes with the most direct dependents.
    Hubs {
        #[arg(long, default_value_t = 10)]
        k: usize,
        #[arg(long = "type", value_parser = parse_type)]
        asset_type: Option<AssetType>,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        corpus: Corpus,
    },
    /// Render one asset card as Markdown.
    Card {
        id: String,
        #[command(flatten)]
        corpus: Corpus,
    },
    /// Everything that transitively depends on an asset.
    Impact {
        id: String,
        #[command(flatten)]
        corpus: Corpus,
    },
    /// Assets by creation date.
    Timeline {
        #[arg(long, value_parser = parse_date)]
        from: Option<PartialDate>,
        #[arg(long, value_parser = parse_date)]
        to: Option<PartialDate>,
        #[command(flatten)]
        corpus: Corpus,
    },
    /// Table, graph or canonical corpus export.
    Export(ExportArgs),
    /// Serve the read-only HTTP API.
    Serve {
        #[arg(long, default_value = "127.0.0.1:8080", value_name = "HOST:PORT")]
        bind: String,
        /// Directory of static UI files.
        #[arg(long, value_name = "PATH")]
        ui: Option<PathBuf>,
        /// Reload when asset files change.
        #[arg(long)]
        watch: bool,
        /// Polling interval for --watch.
        #[arg(long, default_value_t = 500, value_name = "MS")]
        poll_ms: u64,
        #[command(flatten)]
        corpus: Corpus,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Dot,
    Canonical,
}

#[derive(Debug, Args)]
struct ExportArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Comma-separated columns; defaults to id, type and every schema field.
    #[arg(long)]
    fields: Option<String>,
    #[arg(long, value_name = "FIELD")]
    sort: Option<String>,
    #[arg(long, value_parser = parse_dir)]
    dir: Option<SortDir>,
    #[arg(long = "type", value_parser = parse_type)]
    asset_type: Option<AssetType>,
    /// Add a `<field>_explanation` column after each field.
    #[arg(long)]
    with_explanations: bool,
    #[arg(long)]
    organization: Option<String>,
    #[arg(long, value_parser = parse_access)]
    access: Option<Access>,
    #[arg(long)]
    modality: Option<String>,
    #[arg(long, value_parser = parse_date)]
    created_from: Option<PartialDate>,
    #[arg(long, value_parser = parse_date)]
    created_to: Option<PartialDate>,
    /// Substring of name or description.
    #[arg(long)]
    q: Option<String>,
    #[command(flatten)]
    corpus: Corpus,
}

fn parse_type(s: &str) -> Result<AssetType, String> {
    s.parse()
}

fn parse_dir(s: &str) -> Result<SortDir, String> {
    s.parse().map_err(|_| "expected asc or desc".to_owned())
}

fn parse_access(s: &str) -> Result<Access, String> {
    Access::parse(s).ok_or_else(|| "expected open, limited or closed".to_owned())
}

fn parse_date(s: &str) -> Result<PartialDate, String> {
    PartialDate::parse(s).ok_or_else(|| "expected YYYY, YYYY-MM or YYYY-MM-DD".to_owned())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.clone();
    match commands::run(cli.command) {
        Ok(report) => {
            let code = report.code;
            if let Err(e) = emit(out.as_ref(), &report.stdout) {
                eprintln_safe(&e);
                return ExitCode::from(2);
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln_safe(&e.to_string());
            ExitCode::from(e.exit_code())
        }
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => match std::io::stdout().lock().write_all(text.as_bytes()) {
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
            other => other.map_err(|e| format!("standard output: {e}")),
        },
    }
}

fn eprintln_safe(msg: &str) {
    let _ = writeln!(std::io::stderr(), "ecograph: {msg}");
}
