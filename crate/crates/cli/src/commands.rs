use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::time::Duration;

use ecograph_core::{
    builtin_schema, ecosystem_stats, export_corpus, hub_ranking, impact_score, render_card, timeline,
    to_csv_filtered, to_dot, to_graph_json, AssetFilter, Diagnostic, Ecosystem, Error as CoreError, TableSpec,
};
use ecograph_server::{ServeConfig, ServeError};

use crate::render;
use crate::{Command, ExportArgs, Format};

/// Standard output plus exit status for a command that ran to completion.
pub struct Report {
    pub stdout: String,
    pub code: u8,
}

impl Report {
    fn ok(stdout: String) -> Report {
        Report { stdout, code: 0 }
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Validation failure or unknown id.
    Domain(String),
    /// Bad input files, bad flags, or I/O.
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Usage(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Domain(m) | CliError::Usage(m) => f.write_str(m),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> CliError {
        match e {
            CoreError::NotFound(_) => CliError::Domain(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

pub fn run(command: Command) -> Result<Report, CliError> {
    match command {
        Command::Validate { strict, corpus } => validate(&corpus.paths, strict),
        Command::Stats { json, corpus } => {
            let eco = load_valid(&corpus.paths)?;
            let stats = ecosystem_stats(&eco.graph, builtin_schema());
            if json {
                Ok(Report::ok(to_json(&stats)?))
            } else {
                Ok(Report::ok(render::stats(&stats)))
            }
        }
        Command::Hubs { k, asset_type, json, corpus } => {
            let eco = load_valid(&corpus.paths)?;
            let hubs = hub_ranking(&eco.graph, k, asset_type);
            if json {
                Ok(Report::ok(to_json(&hubs)?))
            } else {
                Ok(Report::ok(render::hubs(&hubs)))
            }
        }
        Command::Card { id, corpus } => {
            let eco = load_valid(&corpus.paths)?;
            let node = eco.graph.node(&id).ok_or_else(|| CliError::Domain(format!("no asset `{id}`")))?;
            let asset = node.asset.as_deref().ok_or_else(|| {
                CliError::Domain(format!("`{id}` is referenced as a dependency but has no card"))
            })?;
            Ok(Report::ok(render_card(asset, &eco.graph, builtin_schema())?))
        }
        Command::Impact { id, corpus } => {
            let eco = load_valid(&corpus.paths)?;
            let score = impact_score(&eco.graph, &id)?;
            let downstream = eco.graph.downstream_closure(&id)?;
            Ok(Report::ok(render::impact(&id, score, &downstream)))
        }
        Command::Timeline { from, to, corpus } => {
            let eco = load_valid(&corpus.paths)?;
            let t = timeline(&eco.corpus.assets, from, to)?;
            Ok(Report::ok(render::timeline(&t)))
        }
        Command::Export(args) => export(args),
        Command::Serve { bind, ui, watch, poll_ms, corpus } => {
            let config = ServeConfig {
                inputs: corpus.paths,
                bind,
                ui,
                watch: watch.then(|| Duration::from_millis(poll_ms.max(1))),
            };
            serve(config)
        }
    }
}

fn to_json(value: &impl serde::Serialize) -> Result<String, CliError> {
    serde_json::to_string_pretty(value).map(|s| s + "\n").map_err(|e| CliError::Usage(e.to_string()))
}

fn load(paths: &[PathBuf]) -> Result<Ecosystem, CliError> {
    Ecosystem::load(paths, builtin_schema()).map_err(|e| CliError::Usage(e.to_string()))
}

/// Loads the corpus and refuses to go on if it has errors.
fn load_valid(paths: &[PathBuf]) -> Result<Ecosystem, CliError> {
    let eco = load(paths)?;
    if !eco.is_valid() {
        let errors: Vec<&Diagnostic> = eco.diagnostics.iter().filter(|d| d.is_error()).collect();
        print_diagnostics(&errors);
        return Err(CliError::Domain(format!(
            "corpus has {} error(s); run `ecograph validate` for details",
            errors.len()
        )));
    }
    Ok(eco)
}

fn print_diagnostics(diags: &[&Diagnostic]) {
    let mut stderr = std::io::stderr().lock();
    let _ = stderr.write_all(render::diagnostics(diags).as_bytes());
}

fn validate(paths: &[PathBuf], strict: bool) -> Result<Report, CliError> {
    let eco = load(paths)?;
    let all: Vec<&Diagnostic> = eco.diagnostics.iter().collect();
    print_diagnostics(&all);
    let (errors, warnings) = (eco.error_count(), eco.warning_count());
    let failed = errors > 0 || (strict && warnings > 0);
    let stdout = format!(
        "{}, {}, {}\n",
        render::count(eco.corpus.assets.len(), "asset"),
        render::count(errors, "error"),
        render::count(warnings, "warning"),
    );
    Ok(Report { stdout, code: u8::from(failed) })
}

fn export(args: ExportArgs) -> Result<Report, CliError> {
    let table_only = [
        ("--fields", args.fields.is_some()),
        ("--sort", args.sort.is_some()),
        ("--dir", args.dir.is_some()),
        ("--type", args.asset_type.is_some()),
        ("--with-explanations", args.with_explanations),
        ("--organization", args.organization.is_some()),
        ("--access", args.access.is_some()),
        ("--modality", args.modality.is_some()),
        ("--created-from", args.created_from.is_some()),
        ("--created-to", args.created_to.is_some()),
        ("--q", args.q.is_some()),
    ];
    if args.format != Format::Csv {
        if let Some((flag, _)) = table_only.iter().find(|(_, given)| *given) {
            return Err(CliError::Usage(format!("{flag} only applies to --format csv")));
        }
    }
    let schema = builtin_schema();
    let mut spec = TableSpec::all_columns(schema);
    if let Some(fields) = &args.fields {
        spec.fields = TableSpec::parse_fields(fields);
    }
    spec.sort_by = args.sort;
    spec.sort_dir = args.dir.unwrap_or_default();
    spec.type_filter = args.asset_type;
    spec.with_explanations = args.with_explanations;
    let filter = AssetFilter {
        organization: args.organization,
        access: args.access,
        modality: args.modality,
        created_from: args.created_from,
        created_to: args.created_to,
        q: args.q,
    };
    // Reject a bad spec before touching the corpus.
    spec.columns(schema)?;
    filter.validate()?;

    let eco = load_valid(&args.corpus.paths)?;
    let text = match args.format {
        Format::Csv => to_csv_filtered(&eco.corpus.assets, &spec, &filter, schema)?,
        Format::Json => to_graph_json(&eco.graph) + "\n",
        Format::Dot => to_dot(&eco.graph),
        Format::Canonical => export_corpus(&eco.corpus.assets),
    };
    Ok(Report::ok(text))
}

fn serve(config: ServeConfig) -> Result<Report, CliError> {
    let _ = tracing_subscriber::fmt()
        .with_env_filter(
            tracing_subscriber::EnvFilter::try_from_default_env().unwrap_or_else(|_| "info".into()),
        )
        .with_writer(std::io::stderr)
        .try_init();
    let runtime = tokio::runtime::Runtime::new().map_err(|e| CliError::Usage(e.to_string()))?;
    match runtime.block_on(ecograph_server::serve(config)) {
        Ok(()) => Ok(Report::ok(String::new())),
        Err(ServeError::InvalidCorpus(errors)) => {
            print_diagnostics(&errors.iter().collect::<Vec<_>>());
            Err(CliError::Domain(format!("corpus has {} error(s); not serving it", errors.len())))
        }
        Err(e) => Err(CliError::Usage(e.to_string())),
    }
}
