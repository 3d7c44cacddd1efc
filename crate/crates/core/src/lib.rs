//! Foundation-model ecosystem registry: asset cards parsed from YAML, the
//! dependency graph built from them, analyses over that graph, and exports.

pub mod analysis;
pub mod diagnostic;
pub mod ecosystem;
pub mod error;
pub mod export;
pub mod graph;
pub mod ingest;
pub mod model;
pub mod schema;
pub mod yaml;

pub use analysis::{
    ecosystem_stats, hub_ranking, impact_score, opacity_report, org_summary, timeline, EcosystemStats, HubEntry,
    OpacityReport, OrgSummaryRow, Timeline, TypeTotals,
};
pub use diagnostic::{Code, Diagnostic, Location, Severity};
pub use ecosystem::Ecosystem;
pub use error::{Error, Result};
pub use export::{
    content_hash, export_corpus, render_card, to_csv, to_csv_filtered, to_dot, to_graph_json, AssetFilter, SortDir,
    TableSpec,
};
pub use graph::{build_graph, EcosystemGraph, NodeKind};
pub use ingest::{discover, load_corpus, parse_corpus, parse_sources, CorpusLoad};
pub use model::{
    canonical_id, Access, Annotation, Asset, AssetId, AssetType, EcosystemCard, FieldKind, FieldValue, PartialDate,
    SourceRef, Value,
};
pub use schema::{builtin_schema, Category, FieldSpec, Schema, TypeSet, ValueKind};
