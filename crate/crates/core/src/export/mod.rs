//! Interchange formats: CSV tables, graph JSON, DOT, Markdown cards and the
//! canonical asset-file form.

pub mod card;
pub mod corpus;
pub mod csv;
pub mod graph;
pub mod table;

pub use card::render_card;
pub use corpus::{content_hash, export_corpus};
pub use csv::{to_csv, to_csv_filtered};
pub use graph::{to_dot, to_graph_json};
pub use table::{select_rows, AssetFilter, Column, SortDir, TableSpec};
