//! A loaded corpus together with its graph and the combined diagnostics.

use std::path::PathBuf;

use crate::diagnostic::{Code, Diagnostic};
use crate::error::Result;
use crate::graph::{build_graph, EcosystemGraph};
use crate::ingest::{load_corpus, CorpusLoad};
use crate::schema::Schema;

#[derive(Debug, Clone)]
pub struct Ecosystem {
    pub corpus: CorpusLoad,
    pub graph: EcosystemGraph,
    /// Ingest findings followed by graph findings, ordered by file and
    /// record. Findings ingest already reports are not repeated.
    pub diagnostics: Vec<Diagnostic>,
}

impl Ecosystem {
    pub fn new(corpus: CorpusLoad) -> Ecosystem {
        let (graph, graph_diags) = build_graph(&corpus.assets);
        let mut diagnostics = corpus.diagnostics.clone();
        diagnostics.extend(graph_diags.into_iter().filter(|d| !matches!(d.code, Code::DupId | Code::SelfDep)));
        diagnostics.sort_by(|a, b| (&a.location.file, a.location.record).cmp(&(&b.location.file, b.location.record)));
        Ecosystem { corpus, graph, diagnostics }
    }

    pub fn load(inputs: &[PathBuf], schema: &Schema) -> Result<Ecosystem> {
        Ok(Ecosystem::new(load_corpus(inputs, schema)?))
    }

    pub fn error_count(&self) -> usize {
        self.diagnostics.iter().filter(|d| d.is_error()).count()
    }

    pub fn warning_count(&self) -> usize {
        self.diagnostics.len() - self.error_count()
    }

    pub fn is_valid(&self) -> bool {
        self.error_count() == 0
    }
}
