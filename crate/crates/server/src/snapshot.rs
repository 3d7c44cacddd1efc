use std::path::PathBuf;
use std::sync::{Arc, PoisonError, RwLock};

use chrono::{DateTime, Utc};
use ecograph_core::{builtin_schema, content_hash, Asset, Diagnostic, Ecosystem};

use crate::ServeError;

/// An immutable view of one valid corpus. Requests clone the `Arc` once and
/// answer entirely from it.
#[derive(Debug)]
pub struct Snapshot {
    pub ecosystem: Ecosystem,
    pub built_at: DateTime<Utc>,
    /// Hex SHA-256 of the canonical export; doubles as the ETag.
    pub content_hash: String,
}

impl Snapshot {
    pub fn new(ecosystem: Ecosystem) -> Snapshot {
        let content_hash = content_hash(&ecosystem.corpus.assets);
        Snapshot { ecosystem, built_at: Utc::now(), content_hash }
    }

    /// Loads `inputs`, refusing corpora with error diagnostics.
    pub fn load(inputs: &[PathBuf]) -> Result<Snapshot, ServeError> {
        let ecosystem = Ecosystem::load(inputs, builtin_schema())?;
        if !ecosystem.is_valid() {
            let errors: Vec<Diagnostic> = ecosystem.diagnostics.into_iter().filter(Diagnostic::is_error).collect();
            return Err(ServeError::InvalidCorpus(errors));
        }
        Ok(Snapshot::new(ecosystem))
    }

    pub fn assets(&self) -> &[Asset] {
        &self.ecosystem.corpus.assets
    }

    pub fn etag(&self) -> String {
        format!("\"{}\"", self.content_hash)
    }
}

/// Shared server state: the live snapshot behind an atomically swapped `Arc`.
#[derive(Debug)]
pub struct AppState {
    current: RwLock<Arc<Snapshot>>,
}

impl AppState {
    pub fn new(snapshot: Snapshot) -> Arc<AppState> {
        Arc::new(AppState { current: RwLock::new(Arc::new(snapshot)) })
    }

    pub fn current(&self) -> Arc<Snapshot> {
        self.current.read().unwrap_or_else(PoisonError::into_inner).clone()
    }

    pub fn replace(&self, snapshot: Snapshot) {
        *self.current.write().unwrap_or_else(PoisonError::into_inner) = Arc::new(snapshot);
    }
}
