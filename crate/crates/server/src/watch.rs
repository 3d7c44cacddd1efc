use std::path::PathBuf;
use std::sync::Arc;
use std::time::{Duration, SystemTime};

use ecograph_core::{discover, Diagnostic};

use crate::snapshot::{AppState, Snapshot};
use crate::ServeError;

/// What a reload did to the live snapshot.
#[derive(Debug)]
pub enum Reload {
    /// Content hash changed; the new snapshot is live.
    Swapped { content_hash: String },
    /// Same canonical content; the old snapshot stays.
    Unchanged,
    /// The edited corpus has errors; the old snapshot stays.
    Rejected(Vec<Diagnostic>),
    /// The inputs could not be read; the old snapshot stays.
    Failed(String),
}

/// Re-reads `inputs` and swaps the snapshot in only if the result is valid
/// and differs canonically from what is being served.
pub fn reload(state: &AppState, inputs: &[PathBuf]) -> Reload {
    match Snapshot::load(inputs) {
        Ok(next) if next.content_hash == state.current().content_hash => Reload::Unchanged,
        Ok(next) => {
            let content_hash = next.content_hash.clone();
            state.replace(next);
            Reload::Swapped { content_hash }
        }
        Err(ServeError::InvalidCorpus(errors)) => Reload::Rejected(errors),
        Err(e) => Reload::Failed(e.to_string()),
    }
}

type Fingerprint = Vec<(PathBuf, Option<SystemTime>, u64)>;

fn fingerprint(inputs: &[PathBuf]) -> Option<Fingerprint> {
    let files = discover(inputs).ok()?;
    Some(
        files
            .into_iter()
            .map(|p| {
                let meta = std::fs::metadata(&p).ok();
                let modified = meta.as_ref().and_then(|m| m.modified().ok());
                let len = meta.map_or(0, |m| m.len());
                (p, modified, len)
            })
            .collect(),
    )
}

/// Polls file metadata under `inputs` and reloads whenever it changes.
pub async fn watch(state: Arc<AppState>, inputs: Vec<PathBuf>, interval: Duration) {
    let mut last = fingerprint(&inputs);
    let mut ticker = tokio::time::interval(interval);
    ticker.tick().await;
    loop {
        ticker.tick().await;
        let now = fingerprint(&inputs);
        if now == last {
            continue;
        }
        last = now;
        let (state, inputs) = (state.clone(), inputs.clone());
        let outcome = tokio::task::spawn_blocking(move || reload(&state, &inputs)).await;
        match outcome {
            Ok(Reload::Swapped { content_hash }) => tracing::info!(%content_hash, "reloaded corpus"),
            Ok(Reload::Unchanged) => tracing::debug!("files changed but canonical content did not"),
            Ok(Reload::Rejected(errors)) => {
                for d in &errors {
                    tracing::warn!("{d}");
                }
                tracing::warn!(errors = errors.len(), "edited corpus is invalid; still serving the previous snapshot");
            }
            Ok(Reload::Failed(msg)) => tracing::warn!("reload failed: {msg}"),
            Err(e) => tracing::error!("reload task panicked: {e}"),
        }
    }
}
