//! Read-only HTTP API over a corpus snapshot, with optional static UI files
//! and polling reload.

mod api;
mod snapshot;
mod watch;

use std::net::SocketAddr;
use std::path::PathBuf;
use std::time::Duration;

use ecograph_core::Diagnostic;
use thiserror::Error;
use tokio::net::TcpListener;

pub use api::{router, ApiError};
pub use snapshot::{AppState, Snapshot};
pub use watch::{reload, watch, Reload};

#[derive(Debug, Error)]
pub enum ServeError {
    #[error(transparent)]
    Core(#[from] ecograph_core::Error),

    #[error("corpus has {} error(s); refusing to serve it", .0.len())]
    InvalidCorpus(Vec<Diagnostic>),

    #[error("cannot bind {addr}: {source}")]
    Bind {
        addr: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone)]
pub struct ServeConfig {
    pub inputs: Vec<PathBuf>,
    pub bind: String,
    pub ui: Option<PathBuf>,
    /// Poll the inputs at this interval and swap in valid changes.
    pub watch: Option<Duration>,
}

/// Loads the corpus, binds, and serves until ctrl-c.
pub async fn serve(config: ServeConfig) -> Result<(), ServeError> {
    let state = AppState::new(Snapshot::load(&config.inputs)?);
    let listener = TcpListener::bind(&config.bind)
        .await
        .map_err(|source| ServeError::Bind { addr: config.bind.clone(), source })?;
    let addr: SocketAddr = listener.local_addr()?;
    let snap = state.current();
    tracing::info!(%addr, assets = snap.assets().len(), hash = %snap.content_hash, "serving");
    if let Some(interval) = config.watch {
        tokio::spawn(watch(state.clone(), config.inputs.clone(), interval));
    }
    axum::serve(listener, router(state, config.ui))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
            tracing::info!("shutting down");
        })
        .await?;
    Ok(())
}
