//! Shared helpers for integration tests: the fixture corpus, random
//! corpus and graph generators, and brute-force oracles.
#![allow(dead_code)]

pub mod corpus_gen;
pub mod graph_gen;
pub mod oracle;

use std::path::PathBuf;

use ecograph_core::{builtin_schema, load_corpus, CorpusLoad};

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../core/fixtures/ecosystem"))
}

pub fn load_fixture() -> CorpusLoad {
    load_corpus(&[fixture_dir()], builtin_schema()).expect("fixture directory is readable")
}

/// Reads every fixture file as `(path, text)`, sorted by path.
pub fn fixture_sources() -> Vec<(PathBuf, String)> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(fixture_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "yaml"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p).unwrap();
            (p, text)
        })
        .collect()
}
