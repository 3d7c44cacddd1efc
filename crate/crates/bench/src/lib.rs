//! Synthetic corpora for benchmarks.

use std::fmt::Write;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ORGS: &[&str] = &["Acme", "Borealis Lab", "Cinder AI", "Delta Research", "Ember Systems", "Fjord Institute"];
const MODALITIES: &[&str] = &["text", "image", "audio", "video", "code"];

/// `n` assets spread over `files` YAML sources. Each asset depends on up to
/// three earlier assets, so the graph is acyclic with a few heavy hubs.
pub fn synthetic_sources(n: usize, files: usize, seed: u64) -> Vec<(PathBuf, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let files = files.max(1);
    let mut texts = vec![String::new(); files];
    for i in 0..n {
        let kind = match i % 10 {
            0..=1 => "dataset",
            2..=6 => "model",
            _ => "application",
        };
        let out = &mut texts[i % files];
        let _ = writeln!(out, "- type: {kind}");
        let _ = writeln!(out, "  name: Asset {i}");
        let _ = writeln!(out, "  organization: {}", ORGS[rng.random_range(0..ORGS.len())]);
        let _ = writeln!(out, "  description: \"Synthetic asset {i}, generated for benchmarks.\"");
        let _ = writeln!(
            out,
            "  created_date: {}-{:02}-{:02}",
            rng.random_range(2018..=2024),
            rng.random_range(1..=12),
            rng.random_range(1..=28)
        );
        let _ = writeln!(out, "  url: https://example.org/{i}");
        if kind != "application" {
            let _ = writeln!(out, "  modality: [{}]", MODALITIES[rng.random_range(0..MODALITIES.len())]);
            let _ = writeln!(out, "  size: unknown");
        }
        let _ = writeln!(out, "  access: {}", ["open", "limited", "closed"][rng.random_range(0..3)]);
        let _ = writeln!(out, "  license: {}", if rng.random_bool(0.3) { "unknown" } else { "MIT" });
        if i > 0 {
            let mut deps: Vec<String> = (0..rng.random_range(0..=3))
                .map(|_| {
                    // Skew toward low indices to grow hubs.
                    let j = (rng.random::<f64>().powi(3) * i as f64) as usize;
                    format!("Asset {j}")
                })
                .collect();
            deps.sort();
            deps.dedup();
            if deps.is_empty() {
                let _ = writeln!(out, "  dependencies: []");
            } else {
                let _ = writeln!(out, "  dependencies: [{}]", deps.join(", "));
            }
        } else {
            let _ = writeln!(out, "  dependencies: []");
        }
        let _ = writeln!(out, "  monitoring:\n    value: none\n    explanation: Nobody watches asset {i}.");
    }
    texts.into_iter().enumerate().map(|(i, t)| (PathBuf::from(format!("bench{i}.yaml")), t)).collect()
}
