//! Random dependency graphs built as asset lists.
#![allow(clippy::needless_range_loop)]

use ecograph_core::{Asset, AssetType, EcosystemCard, FieldKind, FieldValue, SourceRef, Value};
use rand::Rng;

pub struct RandomGraph {
    pub n: usize,
    /// Stubs have no card, so they never have incoming edges.
    pub annotated: Vec<bool>,
    /// `(u, v)`: node `v` lists node `u` as a dependency.
    pub edges: Vec<(usize, usize)>,
    pub assets: Vec<Asset>,
}

pub fn node_id(i: usize) -> String {
    format!("n{i}")
}

/// Up to `max_nodes` nodes, each ordered pair an edge with probability drawn
/// from `[0, max_density]`. Cycles are allowed, self loops are not.
pub fn random_graph(rng: &mut impl Rng, max_nodes: usize, max_density: f64) -> RandomGraph {
    let n = rng.random_range(1..=max_nodes);
    let density = rng.random_range(0.0..=max_density);
    let annotated: Vec<bool> = (0..n).map(|_| rng.random_bool(0.85)).collect();
    let mut edges = Vec::new();
    for v in 0..n {
        if !annotated[v] {
            continue;
        }
        for u in 0..n {
            if u != v && rng.random_bool(density) {
                edges.push((u, v));
            }
        }
    }
    let types = AssetType::ALL;
    let assets = (0..n)
        .filter(|&v| annotated[v])
        .map(|v| {
            let deps: Vec<String> = edges.iter().filter(|e| e.1 == v).map(|e| node_id(e.0)).collect();
            let mut card = EcosystemCard::new();
            card.insert("name", FieldValue::text(node_id(v)).unwrap());
            card.insert("organization", FieldValue::text(format!("org{}", v % 7)).unwrap());
            let deps = if deps.is_empty() {
                FieldValue::missing(FieldKind::MissingNone)
            } else {
                FieldValue::present(Value::List(deps)).unwrap()
            };
            card.insert("dependencies", deps);
            Asset::new(types[rng.random_range(0..3)], card, SourceRef::default()).unwrap()
        })
        .collect();
    RandomGraph { n, annotated, edges, assets }
}
