//! Graph serializations: JSON for the graph view and Graphviz DOT.

use std::fmt::Write;

use serde::Serialize;

use crate::graph::EcosystemGraph;
use crate::model::{AssetId, AssetType};

#[derive(Debug, Serialize)]
struct GraphDoc<'a> {
    nodes: Vec<NodeDoc<'a>>,
    edges: Vec<EdgeDoc<'a>>,
}

#[derive(Debug, Serialize)]
struct NodeDoc<'a> {
    id: &'a AssetId,
    name: &'a str,
    #[serde(rename = "type")]
    node_type: Option<AssetType>,
    stub: bool,
    organization: Option<&'a str>,
}

#[derive(Debug, Serialize)]
struct EdgeDoc<'a> {
    from: &'a AssetId,
    to: &'a AssetId,
}

/// `{"nodes":[...],"edges":[...]}` with nodes sorted by id and edges by
/// `(from, to)`. Stubs carry `"stub": true` and `"type": null`.
pub fn to_graph_json(g: &EcosystemGraph) -> String {
    let doc = GraphDoc {
        nodes: g
            .nodes()
            .map(|n| NodeDoc {
                id: &n.id,
                name: &n.display_name,
                node_type: n.asset_type(),
                stub: n.is_stub(),
                organization: n.organization(),
            })
            .collect(),
        edges: g.edges().map(|(from, to)| EdgeDoc { from, to }).collect(),
    };
    serde_json::to_string(&doc).expect("graph document serializes")
}

fn dot_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => {}
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Graphviz digraph. Shapes: dataset box, model ellipse, application
/// hexagon, stub dashed box.
pub fn to_dot(g: &EcosystemGraph) -> String {
    let mut out = String::from("digraph ecosystem {\n    rankdir=LR;\n");
    for n in g.nodes() {
        let style = match n.asset_type() {
            Some(AssetType::Dataset) => "shape=box",
            Some(AssetType::Model) => "shape=ellipse",
            Some(AssetType::Application) => "shape=hexagon",
            None => "shape=box, style=dashed",
        };
        writeln!(out, "    {} [label={}, {style}];", dot_string(n.id.as_str()), dot_string(&n.display_name)).unwrap();
    }
    for (from, to) in g.edges() {
        writeln!(out, "    {} -> {};", dot_string(from.as_str()), dot_string(to.as_str())).unwrap();
    }
    out.push_str("}\n");
    out
}
