//! Markdown rendering of ecosystem cards.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::graph::EcosystemGraph;
use crate::model::{Asset, AssetId, FieldKind, FieldValue};
use crate::schema::{Category, Schema};

fn node_links(g: &EcosystemGraph, ids: &std::collections::BTreeSet<AssetId>) -> String {
    if ids.is_empty() {
        return "_none_".to_owned();
    }
    ids.iter()
        .map(|id| match g.node(id.as_str()) {
            Some(n) if n.is_stub() => format!("{} (undocumented)", n.display_name),
            Some(n) => format!("[{}]({}.md)", n.display_name, n.id),
            None => id.to_string(),
        })
        .collect::<Vec<_>>()
        .join(", ")
}

fn indent_continuation(s: &str, prefix: &str) -> String {
    s.lines().collect::<Vec<_>>().join(&format!("\n{prefix}"))
}

fn render_value(fv: &FieldValue) -> String {
    match fv.kind() {
        FieldKind::Present => indent_continuation(&fv.render(), "  "),
        FieldKind::Unannotated => "_unannotated_".to_owned(),
        kind => format!("_{}_", kind.sentinel()),
    }
}

/// Renders the card for `asset`: title, upstream and downstream links, then
/// one section per category in schema order. The asset must be an annotated
/// node of `g`.
pub fn render_card(asset: &Asset, g: &EcosystemGraph, schema: &Schema) -> Result<String> {
    let id = asset.id.as_str();
    if g.node(id).is_none_or(|n| n.is_stub()) {
        return Err(Error::NotFound(id.to_owned()));
    }

    let mut out = String::new();
    writeln!(out, "# {}\n", asset.name()).unwrap();
    writeln!(out, "**Upstream:** {}  ", node_links(g, &g.direct_dependencies(id)?)).unwrap();
    writeln!(out, "**Downstream:** {}\n", node_links(g, &g.direct_dependents(id)?)).unwrap();
    writeln!(out, "`{}` · {}\n", asset.id, asset.asset_type).unwrap();

    for category in Category::ALL {
        writeln!(out, "## {}\n", category.title()).unwrap();
        for spec in schema.applicable_fields(asset.asset_type).filter(|s| s.category == category) {
            let fv = asset.card.get(spec.name).cloned().unwrap_or_else(FieldValue::unannotated);
            writeln!(out, "- **{}** ({}): {}", spec.name, spec.help, render_value(&fv)).unwrap();
            if let Some(explanation) = fv.explanation() {
                for line in explanation.lines() {
                    writeln!(out, "  > {line}").unwrap();
                }
            }
        }
        out.push('\n');
    }
    Ok(out)
}
