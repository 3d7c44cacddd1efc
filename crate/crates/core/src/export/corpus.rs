//! Canonical asset-file output.
//!
//! Records are sorted by id and fields follow schema order. All text is
//! double-quoted so the output re-parses to exactly the same values.

use std::fmt::Write;

use sha2::{Digest, Sha256};

use crate::model::{Annotation, Asset, FieldValue, Value};
use crate::schema::builtin_schema;

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 || ('\u{7f}'..='\u{9f}').contains(&c) || matches!(c, '\u{2028}' | '\u{2029}' | '\u{feff}' | '\u{fffe}' | '\u{ffff}') => {
                write!(out, "\\u{:04x}", c as u32).unwrap();
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// A present text that would otherwise read as a missing-data sentinel.
fn collides_with_sentinel(s: &str) -> bool {
    matches!(s.trim().to_ascii_lowercase().as_str(), "none" | "unknown" | "n/a")
}

enum Rendered {
    Scalar(String),
    List(Vec<String>),
}

fn render_value(fv: &FieldValue) -> (Rendered, bool) {
    match fv.annotation() {
        Annotation::Present(Value::Text(s)) => (Rendered::Scalar(quote(s)), collides_with_sentinel(s)),
        Annotation::Present(Value::List(items)) => (Rendered::List(items.iter().map(|i| quote(i)).collect()), false),
        Annotation::Present(Value::Date(d)) => (Rendered::Scalar(quote(&d.to_string())), false),
        Annotation::Present(Value::Access(a)) => (Rendered::Scalar(a.as_str().to_owned()), false),
        Annotation::None => (Rendered::Scalar("none".into()), false),
        Annotation::Unknown => (Rendered::Scalar("unknown".into()), false),
        Annotation::NotApplicable => (Rendered::Scalar("n/a".into()), false),
        Annotation::Unannotated => (Rendered::Scalar("\"\"".into()), false),
    }
}

fn write_value(out: &mut String, rendered: &Rendered, indent: &str) {
    match rendered {
        Rendered::Scalar(s) => writeln!(out, " {s}").unwrap(),
        Rendered::List(items) => {
            out.push('\n');
            for item in items {
                writeln!(out, "{indent}- {item}").unwrap();
            }
        }
    }
}

fn write_field(out: &mut String, name: &str, fv: &FieldValue) {
    if fv.kind() == crate::model::FieldKind::Unannotated && fv.explanation().is_none() {
        return;
    }
    let (rendered, literal) = render_value(fv);
    if fv.explanation().is_none() && !literal {
        write!(out, "  {name}:").unwrap();
        write_value(out, &rendered, "    ");
        return;
    }
    writeln!(out, "  {name}:").unwrap();
    write!(out, "    value:").unwrap();
    write_value(out, &rendered, "      ");
    if let Some(e) = fv.explanation() {
        writeln!(out, "    explanation: {}", quote(e)).unwrap();
    }
    if literal {
        writeln!(out, "    literal: true").unwrap();
    }
}

/// Serializes assets to the asset-file format in canonical form.
pub fn export_corpus(assets: &[Asset]) -> String {
    let schema = builtin_schema();
    let mut sorted: Vec<&Asset> = assets.iter().collect();
    sorted.sort_by(|a, b| a.id.cmp(&b.id));
    if sorted.is_empty() {
        return "[]\n".to_owned();
    }
    let mut out = String::new();
    for asset in sorted {
        writeln!(out, "- type: {}", asset.asset_type).unwrap();
        for spec in schema.fields() {
            if let Some(fv) = asset.card.get(spec.name) {
                write_field(&mut out, spec.name, fv);
            }
        }
    }
    out
}

/// Hex SHA-256 of the canonical export.
pub fn content_hash(assets: &[Asset]) -> String {
    hex::encode(Sha256::digest(export_corpus(assets).as_bytes()))
}
