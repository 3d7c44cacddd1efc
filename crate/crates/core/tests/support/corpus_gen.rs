//! Random valid corpora written in varied YAML styles, paired with the cards
//! a correct parser must produce.

use std::fmt::Write;
use std::path::PathBuf;

use ecograph_core::{
    builtin_schema, canonical_id, Access, AssetId, AssetType, EcosystemCard, FieldKind, FieldSpec, FieldValue,
    PartialDate, Value, ValueKind,
};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

pub struct ExpectedAsset {
    pub id: AssetId,
    pub asset_type: AssetType,
    pub card: EcosystemCard,
}

pub struct GeneratedCorpus {
    pub sources: Vec<(PathBuf, String)>,
    pub expected: Vec<ExpectedAsset>,
}

const WORDS: &[&str] = &[
    "Atlas", "Borealis", "Cinder", "Delta", "Ember", "Fjord", "Gale", "Harbor", "Iris", "Juniper", "Kestrel", "Lumen",
];

const ORGS: &[&str] = &["Acme", "Acme, Inc.", "Open Lab", "Zeta \"Z\" Research", "Université Nord", "none"];

const FRAGMENTS: &[&str] = &[
    "plain words",
    "a,b",
    "say \"hi\"",
    "line one\nline two",
    "key: value",
    "hash # tag",
    "- dash",
    "ünïcödé ✓ 日本",
    "it's",
    "  padded  ",
    "{braces} [brackets]",
    "50% off",
    "true",
    "123",
    "*star &anchor !tag",
    "@at `tick`",
    "back\\slash",
    "tab\there",
    "~",
    "null",
    "trailing:",
    "?question",
    "|pipe >fold",
    "CR\r\nLF",
    "\u{1}ctrl\u{85}nel",
    "none",
    "Unknown",
    " n/a ",
];

fn random_text(rng: &mut impl Rng) -> String {
    loop {
        let parts = rng.random_range(1..=3);
        let s: Vec<&str> = (0..parts).map(|_| *FRAGMENTS.choose(rng).unwrap()).collect();
        let s = s.join(if rng.random_bool(0.5) { " " } else { "" });
        if !s.trim().is_empty() {
            return s;
        }
    }
}

fn is_sentinel(s: &str) -> bool {
    matches!(s.trim().to_ascii_lowercase().as_str(), "none" | "unknown" | "n/a")
}

fn plain_ok(s: &str, in_flow: bool) -> bool {
    let Some(first) = s.chars().next() else { return false };
    first.is_alphanumeric()
        && s == s.trim()
        && !matches!(s, "null" | "Null" | "NULL")
        && !s.ends_with(':')
        && !s.contains(": ")
        && !s.contains(" #")
        && s.chars().all(|c| c.is_alphanumeric() || " .-/()?;=+".contains(c) || (c == ',' && !in_flow))
}

fn double_quoted(s: &str) -> String {
    let mut out = String::from("\"");
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 || ('\u{7f}'..='\u{9f}').contains(&c) => {
                write!(out, "\\x{:02X}", c as u32).unwrap();
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn single_quoted_ok(s: &str) -> bool {
    !s.chars().any(|c| c.is_control())
}

fn block_literal_ok(s: &str) -> bool {
    s.contains('\n')
        && !s.ends_with('\n')
        && !s.chars().any(|c| c.is_control() && c != '\n')
        && s.lines().all(|l| !l.starts_with(' ') && !l.is_empty() && l == l.trim_end())
}

/// Appends a scalar after `key:` (the caller has written `key:` already).
fn emit_scalar(out: &mut String, rng: &mut impl Rng, s: &str, indent: usize, in_flow: bool) {
    let pad = " ".repeat(indent + 2);
    let mut styles = vec![0];
    if plain_ok(s, in_flow) {
        styles.push(1);
    }
    if single_quoted_ok(s) {
        styles.push(2);
    }
    if !in_flow && block_literal_ok(s) {
        styles.push(3);
    }
    match *styles.choose(rng).unwrap() {
        1 => out.push_str(s),
        2 => write!(out, "'{}'", s.replace('\'', "''")).unwrap(),
        3 => {
            out.push_str("|-");
            for line in s.lines() {
                write!(out, "\n{pad}{line}").unwrap();
            }
        }
        _ => out.push_str(&double_quoted(s)),
    }
}

fn emit_list(out: &mut String, rng: &mut impl Rng, items: &[String], indent: usize) {
    let pad = " ".repeat(indent);
    if items.is_empty() || rng.random_bool(0.5) {
        out.push('[');
        for (i, item) in items.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            emit_scalar(out, rng, item, indent, true);
        }
        out.push(']');
    } else {
        for item in items {
            write!(out, "\n{pad}- ").unwrap();
            emit_scalar(out, rng, item, indent + 2, false);
        }
    }
}

fn sentinel_spelling(rng: &mut impl Rng, kind: FieldKind) -> String {
    let options: &[&str] = match kind {
        FieldKind::MissingNone => &["none", "None", "NONE", "\"none\""],
        FieldKind::MissingUnknown => &["unknown", "Unknown", "'UNKNOWN'"],
        FieldKind::NotApplicable => &["n/a", "N/A", "\"N/a\""],
        _ => &["", "~", "null", "\"\"", "'  '"],
    };
    options.choose(rng).unwrap().to_string()
}

enum Raw {
    Text(String),
    List(Vec<String>),
    Missing(FieldKind),
}

fn random_list_item(rng: &mut impl Rng) -> String {
    loop {
        let s = random_text(rng);
        if !matches!(s.as_str(), "~" | "null") {
            return s;
        }
    }
}

fn random_present(rng: &mut impl Rng, spec: &FieldSpec, dep_pool: &[String]) -> (Raw, Value) {
    match spec.value_kind {
        ValueKind::Text => {
            let s = random_text(rng);
            (Raw::Text(s.clone()), Value::Text(s))
        }
        ValueKind::TextList => {
            let items: Vec<String> = (0..rng.random_range(1..=3)).map(|_| random_list_item(rng)).collect();
            if items.len() == 1 && !is_sentinel(&items[0]) && !matches!(items[0].trim(), "~" | "null" | "") && rng.random_bool(0.3) {
                return (Raw::Text(items[0].clone()), Value::List(items));
            }
            (Raw::List(items.clone()), Value::List(items))
        }
        ValueKind::Date => {
            let year = rng.random_range(1990..=2030);
            let month = rng.random_bool(0.7).then(|| rng.random_range(1..=12));
            let day = month.and(rng.random_bool(0.6).then(|| rng.random_range(1..=28)));
            let d = PartialDate::from_ymd(year, month, day).unwrap();
            (Raw::Text(d.to_string()), Value::Date(d))
        }
        ValueKind::AccessEnum => {
            let a = *Access::ALL.choose(rng).unwrap();
            let spelled = match rng.random_range(0..3) {
                0 => a.as_str().to_owned(),
                1 => a.as_str().to_uppercase(),
                _ => {
                    let mut c = a.as_str().chars();
                    let first = c.next().unwrap().to_uppercase().to_string();
                    first + c.as_str()
                }
            };
            (Raw::Text(spelled), Value::Access(a))
        }
        ValueKind::DependencyList => {
            let count = rng.random_range(1..=3.min(dep_pool.len()));
            let mut deps: Vec<&String> = dep_pool.choose_multiple(rng, count).collect();
            deps.shuffle(rng);
            let deps: Vec<String> = deps.into_iter().map(|d| respell(rng, d)).collect();
            (Raw::List(deps.clone()), Value::List(deps))
        }
    }
}

/// Another spelling with the same slug.
fn respell(rng: &mut impl Rng, name: &str) -> String {
    match rng.random_range(0..4) {
        0 => name.to_uppercase(),
        1 => name.to_lowercase(),
        2 => name.replace(' ', "-"),
        _ => name.to_owned(),
    }
}

fn write_field(out: &mut String, rng: &mut impl Rng, name: &str, raw: &Raw, explanation: Option<&str>, literal: bool) {
    let mapping = explanation.is_some() || literal || rng.random_bool(0.05);
    if !mapping {
        write!(out, "  {name}:").unwrap();
        match raw {
            Raw::Text(s) => {
                out.push(' ');
                emit_scalar(out, rng, s, 2, false);
            }
            Raw::List(items) => {
                out.push(' ');
                emit_list(out, rng, items, 4);
            }
            Raw::Missing(kind) => {
                let s = sentinel_spelling(rng, *kind);
                if !s.is_empty() {
                    write!(out, " {s}").unwrap();
                }
            }
        }
        out.push('\n');
        return;
    }
    writeln!(out, "  {name}:").unwrap();
    let mut keys = vec!["value"];
    if explanation.is_some() {
        keys.push("explanation");
    }
    if literal || rng.random_bool(0.1) {
        keys.push("literal");
    }
    keys.shuffle(rng);
    for key in keys {
        match key {
            "value" => {
                write!(out, "    value:").unwrap();
                match raw {
                    Raw::Text(s) => {
                        out.push(' ');
                        emit_scalar(out, rng, s, 4, false);
                    }
                    Raw::List(items) => {
                        out.push(' ');
                        emit_list(out, rng, items, 6);
                    }
                    Raw::Missing(kind) => {
                        let s = sentinel_spelling(rng, *kind);
                        if !s.is_empty() {
                            write!(out, " {s}").unwrap();
                        }
                    }
                }
                out.push('\n');
            }
            "explanation" => {
                out.push_str("    explanation: ");
                emit_scalar(out, rng, explanation.unwrap(), 4, false);
                out.push('\n');
            }
            _ => writeln!(out, "    literal: {literal}").unwrap(),
        }
    }
}

/// A corpus of 1 to `max_records` valid records spread over up to three
/// files. Dependencies point at other records (with varied spelling) or at
/// names that no record defines, which become stubs.
pub fn random_corpus(rng: &mut impl Rng, max_records: usize) -> GeneratedCorpus {
    let schema = builtin_schema();
    let n = rng.random_range(1..=max_records);
    let names: Vec<String> = (0..n).map(|i| format!("{} {i}", WORDS.choose(rng).unwrap())).collect();
    let stub_names: Vec<String> = (0..rng.random_range(0..3)).map(|i| format!("Undocumented Source {i}")).collect();
    let files = rng.random_range(1..=3);
    let mut texts = vec![String::new(); files];
    let mut expected = Vec::with_capacity(n);

    for (i, name) in names.iter().enumerate() {
        let asset_type = *AssetType::ALL.choose(rng).unwrap();
        let dep_pool: Vec<String> =
            names.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, s)| s.clone()).chain(stub_names.iter().cloned()).collect();
        let mut card = EcosystemCard::new();
        let mut body = String::new();
        let mut lines: Vec<String> = Vec::new();

        for spec in schema.applicable_fields(asset_type) {
            let mut literal = false;
            let (raw, fv) = match spec.name {
                "name" => (Raw::Text(name.clone()), FieldValue::text(name.clone()).unwrap()),
                "organization" => {
                    let org = ORGS.choose(rng).unwrap().to_string();
                    literal = is_sentinel(&org);
                    (Raw::Text(org.clone()), FieldValue::text(org).unwrap())
                }
                _ => {
                    let roll = rng.random_range(0..100);
                    if spec.value_kind == ValueKind::DependencyList && dep_pool.is_empty() && roll < 50 {
                        (Raw::List(Vec::new()), FieldValue::missing(FieldKind::MissingNone))
                    } else if roll < 15 {
                        (Raw::Missing(FieldKind::Unannotated), FieldValue::unannotated())
                    } else if roll < 40 {
                        let kind = *[FieldKind::MissingNone, FieldKind::MissingUnknown, FieldKind::NotApplicable]
                            .choose(rng)
                            .unwrap();
                        (Raw::Missing(kind), FieldValue::missing(kind))
                    } else if roll < 45 && matches!(spec.value_kind, ValueKind::TextList | ValueKind::DependencyList) {
                        (Raw::List(Vec::new()), FieldValue::missing(FieldKind::MissingNone))
                    } else if spec.value_kind == ValueKind::DependencyList && dep_pool.is_empty() {
                        (Raw::Missing(FieldKind::MissingUnknown), FieldValue::missing(FieldKind::MissingUnknown))
                    } else {
                        let (raw, value) = random_present(rng, spec, &dep_pool);
                        if let Raw::Text(s) = &raw {
                            literal = spec.value_kind == ValueKind::Text && is_sentinel(s);
                        }
                        (raw, FieldValue::present(value).unwrap())
                    }
                }
            };
            let explanation = rng.random_bool(0.2).then(|| random_text(rng));
            // An explicitly unannotated field with no explanation may simply be left out.
            let omit = fv.kind() == FieldKind::Unannotated && explanation.is_none() && rng.random_bool(0.5);
            let fv = fv.with_explanation(explanation.clone());
            card.insert(spec.name, fv);
            if !omit {
                let mut line = String::new();
                write_field(&mut line, rng, spec.name, &raw, explanation.as_deref(), literal);
                lines.push(line);
            }
        }

        let type_line = if rng.random_bool(0.8) {
            format!("  type: {}\n", asset_type)
        } else {
            format!("  type: \"{}\"\n", asset_type)
        };
        lines.push(type_line);
        lines.shuffle(rng);
        for line in &lines {
            body.push_str(line);
        }
        body.replace_range(0..1, "-");

        let file = rng.random_range(0..files);
        if rng.random_bool(0.2) {
            texts[file].push_str("# comment line\n");
        }
        texts[file].push_str(&body);
        texts[file].push('\n');
        expected.push(ExpectedAsset { id: canonical_id(name).unwrap(), asset_type, card });
    }

    let sources = texts
        .into_iter()
        .enumerate()
        .map(|(i, t)| (PathBuf::from(format!("gen/file{i}.yaml")), if t.is_empty() { "[]\n".to_owned() } else { t }))
        .collect();
    GeneratedCorpus { sources, expected }
}
