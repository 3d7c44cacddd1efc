//! Asset-file parsing and record validation.

use std::collections::{BTreeMap, HashSet};
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::diagnostic::{Code, Diagnostic, Location};
use crate::error::{Error, Result};
use crate::model::{canonical_id, Access, Asset, AssetType, EcosystemCard, FieldKind, FieldValue, PartialDate, SourceRef, Value};
use crate::schema::{Category, FieldSpec, Schema, ValueKind};
use crate::yaml::{self, MapEntry, Node, ScalarStyle};

const REQUIRED: [&str; 2] = ["name", "organization"];

/// Result of loading a set of asset files.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusLoad {
    /// One entry per well-formed record, ordered by file path then record index.
    pub assets: Vec<Asset>,
    pub diagnostics: Vec<Diagnostic>,
    /// No error-severity diagnostics.
    pub valid: bool,
}

impl CorpusLoad {
    fn new(assets: Vec<Asset>, diagnostics: Vec<Diagnostic>) -> CorpusLoad {
        let valid = !diagnostics.iter().any(Diagnostic::is_error);
        CorpusLoad { assets, diagnostics, valid }
    }

    pub fn error_count(&self) -> usize {
        self.diagnostics.iter().filter(|d| d.is_error()).count()
    }

    pub fn warning_count(&self) -> usize {
        self.diagnostics.len() - self.error_count()
    }
}

/// Expands directories into their `*.yaml`/`*.yml` files (recursively,
/// lexicographic order). Plain file paths are kept as given.
pub fn discover(inputs: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for input in inputs {
        let meta = std::fs::metadata(input).map_err(|source| Error::Io { path: input.clone(), source })?;
        if !meta.is_dir() {
            files.push(input.clone());
            continue;
        }
        for entry in walkdir::WalkDir::new(input).sort_by_file_name() {
            let entry = entry.map_err(|e| Error::Io {
                path: e.path().map(Path::to_path_buf).unwrap_or_else(|| input.clone()),
                source: e.into(),
            })?;
            let is_yaml = matches!(entry.path().extension().and_then(|e| e.to_str()), Some("yaml" | "yml"));
            if entry.file_type().is_file() && is_yaml {
                files.push(entry.into_path());
            }
        }
    }
    Ok(files)
}

/// Discovers and parses a corpus. Fails only if an input path does not exist.
pub fn load_corpus(inputs: &[PathBuf], schema: &Schema) -> Result<CorpusLoad> {
    Ok(parse_corpus(&discover(inputs)?, schema))
}

/// Parses and validates asset files. Unreadable or malformed files become
/// diagnostics; the remaining files are still processed.
pub fn parse_corpus(paths: &[PathBuf], schema: &Schema) -> CorpusLoad {
    let mut paths = paths.to_vec();
    paths.sort();
    let per_file: Vec<(Vec<Asset>, Vec<Diagnostic>)> = paths
        .par_iter()
        .map(|path| match std::fs::read_to_string(path) {
            Ok(text) => parse_file(path, &text, schema),
            Err(e) => (Vec::new(), vec![Diagnostic::error(Code::IoError, Location::file(path), e.to_string())]),
        })
        .collect();
    assemble(per_file)
}

/// Like [`parse_corpus`] over in-memory `(path, contents)` pairs.
pub fn parse_sources(sources: &[(PathBuf, String)], schema: &Schema) -> CorpusLoad {
    let mut sources: Vec<&(PathBuf, String)> = sources.iter().collect();
    sources.sort_by(|a, b| a.0.cmp(&b.0));
    assemble(sources.into_iter().map(|(path, text)| parse_file(path, text, schema)).collect())
}

fn assemble(per_file: Vec<(Vec<Asset>, Vec<Diagnostic>)>) -> CorpusLoad {
    let mut assets = Vec::new();
    let mut diagnostics = Vec::new();
    for (a, d) in per_file {
        assets.extend(a);
        diagnostics.extend(d);
    }

    let mut by_id: BTreeMap<&str, Vec<&Asset>> = BTreeMap::new();
    for asset in &assets {
        by_id.entry(asset.id.as_str()).or_default().push(asset);
    }
    for (id, group) in by_id.iter().filter(|(_, g)| g.len() > 1) {
        for asset in group {
            let others: Vec<String> = group
                .iter()
                .filter(|o| o.source != asset.source)
                .map(|o| format!("{} record {}", o.source.file.display(), o.source.record))
                .collect();
            diagnostics.push(Diagnostic::error(
                Code::DupId,
                Location::record(&asset.source).with_field("name"),
                format!("asset id `{id}` is also defined at {}", others.join(", ")),
            ));
        }
    }
    diagnostics.sort_by(|a, b| (&a.location.file, a.location.record).cmp(&(&b.location.file, b.location.record)));
    CorpusLoad::new(assets, diagnostics)
}

/// Parses one file's contents into validated assets plus diagnostics.
pub fn parse_file(path: &Path, text: &str, schema: &Schema) -> (Vec<Asset>, Vec<Diagnostic>) {
    let root = match yaml::load(text) {
        Ok(root) => root,
        Err(e) => {
            let loc = Location::file(path).at_line(Some(e.line));
            return (Vec::new(), vec![Diagnostic::error(Code::ParseError, loc, e.message)]);
        }
    };
    let items = match root {
        None => return (Vec::new(), vec![Diagnostic::warning(Code::EmptyFile, Location::file(path), "file contains no records")]),
        Some(Node::Seq { items, .. }) => items,
        Some(other) => {
            let loc = Location::file(path).at_line(Some(other.line()));
            return (Vec::new(), vec![Diagnostic::error(Code::ParseError, loc, "top level must be a sequence of asset records")]);
        }
    };
    let mut assets = Vec::new();
    let mut diagnostics = Vec::new();
    for (record, item) in items.iter().enumerate() {
        let source = SourceRef { file: path.to_path_buf(), record, line: Some(item.line()) };
        let (asset, diags) = validate_record(item, schema, &source);
        assets.extend(asset);
        diagnostics.extend(diags);
    }
    (assets, diagnostics)
}

/// Validates one record and, when it has no errors, builds its asset with
/// every applicable field materialized.
///
/// All findings are reported, in this order: type, required fields, unknown
/// fields, inapplicable fields, value syntax, unannotated basic fields,
/// self-dependency.
pub fn validate_record(record: &Node, schema: &Schema, source: &SourceRef) -> (Option<Asset>, Vec<Diagnostic>) {
    let base = Location::record(source);
    let entries = match record {
        Node::Map { entries, .. } => entries,
        other => {
            let d = Diagnostic::error(Code::BadRecord, base.at_line(Some(other.line())), "record must be a mapping");
            return (None, vec![d]);
        }
    };
    let at = |e: &MapEntry| base.clone().with_field(e.key.clone()).at_line(Some(e.line));
    let mut diags = Vec::new();

    let mut seen = HashSet::new();
    for e in entries {
        if !seen.insert(e.key.as_str()) {
            diags.push(Diagnostic::error(Code::DuplicateField, at(e), format!("field `{}` appears more than once", e.key)));
        }
    }
    let find = |key: &str| entries.iter().find(|e| e.key == key);

    let asset_type = match find("type") {
        None => {
            diags.push(Diagnostic::error(Code::MissingRequired, base.clone().with_field("type"), "missing required field `type`"));
            None
        }
        Some(e) => match &e.value {
            Node::Scalar { text, .. } => match text.trim().parse::<AssetType>() {
                Ok(t) => Some(t),
                Err(msg) => {
                    diags.push(Diagnostic::error(Code::BadType, at(e), msg));
                    None
                }
            },
            _ => {
                diags.push(Diagnostic::error(Code::BadType, at(e), "`type` must be a scalar"));
                None
            }
        },
    };

    // Parse every schema field up front; findings are emitted below in order.
    let parsed: Vec<(&MapEntry, Option<&FieldSpec>, Option<FieldResult>)> = entries
        .iter()
        .filter(|e| e.key != "type")
        .map(|e| {
            let spec = schema.get(&e.key);
            let applicable = match (spec, asset_type) {
                (Some(s), Some(t)) => s.applicability.contains(t),
                (Some(_), None) => true,
                (None, _) => false,
            };
            let value = spec.filter(|_| applicable).map(|s| parse_field(&e.value, s));
            (e, spec, value)
        })
        .collect();

    for req in REQUIRED {
        match parsed.iter().find(|(e, ..)| e.key == req) {
            None => diags.push(Diagnostic::error(
                Code::MissingRequired,
                base.clone().with_field(req),
                format!("missing required field `{req}`"),
            )),
            Some((e, _, Some(Ok(fv)))) if !fv.is_present() => diags.push(Diagnostic::error(
                Code::MissingRequired,
                at(e),
                format!("required field `{req}` must have a value, found {}", kind_word(fv.kind())),
            )),
            _ => {}
        }
    }

    for (e, spec, _) in &parsed {
        if spec.is_none() {
            let hint = schema.suggest(&e.key).map(|s| format!("; did you mean `{s}`?")).unwrap_or_default();
            diags.push(Diagnostic::error(Code::UnknownField, at(e), format!("unknown field `{}`{hint}", e.key)));
        }
    }
    if let Some(t) = asset_type {
        for (e, spec, _) in &parsed {
            if let Some(s) = spec.filter(|s| !s.applicability.contains(t)) {
                let allowed: Vec<_> = s.applicability.iter().map(AssetType::as_str).collect();
                diags.push(Diagnostic::error(
                    Code::InapplicableField,
                    at(e),
                    format!("field `{}` does not apply to a {t}; it applies to: {}", e.key, allowed.join(", ")),
                ));
            }
        }
    }
    for (e, _, value) in &parsed {
        if let Some(Err((code, msg))) = value {
            diags.push(Diagnostic::error(*code, at(e), msg.clone()));
        }
    }

    let name_value = parsed.iter().find(|(e, ..)| e.key == "name").and_then(|(e, _, v)| match v {
        Some(Ok(fv)) => fv.value().and_then(Value::as_text).map(|n| (*e, n)),
        _ => None,
    });
    let id = name_value.and_then(|(e, name)| match canonical_id(name) {
        Ok(id) => Some(id),
        Err(err) => {
            diags.push(Diagnostic::error(Code::InvalidName, at(e), err.to_string()));
            None
        }
    });

    let value_of = |field: &str| {
        parsed.iter().find(|(e, ..)| e.key == field).and_then(|(_, _, v)| match v {
            Some(Ok(fv)) => Some(fv),
            _ => None,
        })
    };

    if let Some(t) = asset_type {
        for spec in schema.applicable_fields(t).filter(|s| s.category == Category::Basic) {
            let unannotated = match parsed.iter().find(|(e, ..)| e.key == spec.name) {
                None => true,
                Some(_) => value_of(spec.name).is_some_and(|fv| fv.kind() == FieldKind::Unannotated),
            };
            if unannotated && !REQUIRED.contains(&spec.name) {
                diags.push(Diagnostic::warning(
                    Code::UnannotatedBasic,
                    base.clone().with_field(spec.name),
                    format!("basic field `{}` is not annotated", spec.name),
                ));
            }
        }
    }

    if let (Some(id), Some(Value::List(deps))) = (&id, value_of("dependencies").and_then(FieldValue::value)) {
        for dep in deps {
            if canonical_id(dep).ok().as_ref() == Some(id) {
                let e = find("dependencies").expect("parsed from this entry");
                diags.push(Diagnostic::error(Code::SelfDep, at(e), format!("asset `{id}` lists itself (`{dep}`) as a dependency")));
            }
        }
    }

    if diags.iter().any(Diagnostic::is_error) {
        return (None, diags);
    }
    let (Some(asset_type), Some(id)) = (asset_type, id) else {
        return (None, diags);
    };
    let mut card = EcosystemCard::new();
    for spec in schema.applicable_fields(asset_type) {
        let fv = value_of(spec.name).cloned().unwrap_or_else(FieldValue::unannotated);
        card.insert(spec.name, fv);
    }
    (Some(Asset { id, asset_type, card, source: source.clone() }), diags)
}

fn kind_word(kind: FieldKind) -> &'static str {
    match kind {
        FieldKind::Present => "a value",
        FieldKind::MissingNone => "`none`",
        FieldKind::MissingUnknown => "`unknown`",
        FieldKind::Unannotated => "an empty value",
        FieldKind::NotApplicable => "`n/a`",
    }
}

type FieldResult = Result<FieldValue, (Code, String)>;

fn parse_field(node: &Node, spec: &FieldSpec) -> FieldResult {
    let Node::Map { entries, .. } = node else {
        return parse_raw(node, false, spec);
    };
    let mut value = None;
    let mut explanation = None;
    let mut literal = false;
    for e in entries {
        match (e.key.as_str(), &e.value) {
            ("value", v) => value = Some(v),
            ("explanation", Node::Scalar { text, .. }) => explanation = Some(text.clone()),
            ("explanation", _) => return Err((Code::BadValue, "`explanation` must be text".into())),
            ("literal", Node::Scalar { text, style: ScalarStyle::Plain, .. }) if text == "true" || text == "false" => {
                literal = text == "true";
            }
            ("literal", _) => return Err((Code::BadValue, "`literal` must be true or false".into())),
            (other, _) => {
                return Err((
                    Code::BadValue,
                    format!("unexpected key `{other}`; a field mapping has `value`, `explanation` and `literal`"),
                ))
            }
        }
    }
    let value = value.ok_or((Code::BadValue, "field mapping requires a `value` key".to_owned()))?;
    Ok(parse_raw(value, literal, spec)?.with_explanation(explanation))
}

fn sentinel(node: &Node) -> Option<FieldKind> {
    if node.is_empty_scalar() {
        return Some(FieldKind::Unannotated);
    }
    let Node::Scalar { text, .. } = node else { return None };
    match text.trim().to_ascii_lowercase().as_str() {
        "none" => Some(FieldKind::MissingNone),
        "unknown" => Some(FieldKind::MissingUnknown),
        "n/a" => Some(FieldKind::NotApplicable),
        _ => None,
    }
}

fn parse_raw(node: &Node, literal: bool, spec: &FieldSpec) -> FieldResult {
    if !literal {
        if let Some(kind) = sentinel(node) {
            return Ok(FieldValue::missing(kind));
        }
    }
    let is_list = matches!(spec.value_kind, ValueKind::TextList | ValueKind::DependencyList);
    let list_code = if spec.value_kind == ValueKind::DependencyList { Code::BadDependency } else { Code::BadValue };
    let value = match node {
        Node::Map { .. } => return Err((Code::BadValue, "nested mappings are not allowed here".into())),
        Node::Seq { .. } if !is_list => {
            return Err((Code::BadValue, format!("`{}` takes a single value, not a list", spec.name)));
        }
        Node::Seq { items, .. } if items.is_empty() => {
            if literal {
                return Err((Code::BadValue, "a literal value must be nonempty".into()));
            }
            return Ok(FieldValue::missing(FieldKind::MissingNone));
        }
        Node::Seq { items, .. } => {
            let mut out = Vec::with_capacity(items.len());
            for item in items {
                match item {
                    Node::Scalar { text, .. } if !item.is_empty_scalar() => {
                        if spec.value_kind == ValueKind::DependencyList && canonical_id(text).is_err() {
                            return Err((list_code, format!("dependency name {text:?} has no letters or digits")));
                        }
                        out.push(text.clone());
                    }
                    Node::Scalar { .. } => return Err((list_code, "list entries must be nonempty".into())),
                    _ => return Err((list_code, "list entries must be plain text".into())),
                }
            }
            Value::List(out)
        }
        Node::Scalar { text, .. } => {
            if text.trim().is_empty() {
                return Err((Code::BadValue, "a literal value must be nonempty".into()));
            }
            match spec.value_kind {
                ValueKind::Text => Value::Text(text.clone()),
                ValueKind::TextList => Value::List(vec![text.clone()]),
                ValueKind::Date => match PartialDate::parse(text) {
                    Some(d) => Value::Date(d),
                    None => return Err((Code::BadDate, format!("invalid date {text:?}; expected YYYY, YYYY-MM or YYYY-MM-DD"))),
                },
                ValueKind::AccessEnum => match Access::parse(text) {
                    Some(a) => Value::Access(a),
                    None => return Err((Code::BadAccess, access_message(text))),
                },
                ValueKind::DependencyList => {
                    return Err((Code::BadDependency, "`dependencies` must be a list of asset names".into()))
                }
            }
        }
    };
    FieldValue::present(value).map_err(|e| (Code::BadValue, e.to_string()))
}

fn access_message(token: &str) -> String {
    let lowered = token.trim().to_ascii_lowercase();
    let nearest = Access::ALL
        .iter()
        .map(|a| (strsim::levenshtein(&lowered, a.as_str()), a.as_str()))
        .filter(|(d, _)| *d <= 2)
        .min()
        .map(|(_, a)| format!(" (did you mean `{a}`?)"))
        .unwrap_or_default();
    format!("invalid access {token:?}; expected one of open, limited, closed{nearest}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagnostic::Severity;
    use crate::schema::builtin_schema;

    fn run(doc: &str) -> (Vec<Asset>, Vec<Diagnostic>) {
        parse_file(Path::new("test.yaml"), doc, builtin_schema())
    }

    fn codes(diags: &[Diagnostic]) -> Vec<&'static str> {
        diags.iter().filter(|d| d.is_error()).map(|d| d.code.as_str()).collect()
    }

    const BASIC_MODEL: &str = "\
- type: model
  name: Test Model
  organization: Acme
  description: A model.
  created_date: 2022-05
  url: https://example.com
  model_card: none
  modality: [text]
  size: 7B parameters
  analysis: unknown
";

    #[test]
    fn clean_model_materializes_every_applicable_field() {
        let (assets, diags) = run(BASIC_MODEL);
        assert!(diags.is_empty(), "{diags:?}");
        let a = &assets[0];
        assert_eq!(a.id.as_str(), "test-model");
        assert_eq!(a.card.len(), 20);
        assert_eq!(a.card.get("training_time").unwrap().kind(), FieldKind::Unannotated);
        assert_eq!(a.card.get("model_card").unwrap().kind(), FieldKind::MissingNone);
        assert_eq!(a.card.get("analysis").unwrap().kind(), FieldKind::MissingUnknown);
        assert_eq!(a.created_date().unwrap().to_string(), "2022-05");
    }

    #[test]
    fn dataset_with_model_only_field_is_inapplicable() {
        let (assets, diags) = run("- type: dataset\n  name: D\n  organization: O\n  training_emissions: 5 t\n");
        assert!(assets.is_empty());
        assert_eq!(codes(&diags), ["INAPPLICABLE_FIELD"]);
        let d = diags.iter().find(|d| d.is_error()).unwrap();
        assert_eq!(d.location.field.as_deref(), Some("training_emissions"));
        assert_eq!(d.location.record, Some(0));
        assert_eq!(d.location.line, Some(4));
    }

    #[test]
    fn bad_access_suggests_the_enum() {
        let (_, diags) = run("- type: model\n  name: M\n  organization: O\n  access: api-only\n");
        assert_eq!(codes(&diags), ["BAD_ACCESS"]);
        let msg = &diags.iter().find(|d| d.is_error()).unwrap().message;
        assert!(msg.contains("open, limited, closed"), "{msg}");
        let (_, diags) = run("- type: model\n  name: M\n  organization: O\n  access: limted\n");
        assert!(diags.iter().any(|d| d.message.contains("did you mean `limited`")));
    }

    #[test]
    fn application_without_failures_gets_unannotated_and_no_warning_for_it() {
        let doc = "- type: application\n  name: App\n  organization: O\n  description: d\n  created_date: 2023\n  url: u\n  output_space: text\n";
        let (assets, diags) = run(doc);
        assert!(diags.is_empty(), "{diags:?}");
        assert_eq!(assets[0].card.get("failures").unwrap().kind(), FieldKind::Unannotated);
    }

    #[test]
    fn unannotated_basic_fields_warn() {
        let (assets, diags) = run("- type: dataset\n  name: D\n  organization: O\n  description: \"\"\n");
        assert_eq!(assets.len(), 1);
        let fields: Vec<_> = diags.iter().map(|d| d.location.field.clone().unwrap()).collect();
        assert_eq!(fields, ["description", "created_date", "url", "datasheet", "modality", "size", "sample", "analysis"]);
        assert!(diags.iter().all(|d| d.severity == Severity::Warning && d.code == Code::UnannotatedBasic));
    }

    #[test]
    fn required_fields() {
        let (_, diags) = run("- name: X\n");
        assert_eq!(codes(&diags), ["MISSING_REQUIRED", "MISSING_REQUIRED"]);
        let (_, diags) = run("- type: model\n  name: unknown\n  organization: O\n");
        assert_eq!(codes(&diags), ["MISSING_REQUIRED"]);
        let (assets, _) = run("- type: model\n  name: {value: unknown, literal: true}\n  organization: O\n");
        assert_eq!(assets[0].id.as_str(), "unknown");
    }

    #[test]
    fn bad_type() {
        let (_, diags) = run("- type: api\n  name: X\n  organization: O\n");
        assert_eq!(codes(&diags), ["BAD_TYPE"]);
    }

    #[test]
    fn unknown_fields_are_errors_with_suggestions() {
        let (_, diags) = run("- type: model\n  name: X\n  organization: O\n  licence: MIT\n");
        assert_eq!(codes(&diags), ["UNKNOWN_FIELD"]);
        assert!(diags[0].message.contains("did you mean `license`"));
    }

    #[test]
    fn validation_is_total_and_ordered() {
        let doc = "- type: dataset\n  name: X\n  bogus: 1\n  training_time: 1\n  created_date: yesterday\n  dependencies: [X]\n";
        let (_, diags) = run(doc);
        assert_eq!(codes(&diags), ["MISSING_REQUIRED", "UNKNOWN_FIELD", "INAPPLICABLE_FIELD", "BAD_DATE", "SELF_DEP"]);
    }

    #[test]
    fn self_dependency_by_slug() {
        let (assets, diags) = run("- type: model\n  name: GPT-3\n  organization: O\n  dependencies: [gpt 3]\n");
        assert!(assets.is_empty());
        assert_eq!(codes(&diags), ["SELF_DEP"]);
    }

    #[test]
    fn sentinels_and_literal_escape() {
        let doc = "\
- type: model
  name: M
  organization: O
  license: N/A
  training_time: Unknown
  training_hardware: {value: none, literal: true, explanation: the literal word}
  feedback: {value: none, explanation: searched the website}
  monitoring: \"\"
";
        let (assets, diags) = run(doc);
        assert_eq!(codes(&diags), Vec::<&str>::new());
        let card = &assets[0].card;
        assert_eq!(card.get("license").unwrap().kind(), FieldKind::NotApplicable);
        assert_eq!(card.get("training_time").unwrap().kind(), FieldKind::MissingUnknown);
        let hw = card.get("training_hardware").unwrap();
        assert_eq!(hw.value(), Some(&Value::Text("none".into())));
        assert_eq!(hw.explanation(), Some("the literal word"));
        let fb = card.get("feedback").unwrap();
        assert_eq!((fb.kind(), fb.explanation()), (FieldKind::MissingNone, Some("searched the website")));
        assert_eq!(card.get("monitoring").unwrap().kind(), FieldKind::Unannotated);
    }

    #[test]
    fn value_shape_errors() {
        let cases = [
            ("license: [a, b]", "BAD_VALUE"),
            ("license: {explanation: x}", "BAD_VALUE"),
            ("license: {value: x, extra: y}", "BAD_VALUE"),
            ("license: {value: x, literal: yes}", "BAD_VALUE"),
            ("license: {value: {a: b}}", "BAD_VALUE"),
            ("dependencies: The Pile", "BAD_DEPENDENCY"),
            ("dependencies: [\"\"]", "BAD_DEPENDENCY"),
            ("dependencies: [[a]]", "BAD_DEPENDENCY"),
            ("dependencies: [\"!!\"]", "BAD_DEPENDENCY"),
            ("created_date: 2020-02-30", "BAD_DATE"),
            ("license: {value: \"\", literal: true}", "BAD_VALUE"),
        ];
        for (line, code) in cases {
            let doc = format!("- type: model\n  name: M\n  organization: O\n  {line}\n");
            let (assets, diags) = run(&doc);
            assert!(assets.is_empty(), "{line}");
            assert_eq!(codes(&diags), [code], "{line}");
        }
    }

    #[test]
    fn empty_list_means_none_and_scalar_modality_is_one_item() {
        let (assets, _) = run("- type: dataset\n  name: D\n  organization: O\n  dependencies: []\n  modality: text\n");
        let card = &assets[0].card;
        assert_eq!(card.get("dependencies").unwrap().kind(), FieldKind::MissingNone);
        assert_eq!(card.get("modality").unwrap().value(), Some(&Value::List(vec!["text".into()])));
    }

    #[test]
    fn duplicate_keys() {
        let (_, diags) = run("- type: model\n  name: M\n  organization: O\n  license: a\n  license: b\n");
        assert_eq!(codes(&diags), ["DUPLICATE_FIELD"]);
    }

    #[test]
    fn file_level_errors() {
        let (_, diags) = run("type: model\n");
        assert_eq!(codes(&diags), ["PARSE_ERROR"]);
        let (_, diags) = run("- [a]\n");
        assert_eq!(codes(&diags), ["BAD_RECORD"]);
        let (_, diags) = run("- type: model\n  name: &x M\n");
        assert_eq!(codes(&diags), ["PARSE_ERROR"]);
        let (_, diags) = run("");
        assert_eq!(diags[0].code, Code::EmptyFile);
        assert!(!diags[0].is_error());
        let (_, diags) = run("- type: model\n  name: [\n");
        assert!(diags[0].location.line.is_some());
    }

    #[test]
    fn duplicate_ids_across_files() {
        let sources = vec![
            (PathBuf::from("b.yaml"), "- {type: model, name: gpt 3, organization: O}\n".to_owned()),
            (PathBuf::from("a.yaml"), "- {type: model, name: GPT-3, organization: OpenAI}\n".to_owned()),
        ];
        let load = parse_sources(&sources, builtin_schema());
        assert!(!load.valid);
        let dups: Vec<_> = load.diagnostics.iter().filter(|d| d.code == Code::DupId).collect();
        assert_eq!(dups.len(), 2);
        assert_eq!(dups[0].location.file, PathBuf::from("a.yaml"));
        assert_eq!(dups[1].location.file, PathBuf::from("b.yaml"));
        assert_eq!(load.assets.len(), 2);
        assert_eq!(load.assets[0].source.file, PathBuf::from("a.yaml"));
    }

    #[test]
    fn empty_corpus_is_valid() {
        let load = parse_corpus(&[], builtin_schema());
        assert!(load.valid && load.assets.is_empty() && load.diagnostics.is_empty());
    }

    #[test]
    fn unreadable_file_is_an_io_diagnostic() {
        let dir = tempfile::tempdir().unwrap();
        let good = dir.path().join("a.yaml");
        std::fs::write(&good, "- {type: model, name: M, organization: O}\n").unwrap();
        let missing = dir.path().join("missing.yaml");
        let load = parse_corpus(&[missing.clone(), good], builtin_schema());
        assert!(!load.valid);
        assert_eq!(load.assets.len(), 1);
        let io = load.diagnostics.iter().find(|d| d.code == Code::IoError).unwrap();
        assert_eq!(io.location.file, missing);
    }

    #[test]
    fn discover_expands_directories_sorted() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::create_dir(dir.path().join("sub")).unwrap();
        for f in ["b.yaml", "a.yml", "c.txt", "sub/d.yaml"] {
            std::fs::write(dir.path().join(f), "").unwrap();
        }
        let files = discover(&[dir.path().to_path_buf()]).unwrap();
        let names: Vec<_> = files.iter().map(|p| p.strip_prefix(dir.path()).unwrap().to_str().unwrap().to_owned()).collect();
        assert_eq!(names, ["a.yml", "b.yaml", "sub/d.yaml"]);
        assert!(discover(&[dir.path().join("nope")]).is_err());
    }
}
