//! Asset, card and field-value types.
//!
//! A card maps field names to [`FieldValue`]s. Each value is in exactly one
//! of five states: a present value, or one of the four missing-data forms
//! (`none`, `unknown`, unannotated, `n/a`). Any state may carry a free-text
//! explanation holding provenance or context.

use std::borrow::Borrow;
use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use chrono::NaiveDate;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AssetType {
    Dataset,
    Model,
    Application,
}

impl AssetType {
    pub const ALL: [AssetType; 3] = [AssetType::Dataset, AssetType::Model, AssetType::Application];

    pub const fn as_str(self) -> &'static str {
        match self {
            AssetType::Dataset => "dataset",
            AssetType::Model => "model",
            AssetType::Application => "application",
        }
    }
}

impl fmt::Display for AssetType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AssetType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dataset" => Ok(AssetType::Dataset),
            "model" => Ok(AssetType::Model),
            "application" => Ok(AssetType::Application),
            other => Err(format!(
                "unknown asset type {other:?}; expected dataset, model or application"
            )),
        }
    }
}

/// Slug identifying a node: lowercase ASCII letters, digits and single
/// interior hyphens.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct AssetId(String);

impl AssetId {
    /// Accepts a string that is already a well-formed slug.
    pub fn parse(slug: &str) -> Option<AssetId> {
        let ok = !slug.is_empty()
            && !slug.starts_with('-')
            && !slug.ends_with('-')
            && !slug.contains("--")
            && slug
                .bytes()
                .all(|b| b.is_ascii_lowercase() || b.is_ascii_digit() || b == b'-');
        ok.then(|| AssetId(slug.to_owned()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for AssetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Borrow<str> for AssetId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl AsRef<str> for AssetId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl<'de> Deserialize<'de> for AssetId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        AssetId::parse(&s).ok_or_else(|| serde::de::Error::custom(format!("invalid asset id {s:?}")))
    }
}

/// Derives the node id from a display name: lowercase, collapse every run of
/// characters outside `[a-z0-9]` into one hyphen, strip edge hyphens.
pub fn canonical_id(display_name: &str) -> Result<AssetId> {
    let lowered = display_name.trim().to_lowercase();
    let mut slug = String::with_capacity(lowered.len());
    let mut pending_sep = false;
    for c in lowered.chars() {
        if c.is_ascii_lowercase() || c.is_ascii_digit() {
            if pending_sep && !slug.is_empty() {
                slug.push('-');
            }
            pending_sep = false;
            slug.push(c);
        } else {
            pending_sep = true;
        }
    }
    if slug.is_empty() {
        return Err(Error::InvalidName(display_name.to_owned()));
    }
    Ok(AssetId(slug))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Access {
    Open,
    Limited,
    Closed,
}

impl Access {
    pub const ALL: [Access; 3] = [Access::Open, Access::Limited, Access::Closed];

    pub const fn as_str(self) -> &'static str {
        match self {
            Access::Open => "open",
            Access::Limited => "limited",
            Access::Closed => "closed",
        }
    }

    /// Case-insensitive, surrounding whitespace ignored.
    pub fn parse(token: &str) -> Option<Access> {
        let t = token.trim();
        Access::ALL.into_iter().find(|a| a.as_str().eq_ignore_ascii_case(t))
    }
}

impl fmt::Display for Access {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A `YYYY`, `YYYY-MM` or `YYYY-MM-DD` date. Comparisons use the earliest
/// day the date covers; the written precision is kept for display.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PartialDate {
    year: i32,
    month: Option<u32>,
    day: Option<u32>,
}

impl PartialDate {
    pub fn parse(s: &str) -> Option<PartialDate> {
        let s = s.trim();
        let parts: Vec<&str> = s.split('-').collect();
        let digits = |p: &str, n: usize| p.len() == n && p.bytes().all(|b| b.is_ascii_digit());
        let (year, month, day) = match parts.as_slice() {
            [y] if digits(y, 4) => (y.parse().ok()?, None, None),
            [y, m] if digits(y, 4) && digits(m, 2) => (y.parse().ok()?, Some(m.parse().ok()?), None),
            [y, m, d] if digits(y, 4) && digits(m, 2) && digits(d, 2) => {
                (y.parse().ok()?, Some(m.parse().ok()?), Some(d.parse().ok()?))
            }
            _ => return None,
        };
        NaiveDate::from_ymd_opt(year, month.unwrap_or(1), day.unwrap_or(1))?;
        Some(PartialDate { year, month, day })
    }

    pub fn from_ymd(year: i32, month: Option<u32>, day: Option<u32>) -> Option<PartialDate> {
        if day.is_some() && month.is_none() {
            return None;
        }
        NaiveDate::from_ymd_opt(year, month.unwrap_or(1), day.unwrap_or(1))?;
        Some(PartialDate { year, month, day })
    }

    /// Earliest day covered by this date.
    pub fn normalized(&self) -> NaiveDate {
        NaiveDate::from_ymd_opt(self.year, self.month.unwrap_or(1), self.day.unwrap_or(1))
            .expect("validated at construction")
    }

    pub fn year(&self) -> i32 {
        self.year
    }
}

impl Ord for PartialDate {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.normalized()
            .cmp(&other.normalized())
            .then_with(|| (self.month.is_some(), self.day.is_some()).cmp(&(other.month.is_some(), other.day.is_some())))
    }
}

impl PartialOrd for PartialDate {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PartialDate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}", self.year)?;
        if let Some(m) = self.month {
            write!(f, "-{m:02}")?;
        }
        if let Some(d) = self.day {
            write!(f, "-{d:02}")?;
        }
        Ok(())
    }
}

impl Serialize for PartialDate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PartialDate {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        PartialDate::parse(&s).ok_or_else(|| serde::de::Error::custom(format!("invalid date {s:?}")))
    }
}

/// A present (non-missing) field value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Text(String),
    List(Vec<String>),
    Date(PartialDate),
    Access(Access),
}

impl Value {
    fn is_empty(&self) -> bool {
        match self {
            Value::Text(s) => s.trim().is_empty(),
            Value::List(items) => items.is_empty() || items.iter().any(|i| i.trim().is_empty()),
            Value::Date(_) | Value::Access(_) => false,
        }
    }

    /// Single-line rendering; list items joined with `"; "`.
    pub fn render(&self) -> String {
        match self {
            Value::Text(s) => s.clone(),
            Value::List(items) => items.join("; "),
            Value::Date(d) => d.to_string(),
            Value::Access(a) => a.as_str().to_owned(),
        }
    }

    pub fn as_text(&self) -> Option<&str> {
        match self {
            Value::Text(s) => Some(s),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldKind {
    Present,
    MissingNone,
    MissingUnknown,
    Unannotated,
    NotApplicable,
}

impl FieldKind {
    pub const ALL: [FieldKind; 5] = [
        FieldKind::Present,
        FieldKind::MissingNone,
        FieldKind::MissingUnknown,
        FieldKind::Unannotated,
        FieldKind::NotApplicable,
    ];

    /// Word used for this kind in tables and cards. Empty for `Present` and
    /// `Unannotated`.
    pub const fn sentinel(self) -> &'static str {
        match self {
            FieldKind::MissingNone => "none",
            FieldKind::MissingUnknown => "unknown",
            FieldKind::NotApplicable => "N/A",
            FieldKind::Present | FieldKind::Unannotated => "",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Annotation {
    Present(Value),
    /// Looked for, could not be found.
    None,
    /// Must exist but is not public.
    Unknown,
    /// The annotator did not fill it in.
    Unannotated,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FieldValueRepr", into = "FieldValueRepr")]
pub struct FieldValue {
    annotation: Annotation,
    explanation: Option<String>,
}

impl FieldValue {
    pub fn present(value: Value) -> Result<FieldValue> {
        if value.is_empty() {
            return Err(Error::EmptyValue);
        }
        Ok(FieldValue { annotation: Annotation::Present(value), explanation: None })
    }

    pub fn text(s: impl Into<String>) -> Result<FieldValue> {
        FieldValue::present(Value::Text(s.into()))
    }

    pub fn missing(kind: FieldKind) -> FieldValue {
        let annotation = match kind {
            FieldKind::MissingNone => Annotation::None,
            FieldKind::MissingUnknown => Annotation::Unknown,
            FieldKind::NotApplicable => Annotation::NotApplicable,
            FieldKind::Unannotated | FieldKind::Present => Annotation::Unannotated,
        };
        FieldValue { annotation, explanation: None }
    }

    pub fn unannotated() -> FieldValue {
        FieldValue::missing(FieldKind::Unannotated)
    }

    /// Attaches an explanation. Blank explanations are dropped.
    pub fn with_explanation(mut self, explanation: Option<String>) -> FieldValue {
        self.explanation = explanation.filter(|e| !e.trim().is_empty());
        self
    }

    pub fn kind(&self) -> FieldKind {
        match self.annotation {
            Annotation::Present(_) => FieldKind::Present,
            Annotation::None => FieldKind::MissingNone,
            Annotation::Unknown => FieldKind::MissingUnknown,
            Annotation::Unannotated => FieldKind::Unannotated,
            Annotation::NotApplicable => FieldKind::NotApplicable,
        }
    }

    pub fn annotation(&self) -> &Annotation {
        &self.annotation
    }

    pub fn value(&self) -> Option<&Value> {
        match &self.annotation {
            Annotation::Present(v) => Some(v),
            _ => None,
        }
    }

    pub fn explanation(&self) -> Option<&str> {
        self.explanation.as_deref()
    }

    pub fn is_present(&self) -> bool {
        matches!(self.annotation, Annotation::Present(_))
    }

    /// Present value rendered on one line, or the kind's sentinel word.
    pub fn render(&self) -> String {
        match &self.annotation {
            Annotation::Present(v) => v.render(),
            _ => self.kind().sentinel().to_owned(),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum ValueType {
    Text,
    List,
    Date,
    Access,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawValue {
    One(String),
    Many(Vec<String>),
}

#[derive(Serialize, Deserialize)]
struct FieldValueRepr {
    kind: FieldKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    value_type: Option<ValueType>,
    #[serde(default)]
    value: Option<RawValue>,
    #[serde(default)]
    explanation: Option<String>,
}

impl From<FieldValue> for FieldValueRepr {
    fn from(fv: FieldValue) -> Self {
        let kind = fv.kind();
        let (value_type, value) = match fv.annotation {
            Annotation::Present(Value::Text(s)) => (Some(ValueType::Text), Some(RawValue::One(s))),
            Annotation::Present(Value::List(l)) => (Some(ValueType::List), Some(RawValue::Many(l))),
            Annotation::Present(Value::Date(d)) => (Some(ValueType::Date), Some(RawValue::One(d.to_string()))),
            Annotation::Present(Value::Access(a)) => {
                (Some(ValueType::Access), Some(RawValue::One(a.as_str().to_owned())))
            }
            _ => (None, None),
        };
        FieldValueRepr { kind, value_type, value, explanation: fv.explanation }
    }
}

impl TryFrom<FieldValueRepr> for FieldValue {
    type Error = String;

    fn try_from(r: FieldValueRepr) -> std::result::Result<Self, Self::Error> {
        let fv = match (r.kind, r.value_type, r.value) {
            (FieldKind::Present, Some(t), Some(v)) => {
                let value = match (t, v) {
                    (ValueType::Text, RawValue::One(s)) => Value::Text(s),
                    (ValueType::List, RawValue::Many(l)) => Value::List(l),
                    (ValueType::Date, RawValue::One(s)) => {
                        Value::Date(PartialDate::parse(&s).ok_or(format!("invalid date {s:?}"))?)
                    }
                    (ValueType::Access, RawValue::One(s)) => {
                        Value::Access(Access::parse(&s).ok_or(format!("invalid access {s:?}"))?)
                    }
                    _ => return Err("value does not match value_type".into()),
                };
                FieldValue::present(value).map_err(|e| e.to_string())?
            }
            (FieldKind::Present, _, _) => return Err("present field without a value".into()),
            (kind, _, None) => FieldValue::missing(kind),
            (_, _, Some(_)) => return Err("missing field carries a value".into()),
        };
        Ok(fv.with_explanation(r.explanation))
    }
}

/// All annotated properties of one asset, keyed by schema field name.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EcosystemCard {
    entries: BTreeMap<String, FieldValue>,
}

impl EcosystemCard {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, field: impl Into<String>, value: FieldValue) {
        self.entries.insert(field.into(), value);
    }

    pub fn get(&self, field: &str) -> Option<&FieldValue> {
        self.entries.get(field)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &FieldValue)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn text(&self, field: &str) -> Option<&str> {
        self.get(field)?.value()?.as_text()
    }
}

/// Where a record came from.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
pub struct SourceRef {
    pub file: PathBuf,
    /// Zero-based position of the record in its file.
    pub record: usize,
    pub line: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Asset {
    pub id: AssetId,
    pub asset_type: AssetType,
    pub card: EcosystemCard,
    pub source: SourceRef,
}

impl Asset {
    /// Builds an asset whose id is derived from the card's `name`.
    pub fn new(asset_type: AssetType, card: EcosystemCard, source: SourceRef) -> Result<Asset> {
        let name = card.text("name").ok_or_else(|| Error::InvalidName(String::new()))?;
        let id = canonical_id(name)?;
        Ok(Asset { id, asset_type, card, source })
    }

    pub fn name(&self) -> &str {
        self.card.text("name").unwrap_or(self.id.as_str())
    }

    pub fn organization(&self) -> Option<&str> {
        self.card.text("organization")
    }

    pub fn created_date(&self) -> Option<PartialDate> {
        match self.card.get("created_date")?.value()? {
            Value::Date(d) => Some(*d),
            _ => None,
        }
    }

    /// Display names listed under `dependencies`.
    pub fn dependencies(&self) -> &[String] {
        match self.card.get("dependencies").and_then(FieldValue::value) {
            Some(Value::List(deps)) => deps,
            _ => &[],
        }
    }

    /// Identity and card, without source location.
    pub fn same_content(&self, other: &Asset) -> bool {
        self.id == other.id && self.asset_type == other.asset_type && self.card == other.card
    }
}
