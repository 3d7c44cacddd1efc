//! Column selection, filtering and sorting shared by CSV export and the
//! table API.

use std::cmp::Ordering;
use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Access, Asset, AssetType, FieldValue, PartialDate, Value};
use crate::schema::{FieldSpec, Schema};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SortDir {
    #[default]
    Asc,
    Desc,
}

impl std::str::FromStr for SortDir {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "asc" => Ok(SortDir::Asc),
            "desc" => Ok(SortDir::Desc),
            other => Err(Error::InvalidSpec(format!("sort direction must be asc or desc, got {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableSpec {
    /// Column names: `id`, `type`, or schema field names.
    pub fields: Vec<String>,
    pub sort_by: Option<String>,
    pub sort_dir: SortDir,
    pub type_filter: Option<AssetType>,
    /// Adds a `<field>_explanation` column after each schema field column.
    pub with_explanations: bool,
}

impl TableSpec {
    /// `id`, `type` and every schema field, unsorted (id order).
    pub fn all_columns(schema: &Schema) -> TableSpec {
        let mut fields = vec!["id".to_owned(), "type".to_owned()];
        fields.extend(schema.names().map(str::to_owned));
        TableSpec { fields, sort_by: None, sort_dir: SortDir::Asc, type_filter: None, with_explanations: false }
    }

    /// Splits a comma-separated column list (`id,name,license`).
    pub fn parse_fields(list: &str) -> Vec<String> {
        list.split(',').map(|f| f.trim().to_owned()).collect()
    }

    pub fn columns<'s>(&self, schema: &'s Schema) -> Result<Vec<Column<'s>>> {
        if self.fields.is_empty() {
            return Err(Error::InvalidSpec("at least one column is required".into()));
        }
        let mut seen = HashSet::new();
        let mut cols = Vec::with_capacity(self.fields.len());
        for name in &self.fields {
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidSpec(format!("column `{name}` is listed twice")));
            }
            cols.push(Column::parse(name, schema)?);
        }
        if let Some(sort) = &self.sort_by {
            if !seen.contains(sort.as_str()) {
                return Err(Error::InvalidSpec(format!("sort column `{sort}` is not among the selected fields")));
            }
        }
        Ok(cols)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Column<'s> {
    Id,
    Type,
    Field(&'s FieldSpec),
}

impl<'s> Column<'s> {
    pub fn parse(name: &str, schema: &'s Schema) -> Result<Column<'s>> {
        match name {
            "id" => Ok(Column::Id),
            "type" => Ok(Column::Type),
            other => schema
                .get(other)
                .map(Column::Field)
                .ok_or_else(|| Error::InvalidSpec(format!("unknown field `{other}`"))),
        }
    }

    pub fn name(&self) -> &'s str {
        match self {
            Column::Id => "id",
            Column::Type => "type",
            Column::Field(f) => f.name,
        }
    }

    /// `None` when the field does not apply to the asset's type.
    pub fn field_value<'a>(&self, asset: &'a Asset) -> Option<&'a FieldValue> {
        match self {
            Column::Field(f) => asset.card.get(f.name),
            _ => None,
        }
    }

    /// Cell text: present values rendered, missing kinds as their sentinel
    /// word, unannotated and inapplicable fields empty.
    pub fn cell(&self, asset: &Asset) -> String {
        match self {
            Column::Id => asset.id.to_string(),
            Column::Type => asset.asset_type.to_string(),
            Column::Field(f) => asset.card.get(f.name).map(FieldValue::render).unwrap_or_default(),
        }
    }
}

/// Row filters beyond the asset type.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AssetFilter {
    /// Exact match.
    pub organization: Option<String>,
    pub access: Option<Access>,
    /// Case-insensitive match against any listed modality.
    pub modality: Option<String>,
    pub created_from: Option<PartialDate>,
    pub created_to: Option<PartialDate>,
    /// Case-insensitive substring over name and description.
    pub q: Option<String>,
}

impl AssetFilter {
    pub fn validate(&self) -> Result<()> {
        if let (Some(f), Some(t)) = (self.created_from, self.created_to) {
            if f.normalized() > t.normalized() {
                return Err(Error::InvalidRange { from: f.to_string(), to: t.to_string() });
            }
        }
        Ok(())
    }

    pub fn matches(&self, asset: &Asset) -> bool {
        if let Some(org) = &self.organization {
            if !asset.organization().is_some_and(|o| o.trim().eq_ignore_ascii_case(org.trim())) {
                return false;
            }
        }
        if let Some(access) = self.access {
            let value = asset.card.get("access").and_then(FieldValue::value);
            if value != Some(&Value::Access(access)) {
                return false;
            }
        }
        if let Some(m) = &self.modality {
            let hit = match asset.card.get("modality").and_then(FieldValue::value) {
                Some(Value::List(items)) => items.iter().any(|i| i.trim().eq_ignore_ascii_case(m.trim())),
                Some(Value::Text(t)) => t.trim().eq_ignore_ascii_case(m.trim()),
                _ => false,
            };
            if !hit {
                return false;
            }
        }
        if self.created_from.is_some() || self.created_to.is_some() {
            let Some(day) = asset.created_date().map(|d| d.normalized()) else { return false };
            if self.created_from.is_some_and(|f| day < f.normalized()) || self.created_to.is_some_and(|t| day > t.normalized()) {
                return false;
            }
        }
        if let Some(q) = &self.q {
            let q = q.to_lowercase();
            let desc = asset.card.get("description").and_then(FieldValue::value).map(Value::render).unwrap_or_default();
            if !asset.name().to_lowercase().contains(&q) && !desc.to_lowercase().contains(&q) {
                return false;
            }
        }
        true
    }
}

/// Rows passing the type filter and `filter`, sorted per the spec. Missing
/// values sort after present ones in either direction; ties go by id.
pub fn select_rows<'a>(assets: &'a [Asset], spec: &TableSpec, filter: &AssetFilter, schema: &Schema) -> Result<Vec<&'a Asset>> {
    spec.columns(schema)?;
    filter.validate()?;
    let mut rows: Vec<&Asset> = assets
        .iter()
        .filter(|a| spec.type_filter.is_none_or(|t| a.asset_type == t))
        .filter(|a| filter.matches(a))
        .collect();
    let sort_col = spec.sort_by.as_deref().map(|s| Column::parse(s, schema)).transpose()?;
    rows.sort_by(|a, b| {
        let primary = match sort_col {
            Some(col) => compare_cells(col, a, b, spec.sort_dir),
            None => Ordering::Equal,
        };
        primary.then_with(|| a.id.cmp(&b.id))
    });
    Ok(rows)
}

fn compare_cells(col: Column<'_>, a: &Asset, b: &Asset, dir: SortDir) -> Ordering {
    let directed = |o: Ordering| if dir == SortDir::Desc { o.reverse() } else { o };
    match col {
        Column::Id => directed(a.id.cmp(&b.id)),
        Column::Type => directed(a.asset_type.as_str().cmp(b.asset_type.as_str())),
        Column::Field(_) => {
            let va = col.field_value(a).and_then(FieldValue::value);
            let vb = col.field_value(b).and_then(FieldValue::value);
            match (va, vb) {
                (Some(x), Some(y)) => directed(compare_values(x, y)),
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (None, None) => Ordering::Equal,
            }
        }
    }
}

fn compare_values(a: &Value, b: &Value) -> Ordering {
    match (a, b) {
        (Value::Date(x), Value::Date(y)) => x.cmp(y),
        (Value::Text(x), Value::Text(y)) => x.cmp(y),
        (Value::Access(x), Value::Access(y)) => x.as_str().cmp(y.as_str()),
        _ => a.render().cmp(&b.render()),
    }
}
