//! The built-in ecosystem card schema.

use std::sync::LazyLock;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::model::AssetType;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Category {
    Basic,
    Construction,
    Downstream,
}

impl Category {
    pub const ALL: [Category; 3] = [Category::Basic, Category::Construction, Category::Downstream];

    pub const fn title(self) -> &'static str {
        match self {
            Category::Basic => "Basic",
            Category::Construction => "Construction",
            Category::Downstream => "Downstream",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ValueKind {
    Text,
    TextList,
    Date,
    AccessEnum,
    DependencyList,
}

/// Set of asset types a field applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TypeSet(u8);

impl TypeSet {
    pub const ALL: TypeSet = TypeSet(0b111);
    pub const DATASET: TypeSet = TypeSet(0b001);
    pub const MODEL: TypeSet = TypeSet(0b010);
    pub const APPLICATION: TypeSet = TypeSet(0b100);
    pub const DATASET_MODEL: TypeSet = TypeSet(0b011);

    const fn bit(t: AssetType) -> u8 {
        match t {
            AssetType::Dataset => 0b001,
            AssetType::Model => 0b010,
            AssetType::Application => 0b100,
        }
    }

    pub const fn contains(self, t: AssetType) -> bool {
        self.0 & Self::bit(t) != 0
    }

    pub fn iter(self) -> impl Iterator<Item = AssetType> {
        AssetType::ALL.into_iter().filter(move |t| self.contains(*t))
    }
}

impl Serialize for TypeSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(None)?;
        for t in self.iter() {
            seq.serialize_element(&t)?;
        }
        seq.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldSpec {
    pub name: &'static str,
    pub category: Category,
    pub applicability: TypeSet,
    pub value_kind: ValueKind,
    pub help: &'static str,
}

#[derive(Debug, Clone)]
pub struct Schema {
    fields: Vec<FieldSpec>,
}

impl Schema {
    pub fn new(fields: Vec<FieldSpec>) -> Schema {
        Schema { fields }
    }

    pub fn fields(&self) -> &[FieldSpec] {
        &self.fields
    }

    pub fn get(&self, name: &str) -> Option<&FieldSpec> {
        self.fields.iter().find(|f| f.name == name)
    }

    pub fn applicable_fields(&self, t: AssetType) -> impl Iterator<Item = &FieldSpec> {
        self.fields.iter().filter(move |f| f.applicability.contains(t))
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.fields.iter().map(|f| f.name)
    }

    /// Closest field name within a small edit distance, for "did you mean".
    pub fn suggest(&self, unknown: &str) -> Option<&'static str> {
        let unknown = unknown.to_lowercase().replace([' ', '-'], "_");
        self.fields
            .iter()
            .map(|f| (strsim::levenshtein(&unknown, f.name), f.name))
            .filter(|(d, name)| *d <= 2.max(name.len() / 4))
            .min()
            .map(|(_, name)| name)
    }
}

impl Serialize for Schema {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.fields.serialize(s)
    }
}

macro_rules! field {
    ($name:literal, $cat:ident, $types:ident, $kind:ident, $help:literal) => {
        FieldSpec {
            name: $name,
            category: Category::$cat,
            applicability: TypeSet::$types,
            value_kind: ValueKind::$kind,
            help: $help,
        }
    };
}

static BUILTIN: LazyLock<Schema> = LazyLock::new(|| {
    Schema::new(vec![
        field!("name", Basic, ALL, Text, "Name of the asset (unique identifier)."),
        field!("organization", Basic, ALL, Text, "Organization that created the asset."),
        field!("description", Basic, ALL, Text, "Description of the asset."),
        field!("created_date", Basic, ALL, Date, "When the asset was created."),
        field!("url", Basic, ALL, Text, "Link to website or paper that provides a detailed description of the asset."),
        field!("datasheet", Basic, DATASET, Text, "Link to the datasheet describing the dataset."),
        field!("model_card", Basic, MODEL, Text, "Link to the model card describing the model."),
        field!("modality", Basic, DATASET_MODEL, TextList, "Modalities associated with the asset (e.g. text, images, videos)."),
        field!("output_space", Basic, APPLICATION, Text, "Description of the application's output space (e.g. generation, ranking, etc.)."),
        field!("size", Basic, DATASET_MODEL, Text, "How big the (uncompressed) dataset is."),
        field!("sample", Basic, DATASET, Text, "Small sample of content from the dataset."),
        field!("analysis", Basic, DATASET_MODEL, Text, "Description of any analysis (e.g. evaluation) that was done."),
        field!("dependencies", Construction, ALL, DependencyList, "A list of nodes (e.g. assets, models, applications) that were used to create this node."),
        field!("quality_control", Construction, ALL, Text, "What measures were taken to ensure quality, safety, and mitigate harms."),
        field!("included", Construction, DATASET, Text, "Description of what data was explicitly included and why."),
        field!("excluded", Construction, DATASET, Text, "Description of what data is excluded (e.g. filtered out) and why."),
        field!("training_emissions", Construction, MODEL, Text, "Estimate of the carbon emissions used to create the model."),
        field!("training_time", Construction, MODEL, Text, "How much time it took to train the model."),
        field!("training_hardware", Construction, MODEL, Text, "What hardware was used to train the model."),
        field!("adaptation", Construction, APPLICATION, Text, "How the model was adapted (e.g. fine-tuned) to produce the derivative."),
        field!("access", Downstream, ALL, AccessEnum, "Who can access (and use) the asset."),
        field!("license", Downstream, ALL, Text, "License of the asset."),
        field!("intended_uses", Downstream, ALL, Text, "Description of what the asset can be used for downstream."),
        field!("prohibited_uses", Downstream, ALL, Text, "Description of what the asset should not be used for downstream."),
        field!("monitoring", Downstream, ALL, Text, "Description of measures taken to monitor downstream uses of this asset."),
        field!("feedback", Downstream, ALL, Text, "How downstream problems with this asset should be reported."),
        field!("terms_of_service", Downstream, APPLICATION, Text, "Link to the terms of service."),
        field!("monthly_active_users", Downstream, APPLICATION, Text, "Rough order of magnitude of number of active users."),
        field!("user_distribution", Downstream, APPLICATION, Text, "Demographic and geographic distribution of users."),
        field!("failures", Downstream, APPLICATION, Text, "Description of known failures/errors."),
    ])
});

/// The 30-field card schema, ordered by category and then table order.
pub fn builtin_schema() -> &'static Schema {
    &BUILTIN
}
