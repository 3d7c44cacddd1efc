//! Ecosystem-level measurements: hubs, impact, opacity, timelines and
//! per-organization summaries.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::EcosystemGraph;
use crate::model::{Asset, AssetId, AssetType, FieldKind, PartialDate};
use crate::schema::Schema;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HubEntry {
    pub id: AssetId,
    pub name: String,
    pub stub: bool,
    pub direct_dependents: usize,
    /// Organizations owning the direct dependents.
    pub organizations: BTreeSet<String>,
}

/// Top `k` nodes by number of direct dependents, ties broken by id.
///
/// With a `type_filter`, only annotated nodes of that type are ranked (stubs
/// have no type); counts always cover every dependent.
pub fn hub_ranking(g: &EcosystemGraph, k: usize, type_filter: Option<AssetType>) -> Vec<HubEntry> {
    let mut entries: Vec<HubEntry> = g
        .nodes()
        .filter(|n| type_filter.is_none() || n.asset_type() == type_filter)
        .map(|n| {
            let dependents = g.direct_dependents(n.id.as_str()).expect("node from this graph");
            let organizations = dependents
                .iter()
                .filter_map(|d| g.node(d.as_str())?.organization().map(str::to_owned))
                .collect();
            HubEntry {
                id: n.id.clone(),
                name: n.display_name.clone(),
                stub: n.is_stub(),
                direct_dependents: dependents.len(),
                organizations,
            }
        })
        .collect();
    entries.sort_by(|a, b| b.direct_dependents.cmp(&a.direct_dependents).then_with(|| a.id.cmp(&b.id)));
    entries.truncate(k);
    entries
}

/// Number of nodes transitively downstream of `id`.
pub fn impact_score(g: &EcosystemGraph, id: &str) -> Result<usize> {
    Ok(g.downstream_closure(id)?.len())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OpacityReport {
    pub id: AssetId,
    /// Applicable fields other than `name`.
    pub applicable: usize,
    pub present: usize,
    pub unknown: usize,
    pub none_count: usize,
    pub unannotated: usize,
    pub not_applicable: usize,
    /// `unknown / applicable`
    pub opacity: f64,
    /// `none_count / applicable`
    pub immaturity: f64,
}

impl OpacityReport {
    fn ratio(&self, n: usize) -> f64 {
        if self.applicable == 0 {
            0.0
        } else {
            n as f64 / self.applicable as f64
        }
    }

    pub fn present_ratio(&self) -> f64 {
        self.ratio(self.present)
    }

    pub fn unannotated_ratio(&self) -> f64 {
        self.ratio(self.unannotated)
    }

    pub fn not_applicable_ratio(&self) -> f64 {
        self.ratio(self.not_applicable)
    }
}

pub fn opacity_report(asset: &Asset, schema: &Schema) -> OpacityReport {
    let mut counts: BTreeMap<FieldKind, usize> = BTreeMap::new();
    let mut applicable = 0;
    for spec in schema.applicable_fields(asset.asset_type).filter(|s| s.name != "name") {
        applicable += 1;
        let kind = asset.card.get(spec.name).map_or(FieldKind::Unannotated, |fv| fv.kind());
        *counts.entry(kind).or_default() += 1;
    }
    let count = |k| counts.get(&k).copied().unwrap_or(0);
    let mut report = OpacityReport {
        id: asset.id.clone(),
        applicable,
        present: count(FieldKind::Present),
        unknown: count(FieldKind::MissingUnknown),
        none_count: count(FieldKind::MissingNone),
        unannotated: count(FieldKind::Unannotated),
        not_applicable: count(FieldKind::NotApplicable),
        opacity: 0.0,
        immaturity: 0.0,
    };
    report.opacity = report.ratio(report.unknown);
    report.immaturity = report.ratio(report.none_count);
    report
}

#[derive(Debug, Clone, PartialEq)]
pub struct Timeline<'a> {
    /// Ascending by date, then id.
    pub assets: Vec<&'a Asset>,
    /// Assets skipped because their creation date is not present.
    pub undated: usize,
}

/// Assets created within `[from, to]` (inclusive, compared on the earliest
/// day each date covers).
pub fn timeline(assets: &[Asset], from: Option<PartialDate>, to: Option<PartialDate>) -> Result<Timeline<'_>> {
    if let (Some(f), Some(t)) = (from, to) {
        if f.normalized() > t.normalized() {
            return Err(Error::InvalidRange { from: f.to_string(), to: t.to_string() });
        }
    }
    let mut undated = 0;
    let mut selected: Vec<(chrono::NaiveDate, &Asset)> = Vec::new();
    for asset in assets {
        let Some(date) = asset.created_date() else {
            undated += 1;
            continue;
        };
        let day = date.normalized();
        let after_from = from.is_none_or(|f| day >= f.normalized());
        let before_to = to.is_none_or(|t| day <= t.normalized());
        if after_from && before_to {
            selected.push((day, asset));
        }
    }
    selected.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.id.cmp(&b.1.id)));
    Ok(Timeline { assets: selected.into_iter().map(|(_, a)| a).collect(), undated })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrgSummaryRow {
    pub organization: String,
    pub datasets: usize,
    pub models: usize,
    pub applications: usize,
    pub total: usize,
}

/// Asset counts per organization (exact string match), largest first.
pub fn org_summary(assets: &[Asset]) -> Vec<OrgSummaryRow> {
    let mut rows: BTreeMap<String, OrgSummaryRow> = BTreeMap::new();
    for asset in assets {
        let org = match asset.card.get("organization") {
            Some(fv) => fv.render(),
            None => String::new(),
        };
        let row = rows.entry(org.clone()).or_insert_with(|| OrgSummaryRow {
            organization: org,
            datasets: 0,
            models: 0,
            applications: 0,
            total: 0,
        });
        match asset.asset_type {
            AssetType::Dataset => row.datasets += 1,
            AssetType::Model => row.models += 1,
            AssetType::Application => row.applications += 1,
        }
        row.total += 1;
    }
    let mut rows: Vec<OrgSummaryRow> = rows.into_values().collect();
    rows.sort_by(|a, b| b.total.cmp(&a.total).then_with(|| a.organization.cmp(&b.organization)));
    rows
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct TypeTotals {
    pub datasets: usize,
    pub models: usize,
    pub applications: usize,
    pub stubs: usize,
}

/// Whole-ecosystem summary backing `stats` output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EcosystemStats {
    pub assets: usize,
    pub nodes: usize,
    pub edges: usize,
    pub totals: TypeTotals,
    pub organizations: Vec<OrgSummaryRow>,
    pub stubs: Vec<AssetId>,
    pub cycles: Vec<Vec<AssetId>>,
    pub cycle_count: usize,
    pub mean_opacity: f64,
    pub mean_immaturity: f64,
    /// Annotated assets per opacity decile; the last bucket includes 1.0.
    pub opacity_histogram: [usize; 10],
}

pub fn ecosystem_stats(g: &EcosystemGraph, schema: &Schema) -> EcosystemStats {
    let assets: Vec<Asset> = g.nodes().filter_map(|n| n.asset.as_deref().cloned()).collect();
    let reports: Vec<OpacityReport> = assets.iter().map(|a| opacity_report(a, schema)).collect();
    let mut totals = TypeTotals::default();
    for a in &assets {
        match a.asset_type {
            AssetType::Dataset => totals.datasets += 1,
            AssetType::Model => totals.models += 1,
            AssetType::Application => totals.applications += 1,
        }
    }
    let stubs: Vec<AssetId> = g.stubs().map(|n| n.id.clone()).collect();
    totals.stubs = stubs.len();
    let mean = |f: fn(&OpacityReport) -> f64| {
        if reports.is_empty() {
            0.0
        } else {
            reports.iter().map(f).sum::<f64>() / reports.len() as f64
        }
    };
    let mut opacity_histogram = [0; 10];
    for r in &reports {
        let bucket = ((r.opacity * 10.0).floor() as usize).min(9);
        opacity_histogram[bucket] += 1;
    }
    let cycles = g.find_cycles();
    EcosystemStats {
        assets: assets.len(),
        nodes: g.node_count(),
        edges: g.edge_count(),
        totals,
        organizations: org_summary(&assets),
        stubs,
        cycle_count: cycles.len(),
        cycles,
        mean_opacity: mean(|r| r.opacity),
        mean_immaturity: mean(|r| r.immaturity),
        opacity_histogram,
    }
}
