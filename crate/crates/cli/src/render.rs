//! Plain-text layouts for terminal output.

use std::collections::BTreeSet;
use std::fmt::Write;
use std::path::Path;

use ecograph_core::{AssetId, Diagnostic, EcosystemStats, HubEntry, Timeline};

/// Diagnostics grouped under a header line per file, in input order.
pub fn diagnostics(diags: &[&Diagnostic]) -> String {
    let mut out = String::new();
    let mut current: Option<&Path> = None;
    for d in diags {
        let file = d.location.file.as_path();
        if current != Some(file) {
            let _ = writeln!(out, "{}", file.display());
            current = Some(file);
        }
        let mut place = Vec::new();
        if let Some(line) = d.location.line {
            place.push(format!("line {line}"));
        }
        if let Some(record) = d.location.record {
            place.push(format!("record {record}"));
        }
        if let Some(field) = &d.location.field {
            place.push(format!("field `{field}`"));
        }
        let place = if place.is_empty() { String::new() } else { format!(" ({})", place.join(", ")) };
        let _ = writeln!(out, "  {}[{}]{}: {}", d.severity, d.code, place, d.message);
    }
    out
}

pub fn count(n: usize, noun: &str) -> String {
    if n == 1 {
        format!("1 {noun}")
    } else {
        format!("{n} {noun}s")
    }
}

pub fn stats(s: &EcosystemStats) -> String {
    let mut out = String::new();
    let t = &s.totals;
    let _ = writeln!(
        out,
        "{} assets: {} datasets, {} models, {} applications",
        s.assets, t.datasets, t.models, t.applications
    );
    let _ = writeln!(
        out,
        "{} nodes, {} edges, {}, {}",
        s.nodes,
        s.edges,
        count(t.stubs, "stub"),
        count(s.cycle_count, "cycle")
    );
    let _ = writeln!(out, "mean opacity {:.3}, mean immaturity {:.3}", s.mean_opacity, s.mean_immaturity);

    let width = s.organizations.iter().map(|r| r.organization.chars().count()).max().unwrap_or(0).max(12);
    let _ = writeln!(out, "\n{:<width$}  datasets  models  applications  total", "organization");
    for r in &s.organizations {
        let _ = writeln!(
            out,
            "{:<width$}  {:>8}  {:>6}  {:>12}  {:>5}",
            r.organization, r.datasets, r.models, r.applications, r.total
        );
    }

    let _ = writeln!(out, "\nstubs");
    if s.stubs.is_empty() {
        let _ = writeln!(out, "  none");
    }
    for id in &s.stubs {
        let _ = writeln!(out, "  {id}");
    }

    let _ = writeln!(out, "\ncycles");
    if s.cycles.is_empty() {
        let _ = writeln!(out, "  none");
    }
    for c in &s.cycles {
        let ids: Vec<&str> = c.iter().map(AssetId::as_str).collect();
        let _ = writeln!(out, "  {}", ids.join(" -> "));
    }

    let _ = writeln!(out, "\nopacity");
    for (i, n) in s.opacity_histogram.iter().enumerate() {
        let close = if i == 9 { ']' } else { ')' };
        let _ = writeln!(out, "  [{:.1}, {:.1}{close}  {n}", i as f64 / 10.0, (i + 1) as f64 / 10.0);
    }
    out
}

pub fn hubs(hubs: &[HubEntry]) -> String {
    let mut out = String::new();
    let width = hubs.iter().map(|h| h.id.as_str().len()).max().unwrap_or(0).max(2);
    let _ = writeln!(out, "rank  {:<width$}  dependents  organizations", "id");
    for (i, h) in hubs.iter().enumerate() {
        let orgs: Vec<&str> = h.organizations.iter().map(String::as_str).collect();
        let stub = if h.stub { " (undocumented)" } else { "" };
        let _ = writeln!(
            out,
            "{:>4}  {:<width$}  {:>10}  {}{stub}",
            i + 1,
            h.id.as_str(),
            h.direct_dependents,
            orgs.join(", ")
        );
    }
    out
}

pub fn impact(id: &str, score: usize, downstream: &BTreeSet<AssetId>) -> String {
    let mut out = format!("{id}: {score} downstream assets\n");
    for d in downstream {
        let _ = writeln!(out, "  {d}");
    }
    out
}

pub fn timeline(t: &Timeline<'_>) -> String {
    let mut out = String::new();
    for a in &t.assets {
        let date = a.created_date().map(|d| d.to_string()).unwrap_or_default();
        let _ = writeln!(out, "{date:<10}  {:<11}  {}  {}", a.asset_type.as_str(), a.id, a.name());
    }
    if t.undated > 0 {
        let _ = writeln!(out, "({} undated)", t.undated);
    }
    out
}
