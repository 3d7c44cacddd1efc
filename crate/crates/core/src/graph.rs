//! The ecosystem dependency graph.
//!
//! Edges point upstream to downstream: if `v` lists `u` under
//! `dependencies`, the graph holds `u -> v`. Dependency targets without a
//! card become stub nodes. Cycles are allowed; every traversal uses a
//! visited set.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use crate::diagnostic::{Code, Diagnostic, Location};
use crate::error::{Error, Result};
use crate::model::{canonical_id, Asset, AssetId, AssetType};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    Annotated,
    Stub,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    pub id: AssetId,
    pub display_name: String,
    /// The card, for annotated nodes.
    pub asset: Option<Arc<Asset>>,
}

impl Node {
    pub fn kind(&self) -> NodeKind {
        if self.asset.is_some() {
            NodeKind::Annotated
        } else {
            NodeKind::Stub
        }
    }

    pub fn is_stub(&self) -> bool {
        self.asset.is_none()
    }

    pub fn asset_type(&self) -> Option<AssetType> {
        self.asset.as_ref().map(|a| a.asset_type)
    }

    pub fn organization(&self) -> Option<&str> {
        self.asset.as_ref().and_then(|a| a.organization())
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct EcosystemGraph {
    nodes: BTreeMap<AssetId, Node>,
    /// node -> its direct dependencies
    upstream: BTreeMap<AssetId, BTreeSet<AssetId>>,
    /// node -> its direct dependents
    downstream: BTreeMap<AssetId, BTreeSet<AssetId>>,
}

impl EcosystemGraph {
    pub fn node(&self, id: &str) -> Option<&Node> {
        self.nodes.get(id)
    }

    pub fn contains(&self, id: &str) -> bool {
        self.nodes.contains_key(id)
    }

    /// Nodes ordered by id.
    pub fn nodes(&self) -> impl Iterator<Item = &Node> {
        self.nodes.values()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn stubs(&self) -> impl Iterator<Item = &Node> {
        self.nodes.values().filter(|n| n.is_stub())
    }

    /// Edges as `(upstream, downstream)`, ordered by `(from, to)`.
    pub fn edges(&self) -> impl Iterator<Item = (&AssetId, &AssetId)> {
        self.downstream.iter().flat_map(|(u, vs)| vs.iter().map(move |v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.downstream.values().map(BTreeSet::len).sum()
    }

    fn key(&self, id: &str) -> Result<&AssetId> {
        self.nodes.get_key_value(id).map(|(k, _)| k).ok_or_else(|| Error::NotFound(id.to_owned()))
    }

    fn neighbors<'a>(map: &'a BTreeMap<AssetId, BTreeSet<AssetId>>, id: &str) -> impl Iterator<Item = &'a AssetId> {
        map.get(id).into_iter().flatten()
    }

    /// Ids this node was built from.
    pub fn direct_dependencies(&self, id: &str) -> Result<BTreeSet<AssetId>> {
        self.key(id)?;
        Ok(Self::neighbors(&self.upstream, id).cloned().collect())
    }

    /// Ids built from this node.
    pub fn direct_dependents(&self, id: &str) -> Result<BTreeSet<AssetId>> {
        self.key(id)?;
        Ok(Self::neighbors(&self.downstream, id).cloned().collect())
    }

    pub fn dependent_count(&self, id: &str) -> usize {
        self.downstream.get(id).map_or(0, BTreeSet::len)
    }

    /// Everything `id` transitively depends on, excluding `id`.
    pub fn upstream_closure(&self, id: &str) -> Result<BTreeSet<AssetId>> {
        let start = self.key(id)?;
        Ok(self.reach(start, &self.upstream))
    }

    /// Everything transitively built from `id`, excluding `id`.
    pub fn downstream_closure(&self, id: &str) -> Result<BTreeSet<AssetId>> {
        let start = self.key(id)?;
        Ok(self.reach(start, &self.downstream))
    }

    fn reach(&self, start: &AssetId, adj: &BTreeMap<AssetId, BTreeSet<AssetId>>) -> BTreeSet<AssetId> {
        let mut seen: BTreeSet<&AssetId> = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for v in Self::neighbors(adj, u.as_str()) {
                if seen.insert(v) {
                    stack.push(v);
                }
            }
        }
        seen.remove(start);
        seen.into_iter().cloned().collect()
    }

    /// Strongly connected components with at least two nodes, each sorted,
    /// ordered by smallest member. Empty for a DAG.
    pub fn find_cycles(&self) -> Vec<Vec<AssetId>> {
        let ids: Vec<&AssetId> = self.nodes.keys().collect();
        let index_of: BTreeMap<&AssetId, usize> = ids.iter().enumerate().map(|(i, id)| (*id, i)).collect();
        let adj: Vec<Vec<usize>> = ids
            .iter()
            .map(|id| Self::neighbors(&self.downstream, id.as_str()).map(|v| index_of[v]).collect())
            .collect();
        let mut out: Vec<Vec<AssetId>> = tarjan(&adj)
            .into_iter()
            .filter(|c| c.len() >= 2)
            .map(|c| {
                let mut comp: Vec<AssetId> = c.into_iter().map(|i| ids[i].clone()).collect();
                comp.sort();
                comp
            })
            .collect();
        out.sort();
        out
    }

    /// Induced subgraph on every node within `radius` undirected hops of `ids`.
    pub fn subgraph<S: AsRef<str>>(&self, ids: &[S], radius: usize) -> Result<EcosystemGraph> {
        let mut dist: BTreeMap<&AssetId, usize> = BTreeMap::new();
        let mut queue = VecDeque::new();
        for id in ids {
            let k = self.key(id.as_ref())?;
            if dist.insert(k, 0).is_none() {
                queue.push_back(k);
            }
        }
        while let Some(u) = queue.pop_front() {
            let d = dist[u];
            if d == radius {
                continue;
            }
            let around = Self::neighbors(&self.upstream, u.as_str()).chain(Self::neighbors(&self.downstream, u.as_str()));
            for v in around {
                if !dist.contains_key(v) {
                    dist.insert(v, d + 1);
                    queue.push_back(v);
                }
            }
        }
        let keep: BTreeSet<&AssetId> = dist.into_keys().collect();
        let restrict = |map: &BTreeMap<AssetId, BTreeSet<AssetId>>| -> BTreeMap<AssetId, BTreeSet<AssetId>> {
            map.iter()
                .filter(|(k, _)| keep.contains(k))
                .map(|(k, vs)| (k.clone(), vs.iter().filter(|v| keep.contains(v)).cloned().collect::<BTreeSet<_>>()))
                .filter(|(_, vs)| !vs.is_empty())
                .collect()
        };
        Ok(EcosystemGraph {
            nodes: self.nodes.iter().filter(|(k, _)| keep.contains(k)).map(|(k, n)| (k.clone(), n.clone())).collect(),
            upstream: restrict(&self.upstream),
            downstream: restrict(&self.downstream),
        })
    }

    fn add_edge(&mut self, from: AssetId, to: AssetId) {
        self.upstream.entry(to.clone()).or_default().insert(from.clone());
        self.downstream.entry(from).or_default().insert(to);
    }
}

/// Iterative Tarjan. Returns components in reverse topological order.
fn tarjan(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    const UNVISITED: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut next = 0;
    // (node, position in its adjacency list)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        call.push((root, 0));
        while let Some(&(v, pos)) = call.last() {
            if pos == 0 && index[v] == UNVISITED {
                index[v] = next;
                low[v] = next;
                next += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if let Some(&w) = adj[v].get(pos) {
                call.last_mut().expect("nonempty").1 += 1;
                if index[w] == UNVISITED {
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("component root is on the stack");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comps.push(comp);
            }
        }
    }
    comps
}

/// Builds the graph from validated assets. Always succeeds; anomalies are
/// reported as diagnostics (stub creation, repeated dependency mentions,
/// conflicting stub spellings, cycles).
///
/// Assets are visited in source order (file, then record), so the result
/// does not depend on the order of `assets`.
pub fn build_graph(assets: &[Asset]) -> (EcosystemGraph, Vec<Diagnostic>) {
    let mut g = EcosystemGraph::default();
    let mut diags = Vec::new();

    let mut ordered: Vec<&Asset> = assets.iter().collect();
    ordered.sort_by(|a, b| (&a.source.file, a.source.record, &a.id).cmp(&(&b.source.file, b.source.record, &b.id)));
    let mut kept = Vec::with_capacity(ordered.len());
    for asset in ordered {
        if g.nodes.contains_key(&asset.id) {
            diags.push(Diagnostic::error(
                Code::DupId,
                Location::record(&asset.source).with_field("name"),
                format!("asset id `{}` is defined more than once; keeping the first", asset.id),
            ));
            continue;
        }
        g.nodes.insert(
            asset.id.clone(),
            Node { id: asset.id.clone(), display_name: asset.name().to_owned(), asset: Some(Arc::new(asset.clone())) },
        );
        kept.push(asset);
    }

    let mut stub_spellings: BTreeMap<AssetId, BTreeSet<String>> = BTreeMap::new();
    for &asset in &kept {
        let at = || Location::record(&asset.source).with_field("dependencies");
        let mut mentioned = BTreeSet::new();
        for name in asset.dependencies() {
            let Ok(dep) = canonical_id(name) else {
                diags.push(Diagnostic::warning(Code::BadDependency, at(), format!("ignoring dependency {name:?}")));
                continue;
            };
            if dep == asset.id {
                diags.push(Diagnostic::error(Code::SelfDep, at(), format!("`{}` lists itself as a dependency", asset.id)));
                continue;
            }
            if !mentioned.insert(dep.clone()) {
                diags.push(Diagnostic::warning(
                    Code::DupDep,
                    at(),
                    format!("`{}` lists dependency `{dep}` more than once", asset.id),
                ));
                continue;
            }
            let annotated = g.nodes.get(&dep).is_some_and(|n| !n.is_stub());
            if !annotated {
                let spellings = stub_spellings.entry(dep.clone()).or_default();
                if spellings.is_empty() {
                    diags.push(Diagnostic::warning(
                        Code::StubDep,
                        at(),
                        format!("dependency `{name}` has no card; created stub node `{dep}`"),
                    ));
                }
                spellings.insert(name.clone());
                g.nodes.entry(dep.clone()).or_insert_with(|| Node { id: dep.clone(), display_name: name.clone(), asset: None });
            }
            g.add_edge(dep, asset.id.clone());
        }
    }

    for (id, spellings) in &stub_spellings {
        let chosen = spellings.first().expect("nonempty").clone();
        if spellings.len() > 1 {
            let all: Vec<_> = spellings.iter().map(|s| format!("{s:?}")).collect();
            let first_ref = kept.iter().find(|a| a.dependencies().iter().any(|d| canonical_id(d).ok().as_ref() == Some(id)));
            let loc = first_ref.map(|a| Location::record(&a.source).with_field("dependencies")).unwrap_or_else(|| Location::file(""));
            diags.push(Diagnostic::warning(
                Code::StubNameConflict,
                loc,
                format!("stub `{id}` is referenced as {}; using {chosen:?}", all.join(", ")),
            ));
        }
        if let Some(node) = g.nodes.get_mut(id) {
            node.display_name = chosen;
        }
    }

    for cycle in g.find_cycles() {
        let members: Vec<&str> = cycle.iter().map(AssetId::as_str).collect();
        let loc = g.nodes[&cycle[0]]
            .asset
            .as_ref()
            .map(|a| Location::record(&a.source).with_field("dependencies"))
            .unwrap_or_else(|| Location::file(""));
        diags.push(Diagnostic::warning(Code::Cycle, loc, format!("dependency cycle among: {}", members.join(", "))));
    }

    (g, diags)
}
