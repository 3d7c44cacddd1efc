mod support;

use std::collections::BTreeSet;

use ecograph_core::{
    build_graph, builtin_schema, hub_ranking, impact_score, opacity_report, org_summary, timeline, AssetType, Code,
    FieldKind, PartialDate, Value,
};

fn ids<'a>(it: impl IntoIterator<Item = &'a ecograph_core::AssetId>) -> Vec<&'a str> {
    it.into_iter().map(|id| id.as_str()).collect()
}

#[test]
fn fixture_is_valid_and_complete() {
    let load = support::load_fixture();
    assert!(load.valid, "{:#?}", load.diagnostics);
    assert_eq!(load.error_count(), 0);
    assert_eq!(load.assets.len(), 21);
    let count = |t| load.assets.iter().filter(|a| a.asset_type == t).count();
    assert_eq!((count(AssetType::Dataset), count(AssetType::Model), count(AssetType::Application)), (3, 12, 6));
}

#[test]
fn graph_shape() {
    let load = support::load_fixture();
    let (g, diags) = build_graph(&load.assets);
    assert_eq!(g.node_count(), 22);
    assert_eq!(g.edge_count(), 15);
    assert!(g.find_cycles().is_empty());
    assert!(diags.iter().all(|d| !d.is_error()));

    let stubs: Vec<_> = g.stubs().map(|n| n.id.as_str()).collect();
    assert_eq!(stubs, ["jurassic-1-training-dataset"]);
    let stub_warnings: Vec<_> = diags.iter().filter(|d| d.code == Code::StubDep).collect();
    assert_eq!(stub_warnings.len(), 1);
    assert!(stub_warnings[0].location.file.ends_with("ai21.yaml"));
    assert_eq!(g.node("jurassic-1-training-dataset").unwrap().display_name, "Jurassic-1 training dataset");
}

#[test]
fn named_dependency_chains() {
    let load = support::load_fixture();
    let (g, _) = build_graph(&load.assets);
    let deps = |id: &str| g.direct_dependencies(id).unwrap();
    assert_eq!(ids(&deps("stable-diffusion")), ["laion-5b"]);
    assert_eq!(ids(&deps("stable-diffusion-reimagine")), ["stable-diffusion"]);
    assert_eq!(ids(&deps("jurassic-1")), ["jurassic-1-training-dataset"]);
    assert_eq!(ids(&deps("ai21-playground")), ["jurassic-1"]);
    assert_eq!(ids(&deps("bloomz")), ["bloom", "xp3"]);
    assert_eq!(ids(&deps("microsoft365-copilot")), ["gpt-4-api"]);
    assert_eq!(ids(&deps("microsoft-word")), ["microsoft365-copilot"]);
    assert!(deps("chatgpt-api").is_empty());

    assert_eq!(ids(&g.upstream_closure("microsoft-word").unwrap()), ["gpt-4", "gpt-4-api", "microsoft365-copilot"]);
    assert_eq!(impact_score(&g, "gpt-4").unwrap(), 3);
    assert_eq!(impact_score(&g, "laion-5b").unwrap(), 2);
    assert_eq!(impact_score(&g, "the-pile").unwrap(), 6);
    assert_eq!(impact_score(&g, "microsoft-word").unwrap(), 0);
}

#[test]
fn the_pile_is_the_hub() {
    let load = support::load_fixture();
    let (g, _) = build_graph(&load.assets);
    let top = hub_ranking(&g, 1, None);
    assert_eq!(top.len(), 1);
    assert_eq!(top[0].id.as_str(), "the-pile");
    assert_eq!(top[0].direct_dependents, 6);
    let orgs: BTreeSet<&str> = top[0].organizations.iter().map(String::as_str).collect();
    assert_eq!(orgs, BTreeSet::from(["EleutherAI", "Meta", "Microsoft", "Stanford", "Tsinghua", "Yandex"]));
    assert!(orgs.len() >= 5);

    assert_eq!(hub_ranking(&g, 1, Some(AssetType::Dataset))[0].id.as_str(), "the-pile");
    let apps = hub_ranking(&g, 10, Some(AssetType::Application));
    assert!(apps.iter().all(|h| !h.stub));
    assert_eq!(apps[0].direct_dependents, 1);
}

#[test]
fn known_card_facts() {
    let load = support::load_fixture();
    let by_id = |id: &str| load.assets.iter().find(|a| a.id.as_str() == id).unwrap();
    let sd = by_id("stable-diffusion");
    assert_eq!(sd.card.text("license"), Some("CreativeML OpenRAIL M license"));
    let gpt3 = by_id("gpt-3");
    assert_eq!(gpt3.organization(), Some("OpenAI"));
    assert_eq!(gpt3.created_date().unwrap().year(), 2020);
    assert_eq!(by_id("the-pile").organization(), Some("EleutherAI"));
    let chatgpt = by_id("chatgpt-api").card.get("dependencies").unwrap();
    assert_eq!(chatgpt.kind(), FieldKind::MissingUnknown);
    assert!(chatgpt.explanation().is_some());
    let laion_deps = by_id("laion-5b").card.get("dependencies").unwrap();
    assert_eq!(laion_deps.kind(), FieldKind::MissingNone);
    assert_eq!(by_id("microsoft-word").created_date(), PartialDate::from_ymd(1983, None, None));
    assert_eq!(
        by_id("stable-diffusion").card.get("modality").unwrap().value(),
        Some(&Value::List(vec!["text".into(), "image".into()]))
    );
}

#[test]
fn hand_counted_opacity() {
    let load = support::load_fixture();
    let mt = load.assets.iter().find(|a| a.id.as_str() == "megatron-turing-nlg").unwrap();
    let r = opacity_report(mt, builtin_schema());
    assert_eq!(r.applicable, 19);
    assert_eq!(r.unknown, 8);
    assert_eq!(r.none_count, 1);
    assert_eq!(r.opacity, 8.0 / 19.0);
    assert_eq!(r.immaturity, 1.0 / 19.0);
}

#[test]
fn organizations() {
    let load = support::load_fixture();
    let rows = org_summary(&load.assets);
    let order: Vec<(&str, usize)> = rows.iter().map(|r| (r.organization.as_str(), r.total)).collect();
    assert_eq!(
        order,
        [
            ("OpenAI", 4),
            ("BigScience", 3),
            ("Microsoft", 3),
            ("AI21 Labs", 2),
            ("EleutherAI", 2),
            ("Stability AI", 2),
            ("LAION", 1),
            ("Meta", 1),
            ("Stanford", 1),
            ("Tsinghua", 1),
            ("Yandex", 1),
        ]
    );
    assert_eq!(rows.iter().map(|r| r.total).sum::<usize>(), load.assets.len());
}

#[test]
fn twenty_twenty_three() {
    let load = support::load_fixture();
    let t = timeline(&load.assets, PartialDate::parse("2023"), PartialDate::parse("2023-12-31")).unwrap();
    let got: Vec<&str> = t.assets.iter().map(|a| a.id.as_str()).collect();
    assert_eq!(
        got,
        ["chatgpt-api", "gpt-4", "gpt-4-api", "microsoft365-copilot", "stable-diffusion-reimagine"]
    );
    assert_eq!(t.undated, 0);
}

/// Deleting a record leaves its id behind as a stub wherever it was
/// referenced, with the same dependents.
#[test]
fn removed_records_become_stubs() {
    let load = support::load_fixture();
    let (full, _) = build_graph(&load.assets);
    for (i, removed) in load.assets.iter().enumerate() {
        let mut rest = load.assets.clone();
        rest.remove(i);
        let (g, diags) = build_graph(&rest);
        let id = removed.id.as_str();
        let dependents = full.direct_dependents(id).unwrap();
        if dependents.is_empty() {
            assert!(!g.contains(id), "{id}");
        } else {
            let node = g.node(id).unwrap();
            assert!(node.is_stub(), "{id}");
            assert_eq!(g.direct_dependents(id).unwrap(), dependents, "{id}");
            assert!(diags.iter().any(|d| d.code == Code::StubDep && d.message.contains(id)), "{id}");
        }
        // Stubs only the removed record referenced disappear with it.
        let mut expected_stubs: Vec<&str> = full
            .stubs()
            .filter(|s| full.direct_dependents(s.id.as_str()).unwrap().iter().any(|d| d.as_str() != id))
            .map(|s| s.id.as_str())
            .collect();
        if !dependents.is_empty() {
            expected_stubs.push(id);
        }
        expected_stubs.sort_unstable();
        assert_eq!(g.stubs().map(|n| n.id.as_str()).collect::<Vec<_>>(), expected_stubs, "{id}");
    }
}
