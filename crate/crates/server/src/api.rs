//! Route handlers. Every handler takes the current snapshot once and builds
//! its whole response from it.

use std::borrow::Cow;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use axum::body::Body;
use axum::extract::rejection::QueryRejection;
use axum::extract::{Path, Query, Request, State};
use axum::http::header::{CACHE_CONTROL, CONTENT_DISPOSITION, CONTENT_TYPE, ETAG, IF_NONE_MATCH};
use axum::http::{HeaderValue, StatusCode};
use axum::middleware::{self, Next};
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::Router;
use ecograph_core::export::Column;
use ecograph_core::{
    builtin_schema, ecosystem_stats, hub_ranking, opacity_report, to_csv_filtered, to_graph_json, Access, Asset,
    AssetFilter, AssetId, AssetType, Category, Error as CoreError, FieldValue, OpacityReport, PartialDate, SortDir,
    TableSpec,
};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use tower_http::services::{ServeDir, ServeFile};

use crate::snapshot::{AppState, Snapshot};

const DEFAULT_HUBS: usize = 10;
const DEFAULT_RADIUS: usize = 1;

const TABLE_PARAMS: &[&str] =
    &["type", "organization", "access", "modality", "created_from", "created_to", "sort", "dir", "fields", "q"];

/// The API under `/api`, plus static files from `ui` for every other path.
/// Unknown non-API paths fall back to `index.html` so client-side routes
/// survive a reload.
pub fn router(state: Arc<AppState>, ui: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/assets", get(list_assets))
        .route("/assets/{id}", get(get_asset))
        .route("/graph", get(get_graph))
        .route("/hubs", get(get_hubs))
        .route("/stats", get(get_stats))
        .route("/schema", get(get_schema))
        .route("/export.csv", get(export_csv))
        .fallback(api_not_found)
        .layer(middleware::from_fn(not_modified))
        .with_state(state);
    let app = Router::new().nest("/api", api);
    match ui {
        Some(dir) => {
            let index = ServeFile::new(dir.join("index.html"));
            app.fallback_service(ServeDir::new(dir).not_found_service(index))
        }
        None => app.fallback(|| async { ApiError::not_found("not_found", "no UI is being served").into_response() }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApiError {
    pub status: StatusCode,
    pub code: &'static str,
    pub message: String,
}

impl ApiError {
    fn bad_request(code: &'static str, message: impl Into<String>) -> ApiError {
        ApiError { status: StatusCode::BAD_REQUEST, code, message: message.into() }
    }

    fn not_found(code: &'static str, message: impl Into<String>) -> ApiError {
        ApiError { status: StatusCode::NOT_FOUND, code, message: message.into() }
    }
}

impl From<CoreError> for ApiError {
    fn from(e: CoreError) -> ApiError {
        match e {
            CoreError::NotFound(id) => ApiError::not_found("not_found", format!("no asset or node `{id}`")),
            CoreError::InvalidSpec(_) => ApiError::bad_request("invalid_spec", e.to_string()),
            CoreError::InvalidRange { .. } => ApiError::bad_request("invalid_range", e.to_string()),
            other => ApiError { status: StatusCode::INTERNAL_SERVER_ERROR, code: "internal", message: other.to_string() },
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = serde_json::json!({ "error": { "code": self.code, "message": self.message } });
        let mut resp = (self.status, body.to_string()).into_response();
        resp.headers_mut().insert(CONTENT_TYPE, HeaderValue::from_static("application/json"));
        resp
    }
}

type ApiResult = Result<Response, ApiError>;

fn json_response(value: &impl Serialize) -> ApiResult {
    let body = serde_json::to_string(value).map_err(|e| ApiError {
        status: StatusCode::INTERNAL_SERVER_ERROR,
        code: "internal",
        message: e.to_string(),
    })?;
    Ok(raw_json(body))
}

fn raw_json(body: String) -> Response {
    let mut resp = Response::new(Body::from(body));
    resp.headers_mut().insert(CONTENT_TYPE, HeaderValue::from_static("application/json"));
    resp
}

/// Stamps the snapshot's ETag on success and error responses alike.
fn finish(snap: &Snapshot, result: ApiResult) -> Response {
    let mut resp = result.unwrap_or_else(IntoResponse::into_response);
    if let Ok(etag) = HeaderValue::from_str(&snap.etag()) {
        resp.headers_mut().insert(ETAG, etag);
    }
    resp.headers_mut().insert(CACHE_CONTROL, HeaderValue::from_static("no-cache"));
    resp
}

fn etag_matches(if_none_match: &HeaderValue, etag: &HeaderValue) -> bool {
    let Ok(candidates) = if_none_match.to_str() else { return false };
    let Ok(etag) = etag.to_str() else { return false };
    candidates.split(',').map(str::trim).any(|c| c == "*" || c.trim_start_matches("W/") == etag)
}

async fn not_modified(req: Request, next: Next) -> Response {
    let if_none_match = req.headers().get(IF_NONE_MATCH).cloned();
    let resp = next.run(req).await;
    let (Some(inm), Some(etag)) = (if_none_match, resp.headers().get(ETAG)) else { return resp };
    if resp.status() != StatusCode::OK || !etag_matches(&inm, etag) {
        return resp;
    }
    let mut empty = StatusCode::NOT_MODIFIED.into_response();
    for name in [ETAG, CACHE_CONTROL] {
        if let Some(v) = resp.headers().get(&name) {
            empty.headers_mut().insert(name, v.clone());
        }
    }
    empty
}

/// Query parameters as given, checked against each endpoint's allowed set.
struct Params(Vec<(String, String)>);

impl Params {
    fn from_query(query: Result<Query<Vec<(String, String)>>, QueryRejection>, allowed: &[&str]) -> Result<Params, ApiError> {
        let Query(pairs) = query.map_err(|e| ApiError::bad_request("invalid_query", e.body_text()))?;
        for (i, (key, _)) in pairs.iter().enumerate() {
            if !allowed.contains(&key.as_str()) {
                let expected = allowed.join(", ");
                return Err(ApiError::bad_request("invalid_param", format!("unknown parameter `{key}`; expected one of {expected}")));
            }
            if pairs[..i].iter().any(|(k, _)| k == key) {
                return Err(ApiError::bad_request("invalid_param", format!("parameter `{key}` is given more than once")));
            }
        }
        Ok(Params(pairs))
    }

    /// The value for `key`; an empty value counts as absent.
    fn get(&self, key: &str) -> Option<&str> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v.trim()).filter(|v| !v.is_empty())
    }

    fn parse<T>(&self, key: &str, parse: impl FnOnce(&str) -> Option<T>, expected: &str) -> Result<Option<T>, ApiError> {
        match self.get(key) {
            None => Ok(None),
            Some(raw) => parse(raw)
                .map(Some)
                .ok_or_else(|| ApiError::bad_request("invalid_param", format!("`{key}`: expected {expected}, got {raw:?}"))),
        }
    }
}

fn table_request(p: &Params) -> Result<(TableSpec, AssetFilter), ApiError> {
    let schema = builtin_schema();
    let mut spec = TableSpec::all_columns(schema);
    if let Some(fields) = p.get("fields") {
        spec.fields = TableSpec::parse_fields(fields);
    }
    spec.type_filter = p.parse("type", |s| AssetType::from_str(s).ok(), "dataset, model or application")?;
    spec.sort_by = p.get("sort").map(str::to_owned);
    spec.sort_dir = p.parse("dir", |s| SortDir::from_str(s).ok(), "asc or desc")?.unwrap_or_default();
    spec.with_explanations = p.parse("with_explanations", parse_bool, "true or false")?.unwrap_or(false);
    let filter = AssetFilter {
        organization: p.get("organization").map(str::to_owned),
        access: p.parse("access", Access::parse, "open, limited or closed")?,
        modality: p.get("modality").map(str::to_owned),
        created_from: p.parse("created_from", PartialDate::parse, "YYYY, YYYY-MM or YYYY-MM-DD")?,
        created_to: p.parse("created_to", PartialDate::parse, "YYYY, YYYY-MM or YYYY-MM-DD")?,
        q: p.get("q").map(str::to_owned),
    };
    spec.columns(schema)?;
    filter.validate()?;
    Ok((spec, filter))
}

fn parse_bool(s: &str) -> Option<bool> {
    match s {
        "true" | "1" => Some(true),
        "false" | "0" => Some(false),
        _ => None,
    }
}

/// One table row: `id` first, then the requested columns in order. Schema
/// fields carry their full value object; inapplicable fields are `null`.
struct Row<'a> {
    asset: &'a Asset,
    columns: &'a [Column<'a>],
}

impl Serialize for Row<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        map.serialize_entry("id", &self.asset.id)?;
        for col in self.columns {
            match col {
                Column::Id => {}
                Column::Type => map.serialize_entry("type", &self.asset.asset_type)?,
                Column::Field(f) => map.serialize_entry(f.name, &col.field_value(self.asset))?,
            }
        }
        map.end()
    }
}

async fn list_assets(State(state): State<Arc<AppState>>, query: Result<Query<Vec<(String, String)>>, QueryRejection>) -> Response {
    let snap = state.current();
    let result = (|| {
        let params = Params::from_query(query, TABLE_PARAMS)?;
        let (spec, filter) = table_request(&params)?;
        let schema = builtin_schema();
        let columns = spec.columns(schema)?;
        let rows = ecograph_core::export::select_rows(snap.assets(), &spec, &filter, schema)?;
        let rows: Vec<Row> = rows.into_iter().map(|asset| Row { asset, columns: &columns }).collect();
        json_response(&rows)
    })();
    finish(&snap, result)
}

#[derive(Serialize)]
struct FieldDoc<'a> {
    name: &'static str,
    category: Category,
    help: &'static str,
    #[serde(flatten)]
    value: Cow<'a, FieldValue>,
}

#[derive(Serialize)]
struct CardDoc<'a> {
    id: &'a AssetId,
    name: &'a str,
    #[serde(rename = "type")]
    asset_type: AssetType,
    upstream: Vec<AssetId>,
    downstream: Vec<AssetId>,
    fields: Vec<FieldDoc<'a>>,
    opacity: OpacityReport,
}

fn card_doc<'a>(snap: &'a Snapshot, id: &str) -> Result<CardDoc<'a>, ApiError> {
    let graph = &snap.ecosystem.graph;
    let node = graph.node(id).ok_or_else(|| ApiError::not_found("not_found", format!("no asset `{id}`")))?;
    let Some(asset) = node.asset.as_deref() else {
        return Err(ApiError::not_found(
            "undocumented",
            format!("`{id}` is referenced as a dependency but has no card"),
        ));
    };
    let schema = builtin_schema();
    let fields = schema
        .applicable_fields(asset.asset_type)
        .map(|spec| FieldDoc {
            name: spec.name,
            category: spec.category,
            help: spec.help,
            value: asset.card.get(spec.name).map_or_else(|| Cow::Owned(FieldValue::unannotated()), Cow::Borrowed),
        })
        .collect();
    Ok(CardDoc {
        id: &asset.id,
        name: asset.name(),
        asset_type: asset.asset_type,
        upstream: graph.direct_dependencies(id)?.into_iter().collect(),
        downstream: graph.direct_dependents(id)?.into_iter().collect(),
        fields,
        opacity: opacity_report(asset, schema),
    })
}

async fn get_asset(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> Response {
    let snap = state.current();
    let result = card_doc(&snap, &id).and_then(|doc| json_response(&doc));
    finish(&snap, result)
}

async fn get_graph(State(state): State<Arc<AppState>>, query: Result<Query<Vec<(String, String)>>, QueryRejection>) -> Response {
    let snap = state.current();
    let result = (|| {
        let params = Params::from_query(query, &["focus", "radius"])?;
        let radius = params.parse("radius", |s| s.parse::<usize>().ok(), "a nonnegative integer")?;
        let graph = &snap.ecosystem.graph;
        let body = match params.get("focus") {
            Some(focus) => to_graph_json(&graph.subgraph(&[focus], radius.unwrap_or(DEFAULT_RADIUS))?),
            None if radius.is_some() => return Err(ApiError::bad_request("invalid_param", "`radius` requires `focus`")),
            None => to_graph_json(graph),
        };
        Ok(raw_json(body))
    })();
    finish(&snap, result)
}

async fn get_hubs(State(state): State<Arc<AppState>>, query: Result<Query<Vec<(String, String)>>, QueryRejection>) -> Response {
    let snap = state.current();
    let result = (|| {
        let params = Params::from_query(query, &["k", "type"])?;
        let k = params.parse("k", |s| s.parse::<usize>().ok(), "a nonnegative integer")?.unwrap_or(DEFAULT_HUBS);
        let t = params.parse("type", |s| AssetType::from_str(s).ok(), "dataset, model or application")?;
        json_response(&hub_ranking(&snap.ecosystem.graph, k, t))
    })();
    finish(&snap, result)
}

async fn get_stats(State(state): State<Arc<AppState>>, query: Result<Query<Vec<(String, String)>>, QueryRejection>) -> Response {
    let snap = state.current();
    let result = Params::from_query(query, &[])
        .and_then(|_| json_response(&ecosystem_stats(&snap.ecosystem.graph, builtin_schema())));
    finish(&snap, result)
}

async fn get_schema(State(state): State<Arc<AppState>>, query: Result<Query<Vec<(String, String)>>, QueryRejection>) -> Response {
    let snap = state.current();
    let result = Params::from_query(query, &[]).and_then(|_| json_response(&builtin_schema().fields()));
    finish(&snap, result)
}

async fn export_csv(State(state): State<Arc<AppState>>, query: Result<Query<Vec<(String, String)>>, QueryRejection>) -> Response {
    let snap = state.current();
    let result = (|| {
        let mut allowed = TABLE_PARAMS.to_vec();
        allowed.push("with_explanations");
        let params = Params::from_query(query, &allowed)?;
        let (spec, filter) = table_request(&params)?;
        let body = to_csv_filtered(snap.assets(), &spec, &filter, builtin_schema())?;
        let mut resp = Response::new(Body::from(body));
        let headers = resp.headers_mut();
        headers.insert(CONTENT_TYPE, HeaderValue::from_static("text/csv; charset=utf-8"));
        headers.insert(CONTENT_DISPOSITION, HeaderValue::from_static("attachment; filename=\"ecosystem.csv\""));
        Ok(resp)
    })();
    finish(&snap, result)
}

async fn api_not_found(State(state): State<Arc<AppState>>, req: Request) -> Response {
    let snap = state.current();
    let path = req.uri().path().to_owned();
    finish(&snap, Err(ApiError::not_found("not_found", format!("no endpoint at {path}"))))
}
