//! HTTP API over the argumentation engine.
//!
//! Frameworks are uploaded once and addressed by an opaque id; every other
//! endpoint is a pure GET (plus the what-if POST) whose response depends only
//! on the stored framework and the query. See [`router`] for the route table.

mod error;
mod session;

use std::collections::HashMap;
use std::fmt::Display;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Duration;

use axum::body::Bytes;
use axum::extract::rejection::{BytesRejection, JsonRejection};
use axum::extract::{DefaultBodyLimit, Path, Query, State};
use axum::http::header::CONTENT_TYPE;
use axum::http::{HeaderMap, HeaderValue, Method, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Deserialize;
use serde_json::Value;
use tower_http::cors::{AllowOrigin, CorsLayer};

use arglayer_core::formats::{self, Format};
use arglayer_core::layout::{export_dot, export_layout_json, View};
use arglayer_core::{Attack, CandidateMode, SearchBounds, Semantics};

pub use error::ApiError;
pub use session::{CancelOnDrop, ExplainKey, Lookup, Session, SessionStore};

pub const DEFAULT_BIND: &str = "127.0.0.1:8080";

#[derive(Debug, Clone)]
pub struct Config {
    pub max_sessions: usize,
    /// Idle time after which a session expires.
    pub ttl: Duration,
    pub cache: bool,
    pub max_body_bytes: usize,
    /// Origins allowed to call the API from a browser. Empty disables CORS.
    pub cors_origins: Vec<String>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_sessions: 100,
            ttl: Duration::from_secs(3600),
            cache: true,
            max_body_bytes: 4 * 1024 * 1024,
            cors_origins: Vec::new(),
        }
    }
}

#[derive(Debug, thiserror::Error)]
#[error("invalid CORS origin `{0}`")]
pub struct InvalidOrigin(pub String);

type Store = Arc<SessionStore>;
type Params = HashMap<String, String>;

/// Builds the application.
///
/// | method | path | |
/// |---|---|---|
/// | GET | `/healthz` | `ok` |
/// | POST | `/frameworks` | upload, `201 {"id"}` |
/// | GET | `/frameworks/{id}/grounded` | labels and lengths |
/// | GET | `/frameworks/{id}/solutions?semantics=` | solution set |
/// | GET | `/frameworks/{id}/solutions/{i}/explanation` | overlay and critical sets |
/// | POST | `/frameworks/{id}/what-if` | layout after suspending attacks |
/// | GET | `/frameworks/{id}/layout?solution=&delta=` | layout JSON |
/// | GET | `/frameworks/{id}/export?format=` | apx, tgf, json, dot or layout |
pub fn router(config: &Config) -> Result<Router, InvalidOrigin> {
    let store: Store = Arc::new(SessionStore::new(
        config.max_sessions,
        config.ttl,
        config.cache,
    ));
    let mut app = Router::new()
        .route("/healthz", get(|| async { "ok" }))
        .route("/frameworks", post(create))
        .route("/frameworks/{id}/grounded", get(grounded))
        .route("/frameworks/{id}/solutions", get(solutions))
        .route(
            "/frameworks/{id}/solutions/{index}/explanation",
            get(explanation),
        )
        .route("/frameworks/{id}/what-if", post(what_if))
        .route("/frameworks/{id}/layout", get(layout))
        .route("/frameworks/{id}/export", get(export))
        .fallback(|| async { ApiError::not_found("no such route") })
        .layer(DefaultBodyLimit::max(config.max_body_bytes))
        .with_state(store);
    if !config.cors_origins.is_empty() {
        let origins = config
            .cors_origins
            .iter()
            .map(|o| HeaderValue::from_str(o).map_err(|_| InvalidOrigin(o.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        app = app.layer(
            CorsLayer::new()
                .allow_origin(AllowOrigin::list(origins))
                .allow_methods([Method::GET, Method::POST])
                .allow_headers([CONTENT_TYPE]),
        );
    }
    Ok(app)
}

/// Serves `app` on `listener` until `shutdown` resolves.
pub async fn serve(
    listener: tokio::net::TcpListener,
    app: Router,
    shutdown: impl std::future::Future<Output = ()> + Send + 'static,
) -> std::io::Result<()> {
    axum::serve(listener, app)
        .with_graceful_shutdown(shutdown)
        .await
}

fn json_body(value: &Value) -> Response {
    let mut text = serde_json::to_string(value).expect("JSON values always serialize");
    text.push('\n');
    ([(CONTENT_TYPE, "application/json")], text).into_response()
}

fn lookup(store: &SessionStore, id: &str) -> Result<Arc<Session>, ApiError> {
    match store.get(id) {
        Lookup::Found(s) => Ok(s),
        Lookup::Gone => Err(ApiError::gone(id)),
        Lookup::Missing => Err(ApiError::not_found(format!("no framework with id `{id}`"))),
    }
}

fn param<T: FromStr>(params: &Params, name: &str) -> Result<Option<T>, ApiError>
where
    T::Err: Display,
{
    params
        .get(name)
        .map(|v| {
            v.parse()
                .map_err(|e| ApiError::bad_request(format!("invalid `{name}`: {e}")))
        })
        .transpose()
}

fn semantics(params: &Params) -> Result<Semantics, ApiError> {
    Ok(param(params, "semantics")?.unwrap_or(Semantics::Stable))
}

fn explain_key(params: &Params, index: usize) -> Result<ExplainKey, ApiError> {
    let defaults = SearchBounds::default();
    Ok(ExplainKey {
        semantics: semantics(params)?,
        index,
        mode: param::<CandidateMode>(params, "candidates")?.unwrap_or_default(),
        bounds: SearchBounds {
            max_cardinality: param(params, "maxDelta")?.unwrap_or(defaults.max_cardinality),
            max_tests: param(params, "maxTests")?.unwrap_or(defaults.max_tests),
            max_results: param(params, "maxResults")?.unwrap_or(defaults.max_results),
        },
    })
}

fn upload_format(params: &Params, headers: &HeaderMap, text: &str) -> Result<Format, ApiError> {
    if let Some(f) = param(params, "format")? {
        return Ok(f);
    }
    let content_type = headers
        .get(CONTENT_TYPE)
        .and_then(|v| v.to_str().ok())
        .unwrap_or("")
        .to_ascii_lowercase();
    Ok(if content_type.contains("json") {
        Format::Json
    } else if content_type.contains("apx") {
        Format::Apx
    } else if content_type.contains("tgf") {
        Format::Tgf
    } else {
        Format::sniff(text)
    })
}

async fn create(
    State(store): State<Store>,
    Query(params): Query<Params>,
    headers: HeaderMap,
    body: Result<Bytes, BytesRejection>,
) -> Result<Response, ApiError> {
    let body = body.map_err(|r| {
        let status = r.status();
        let code = if status == StatusCode::PAYLOAD_TOO_LARGE {
            "too_large"
        } else {
            "bad_request"
        };
        ApiError::new(status, code, r.body_text())
    })?;
    let text = std::str::from_utf8(&body)
        .map_err(|e| ApiError::bad_request(format!("body is not UTF-8: {e}")))?;
    let format = upload_format(&params, &headers, text)?;
    let framework = formats::parse(text, format)?;
    let session = store.insert(framework);
    let body = serde_json::json!({ "id": session.id.to_string() });
    Ok((StatusCode::CREATED, json_body(&body)).into_response())
}

async fn grounded(
    State(store): State<Store>,
    Path(id): Path<String>,
) -> Result<Response, ApiError> {
    let s = lookup(&store, &id)?;
    Ok(json_body(&s.grounded().await?.to_json(&s.framework)))
}

async fn solutions(
    State(store): State<Store>,
    Path(id): Path<String>,
    Query(params): Query<Params>,
) -> Result<Response, ApiError> {
    let s = lookup(&store, &id)?;
    let semantics = semantics(&params)?;
    Ok(json_body(
        &s.solutions(semantics).await?.to_json(&s.framework),
    ))
}

fn index(raw: &str) -> Result<usize, ApiError> {
    raw.parse()
        .map_err(|_| ApiError::bad_request(format!("solution index `{raw}` is not a number")))
}

async fn explanation(
    State(store): State<Store>,
    Path((id, i)): Path<(String, String)>,
    Query(params): Query<Params>,
) -> Result<Response, ApiError> {
    let s = lookup(&store, &id)?;
    let key = explain_key(&params, index(&i)?)?;
    Ok(json_body(&s.explanation(key).await?.to_json(&s.framework)))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WhatIf {
    suspend: Vec<(String, String)>,
}

async fn what_if(
    State(store): State<Store>,
    Path(id): Path<String>,
    body: Result<Json<WhatIf>, JsonRejection>,
) -> Result<Response, ApiError> {
    let s = lookup(&store, &id)?;
    let Json(body) = body.map_err(|r| ApiError::bad_request(r.body_text()))?;
    let attacks = body
        .suspend
        .iter()
        .map(|(x, y)| Attack::parse(x, y))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| ApiError::bad_request(e.to_string()))?;
    let edges = s
        .framework
        .resolve_attacks(&attacks)
        .map_err(|e| ApiError::new(StatusCode::BAD_REQUEST, "unknown_attack", e.to_string()))?;
    let base = s.grounded().await?;
    let view = View::what_if(&s.framework, &base, &edges);
    Ok(json_body(&arglayer_core::layout::layout_json(
        &s.framework,
        &view,
    )))
}

/// Base view, solution overlay, or overlay with a critical set, depending on
/// the `solution` and `delta` parameters.
async fn view(s: &Arc<Session>, params: &Params) -> Result<View, ApiError> {
    let solution: Option<usize> = param(params, "solution")?;
    let delta: Option<usize> = param(params, "delta")?;
    let base = s.grounded().await?;
    match (solution, delta) {
        (None, None) => Ok(View::from_grounded(&s.framework, (*base).clone())),
        (None, Some(_)) => Err(ApiError::bad_request("`delta` requires `solution`")),
        (Some(i), None) => {
            let set = s.solutions(semantics(params)?).await?;
            Ok(View::solution(&s.framework, &base, set.get(i)?)?)
        }
        (Some(i), Some(j)) => {
            let e = s.explanation(explain_key(params, i)?).await?;
            let critical = e.critical.sets.get(j).ok_or_else(|| {
                ApiError::new(
                    StatusCode::NOT_FOUND,
                    "no_such_delta",
                    format!(
                        "critical set index {j} out of range ({} sets)",
                        e.critical.sets.len()
                    ),
                )
            })?;
            Ok(View::resolution(
                &s.framework,
                &base,
                &e.overlay.target,
                critical,
            )?)
        }
    }
}

async fn layout(
    State(store): State<Store>,
    Path(id): Path<String>,
    Query(params): Query<Params>,
) -> Result<Response, ApiError> {
    let s = lookup(&store, &id)?;
    let view = view(&s, &params).await?;
    Ok(json_body(&arglayer_core::layout::layout_json(
        &s.framework,
        &view,
    )))
}

async fn export(
    State(store): State<Store>,
    Path(id): Path<String>,
    Query(params): Query<Params>,
) -> Result<Response, ApiError> {
    let s = lookup(&store, &id)?;
    let Some(format) = params.get("format") else {
        return Err(ApiError::bad_request("missing `format`"));
    };
    let (content_type, body) = match format.as_str() {
        "dot" => (
            "text/vnd.graphviz",
            export_dot(&s.framework, &view(&s, &params).await?),
        ),
        "layout" => (
            "application/json",
            export_layout_json(&s.framework, &view(&s, &params).await?),
        ),
        other => match other.parse::<Format>() {
            Ok(f) => {
                let ct = if f == Format::Json {
                    "application/json"
                } else {
                    "text/plain; charset=utf-8"
                };
                (ct, formats::serialize(&s.framework, f))
            }
            Err(_) => {
                return Err(ApiError::bad_request(format!(
                    "unsupported export format `{other}` (expected apx, tgf, json, dot or layout)"
                )))
            }
        },
    };
    Ok(([(CONTENT_TYPE, content_type)], body).into_response())
}
