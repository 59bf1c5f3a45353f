//! Stateless HTTP/JSON API over the journey engine.
//!
//! The server keeps no per-user state. A journey lives entirely in the
//! [`JourneyDoc`] the client sends back with every request, and each
//! request is answered by replaying that document against the graph set
//! loaded at startup. Request bodies are parsed in memory only; the only
//! request fields ever logged are graph and entry-point ids.

pub mod error;
pub mod graphs;

use std::path::{Path, PathBuf};
use std::sync::{Arc, RwLock};

use axum::body::Bytes;
use axum::extract::State;
use axum::http::{header, HeaderValue, Method, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use tower_http::cors::{AllowOrigin, Any, CorsLayer};

use artemus_core::canonical::{to_canonical_string, Style};
use artemus_core::journey::{self, Choice, JourneyDoc, LoadedGraph, OptionView};
use artemus_core::search::{search, SearchMatch};
use artemus_core::view::{self, ViewModel, Zoom};
use artemus_core::{Lang, LocalizedText};

pub use error::ApiError;
pub use graphs::{GraphSet, LoadError};

/// Environment variable naming the data directory.
pub const DATA_DIR_ENV: &str = "ARTEMUS_DATA_DIR";
pub const DEFAULT_PORT: u16 = 8080;
const DEFAULT_SEARCH_RESULTS: usize = 5;

/// Shared handle to the loaded graph set. Cloning is cheap; a reload swaps
/// the whole set at once so a request sees either the old or the new set,
/// never a mixture.
#[derive(Debug, Clone)]
pub struct AppState {
    graphs: Arc<RwLock<Arc<GraphSet>>>,
    data_dir: Option<PathBuf>,
}

impl AppState {
    pub fn new(graphs: GraphSet) -> Self {
        Self {
            graphs: Arc::new(RwLock::new(Arc::new(graphs))),
            data_dir: None,
        }
    }

    /// Load every graph in `dir`, or the bundled datasets if `dir` is `None`.
    pub fn load(dir: Option<&Path>) -> Result<Self, LoadError> {
        let mut state = Self::new(GraphSet::load(dir)?);
        state.data_dir = dir.map(Path::to_path_buf);
        Ok(state)
    }

    pub fn graphs(&self) -> Arc<GraphSet> {
        Arc::clone(&self.graphs.read().unwrap_or_else(|e| e.into_inner()))
    }

    /// Re-read the data directory and swap in the result. On error the
    /// current set stays in place.
    pub fn reload(&self) -> Result<usize, LoadError> {
        let fresh = GraphSet::load(self.data_dir.as_deref())?;
        let count = fresh.len();
        *self.graphs.write().unwrap_or_else(|e| e.into_inner()) = Arc::new(fresh);
        Ok(count)
    }
}

#[derive(Debug, Clone, Default)]
pub struct ServerConfig {
    /// Origins allowed by CORS. Empty means any origin.
    pub cors_origins: Vec<String>,
}

pub fn router(state: AppState, config: &ServerConfig) -> Router {
    let origins = if config.cors_origins.is_empty() {
        AllowOrigin::from(Any)
    } else {
        AllowOrigin::list(config.cors_origins.iter().filter_map(|o| HeaderValue::from_str(o).ok()))
    };
    let cors = CorsLayer::new()
        .allow_methods([Method::GET, Method::POST])
        .allow_headers([header::CONTENT_TYPE])
        .allow_origin(origins);

    Router::new()
        .route("/healthz", get(healthz))
        .route("/api/graphs", get(list_graphs))
        .route("/api/search", post(search_entries))
        .route("/api/journeys", post(start_journey))
        .route("/api/journeys/step", post(step_journey))
        .route("/api/journeys/rewind", post(rewind_journey))
        .fallback(not_found)
        .layer(cors)
        .with_state(state)
}

/// Serve until Ctrl-C. On Unix, SIGHUP re-reads the data directory.
pub async fn serve(listener: tokio::net::TcpListener, state: AppState, config: ServerConfig) -> std::io::Result<()> {
    #[cfg(unix)]
    {
        let state = state.clone();
        tokio::spawn(async move {
            use tokio::signal::unix::{signal, SignalKind};
            let Ok(mut hangups) = signal(SignalKind::hangup()) else { return };
            while hangups.recv().await.is_some() {
                match state.reload() {
                    Ok(count) => tracing::info!(graphs = count, "reloaded data directory"),
                    Err(err) => tracing::error!(%err, "reload failed; keeping current graphs"),
                }
            }
        });
    }
    axum::serve(listener, router(state, &config))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}

/// A canonical (sorted-key, compact) JSON response.
pub(crate) fn json_body<T: Serialize>(value: &T) -> Response {
    (
        [(header::CONTENT_TYPE, HeaderValue::from_static("application/json"))],
        to_canonical_string(value, Style::Compact),
    )
        .into_response()
}

fn parse_body<T: DeserializeOwned>(body: &Bytes) -> Result<T, ApiError> {
    serde_json::from_slice(body).map_err(|e| ApiError::malformed(e.to_string()))
}

fn lookup(graphs: &GraphSet, id: &str) -> Result<Arc<LoadedGraph>, ApiError> {
    graphs.get(id).cloned().ok_or_else(|| ApiError::unknown_graph(id))
}

async fn healthz() -> &'static str {
    "ok"
}

async fn not_found() -> ApiError {
    ApiError::new(StatusCode::NOT_FOUND, "NotFound", "no such route")
}

#[derive(Serialize)]
struct GraphSummary<'a> {
    id: &'a str,
    title: &'a LocalizedText,
    disclaimer: &'a LocalizedText,
}

async fn list_graphs(State(state): State<AppState>) -> Response {
    let graphs = state.graphs();
    let list: Vec<GraphSummary> = graphs
        .iter()
        .map(|g| GraphSummary {
            id: &g.graph().id,
            title: &g.graph().title,
            disclaimer: &g.graph().disclaimer,
        })
        .collect();
    json_body(&list)
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct SearchRequest {
    graph_id: String,
    query: String,
    lang: Lang,
    #[serde(default)]
    k: Option<usize>,
}

#[derive(Serialize)]
struct SearchResponse {
    matches: Vec<SearchMatch>,
}

async fn search_entries(State(state): State<AppState>, body: Bytes) -> Result<Response, ApiError> {
    let req: SearchRequest = parse_body(&body)?;
    let graph = lookup(&state.graphs(), &req.graph_id)?;
    let k = req.k.unwrap_or(DEFAULT_SEARCH_RESULTS);
    let matches = search(graph.graph(), &req.query, req.lang, k);
    Ok(json_body(&SearchResponse { matches }))
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct StartRequest {
    graph_id: String,
    entry_point_id: String,
    lang: Lang,
    #[serde(default)]
    zoom: Option<Zoom>,
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct StepRequest {
    journey: JourneyDoc,
    choice: Choice,
    #[serde(default)]
    zoom: Option<Zoom>,
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct RewindRequest {
    journey: JourneyDoc,
    keep: usize,
    #[serde(default)]
    zoom: Option<Zoom>,
}

#[derive(Serialize)]
struct JourneyResponse {
    journey: JourneyDoc,
    /// Omitted once the journey has concluded.
    #[serde(skip_serializing_if = "Option::is_none")]
    options: Option<Vec<OptionView>>,
    view: ViewModel,
}

fn journey_response(graph: &LoadedGraph, doc: JourneyDoc, zoom: Option<Zoom>) -> Result<Response, ApiError> {
    let view = view::build(graph, &doc, zoom.unwrap_or(Zoom::Pathway))?;
    let options = if doc.concluded { None } else { Some(view.frontier.clone()) };
    Ok(json_body(&JourneyResponse {
        journey: doc,
        options,
        view,
    }))
}

async fn start_journey(State(state): State<AppState>, body: Bytes) -> Result<Response, ApiError> {
    let req: StartRequest = parse_body(&body)?;
    let graph = lookup(&state.graphs(), &req.graph_id)?;
    let doc = journey::start(&graph, &req.entry_point_id, req.lang)?;
    tracing::info!(graph_id = %req.graph_id, entry_point_id = %req.entry_point_id, "journey started");
    journey_response(&graph, doc, req.zoom)
}

async fn step_journey(State(state): State<AppState>, body: Bytes) -> Result<Response, ApiError> {
    let req: StepRequest = parse_body(&body)?;
    let graph = lookup(&state.graphs(), &req.journey.graph_id)?;
    let doc = journey::step(&graph, &req.journey, &req.choice)?;
    journey_response(&graph, doc, req.zoom)
}

async fn rewind_journey(State(state): State<AppState>, body: Bytes) -> Result<Response, ApiError> {
    let req: RewindRequest = parse_body(&body)?;
    let graph = lookup(&state.graphs(), &req.journey.graph_id)?;
    let doc = journey::rewind(&graph, &req.journey, req.keep)?;
    journey_response(&graph, doc, req.zoom)
}
