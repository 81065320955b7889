//! Read-only HTTP API over one dataset loaded at startup.
//!
//! Responses are JSON unless the request's `Accept` header asks for
//! `text/csv`, in which case the body is the same CSV the CLI writes.

use std::net::SocketAddr;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::State;
use axum::http::{header, HeaderMap, Method, StatusCode, Uri};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use ergofit::design::{workstation_guidelines, Ruleset};
use ergofit::fit::population_mismatch;
use ergofit::stats::correlation_matrix;
use ergofit::{DesignError, FitConfig, FurnitureSpec, Measure, PopulationDataset};
use serde_json::json;

use crate::analysis::describe_dataset;
use crate::render::{self, Format};

/// Immutable snapshot shared by all requests.
#[derive(Debug)]
pub struct AppState {
    pub dataset: PopulationDataset,
    pub cfg: FitConfig,
}

#[derive(Debug)]
pub enum ApiError {
    BadRequest(String),
    Internal(String),
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        match self {
            ApiError::BadRequest(msg) => (StatusCode::BAD_REQUEST, Json(json!({ "error": msg }))).into_response(),
            ApiError::Internal(msg) => {
                let id = uuid::Uuid::new_v4().to_string();
                eprintln!("error {id}: {msg}");
                (StatusCode::INTERNAL_SERVER_ERROR, Json(json!({ "error": msg, "error_id": id }))).into_response()
            }
        }
    }
}

type ApiResult = Result<Response, ApiError>;

fn negotiated(headers: &HeaderMap) -> Format {
    let csv = headers
        .get_all(header::ACCEPT)
        .iter()
        .filter_map(|v| v.to_str().ok())
        .any(|v| v.split(',').any(|m| m.trim().starts_with("text/csv")));
    if csv {
        Format::Csv
    } else {
        Format::Json
    }
}

fn respond(fmt: Format, body: String) -> Response {
    let ct = match fmt {
        Format::Csv => "text/csv; charset=utf-8",
        Format::Json => "application/json",
        Format::Table => "text/plain; charset=utf-8",
    };
    ([(header::CONTENT_TYPE, ct)], body).into_response()
}

fn parse_json(body: &Bytes) -> Result<serde_json::Value, ApiError> {
    serde_json::from_slice(body).map_err(|e| ApiError::BadRequest(format!("malformed JSON body: {e}")))
}

async fn health(State(state): State<Arc<AppState>>) -> Json<serde_json::Value> {
    Json(json!({ "status": "ok", "records": state.dataset.len() }))
}

async fn stats(State(state): State<Arc<AppState>>, headers: HeaderMap) -> ApiResult {
    let rows = describe_dataset(&state.dataset, &state.cfg).map_err(|e| ApiError::Internal(e.to_string()))?;
    let fmt = negotiated(&headers);
    Ok(respond(fmt, render::describe(&rows, fmt)))
}

async fn correlation(State(state): State<Arc<AppState>>, headers: HeaderMap) -> ApiResult {
    let m = correlation_matrix(&state.dataset, &Measure::ALL).map_err(|e| ApiError::Internal(e.to_string()))?;
    let fmt = negotiated(&headers);
    Ok(respond(fmt, render::correlation(&m, fmt)))
}

async fn guidelines(headers: HeaderMap) -> Response {
    let fmt = negotiated(&headers);
    respond(fmt, render::guidelines(&workstation_guidelines(), fmt))
}

async fn mismatch(State(state): State<Arc<AppState>>, headers: HeaderMap, body: Bytes) -> ApiResult {
    let spec = FurnitureSpec::from_value(parse_json(&body)?).map_err(|e| ApiError::BadRequest(e.to_string()))?;
    let report = population_mismatch(&state.dataset, &spec, &state.cfg).map_err(|e| ApiError::Internal(e.to_string()))?;
    let fmt = negotiated(&headers);
    Ok(respond(fmt, render::mismatch(&report, fmt)))
}

async fn propose(State(state): State<Arc<AppState>>, headers: HeaderMap, body: Bytes) -> ApiResult {
    let rules = Ruleset::from_value(parse_json(&body)?).map_err(|e| ApiError::BadRequest(e.to_string()))?;
    let spec = rules.propose(&state.dataset, &state.cfg).map_err(|e| match e {
        DesignError::Rule { .. } | DesignError::Config(_) | DesignError::Spec(_) => ApiError::BadRequest(e.to_string()),
        other => ApiError::Internal(other.to_string()),
    })?;
    let fmt = negotiated(&headers);
    Ok(respond(fmt, render::spec(&spec, fmt)))
}

async fn not_found(method: Method, uri: Uri) -> Response {
    let msg = format!("no route for {method} {}", uri.path());
    (StatusCode::NOT_FOUND, Json(json!({ "error": msg }))).into_response()
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/health", get(health))
        .route("/api/stats", get(stats))
        .route("/api/correlation", get(correlation))
        .route("/api/guidelines", get(guidelines))
        .route("/api/mismatch", post(mismatch))
        .route("/api/propose", post(propose))
        .fallback(not_found)
        .with_state(state)
}

/// Serves until the process is stopped.
pub async fn serve(state: AppState, addr: SocketAddr) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(Arc::new(state))).await
}
