//! HTTP/JSON service. The same routes are mounted under `/api` and
//! `/api/v1`; every response is an envelope
//! `{"ok": true, "result": ...}` or `{"ok": false, "error": {...}}`.

use std::path::PathBuf;
use std::sync::Arc;
use std::time::{Duration, Instant};

use axum::body::Bytes;
use axum::extract::State;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use blockade_core::{BlockingInstance, Error, PointSet};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};
use tower_http::services::ServeDir;

use crate::ops;

pub const BUDGET_ENV: &str = "BLOCKADE_TIME_BUDGET_MS";
const DEFAULT_BUDGET_MS: u64 = 120_000;

#[derive(Debug, Clone)]
pub struct ServiceConfig {
    pub budget: Duration,
    pub static_dir: Option<PathBuf>,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        ServiceConfig { budget: Duration::from_millis(DEFAULT_BUDGET_MS), static_dir: None }
    }
}

/// Reads the per-request time budget from the environment.
pub fn budget_from_env() -> Duration {
    let ms = std::env::var(BUDGET_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_BUDGET_MS);
    Duration::from_millis(ms)
}

pub fn status_of(e: &Error) -> StatusCode {
    match e {
        Error::InvalidInput(_) | Error::Parse(_) => StatusCode::BAD_REQUEST,
        Error::Interrupted { .. } => StatusCode::SERVICE_UNAVAILABLE,
        _ => StatusCode::UNPROCESSABLE_ENTITY,
    }
}

pub fn error_body(e: &Error) -> Value {
    let detail = match e {
        Error::Interrupted { resume_tau } => json!({ "cursor": { "resume_tau": resume_tau } }),
        Error::ArrangementOverflow { cells, cap } => json!({ "cells": cells, "cap": cap }),
        Error::InvalidK(k) => json!({ "k": k }),
        _ => Value::Null,
    };
    json!({ "ok": false, "error": { "code": e.code(), "message": e.to_string(), "detail": detail } })
}

fn error_response(e: &Error) -> Response {
    (status_of(e), axum::Json(error_body(e))).into_response()
}

fn ok_response<T: Serialize>(out: &T) -> Response {
    match serde_json::to_value(out) {
        Ok(v) => (StatusCode::OK, axum::Json(json!({ "ok": true, "result": v }))).into_response(),
        Err(e) => {
            let body =
                json!({ "ok": false, "error": { "code": "Internal", "message": e.to_string(), "detail": null } });
            (StatusCode::INTERNAL_SERVER_ERROR, axum::Json(body)).into_response()
        }
    }
}

/// Parses the body, runs `f` on a blocking thread under the time budget and
/// wraps the outcome.
async fn run<Req, Out, F>(cfg: Arc<ServiceConfig>, body: Bytes, f: F) -> Response
where
    Req: DeserializeOwned + Send + 'static,
    Out: Serialize + Send + 'static,
    F: FnOnce(Req, Instant) -> blockade_core::Result<Out> + Send + 'static,
{
    let req: Req = match serde_json::from_slice(&body) {
        Ok(r) => r,
        Err(e) => return error_response(&Error::InvalidInput(format!("request does not match the schema: {e}"))),
    };
    let deadline = Instant::now() + cfg.budget;
    let task = tokio::task::spawn_blocking(move || f(req, deadline));
    match tokio::time::timeout(cfg.budget, task).await {
        Ok(Ok(Ok(out))) => ok_response(&out),
        Ok(Ok(Err(e))) => error_response(&e),
        Ok(Err(join)) => {
            let body =
                json!({ "ok": false, "error": { "code": "Internal", "message": join.to_string(), "detail": null } });
            (StatusCode::INTERNAL_SERVER_ERROR, axum::Json(body)).into_response()
        }
        Err(_) => {
            let body = json!({
                "ok": false,
                "error": {
                    "code": "Interrupted",
                    "message": format!("time budget of {} ms exhausted", cfg.budget.as_millis()),
                    "detail": { "cursor": null }
                }
            });
            (StatusCode::SERVICE_UNAVAILABLE, axum::Json(body)).into_response()
        }
    }
}

type Cfg = State<Arc<ServiceConfig>>;

async fn health() -> Response {
    axum::Json(json!({ "ok": true })).into_response()
}

async fn delaunay(State(cfg): Cfg, body: Bytes) -> Response {
    run(cfg, body, |set: PointSet, _| ops::delaunay(&set)).await
}

async fn blocks(State(cfg): Cfg, body: Bytes) -> Response {
    run(cfg, body, |inst: BlockingInstance, _| ops::blocking(&inst)).await
}

async fn construct(State(cfg): Cfg, body: Bytes) -> Response {
    run(cfg, body, |req: ops::ConstructRequest, d| ops::construct(&req, Some(d))).await
}

async fn certify_lb(State(cfg): Cfg, body: Bytes) -> Response {
    run(cfg, body, |req: ops::CertifyLbRequest, d| ops::certify_lb(&req, Some(d))).await
}

async fn certify_epsilon(State(cfg): Cfg, body: Bytes) -> Response {
    run(cfg, body, |req: ops::CertifyEpsilonRequest, d| ops::certify_epsilon(&req, Some(d))).await
}

async fn solve(State(cfg): Cfg, body: Bytes) -> Response {
    run(cfg, body, |req: ops::SolveRequest, _| ops::solve(&req)).await
}

fn api_routes() -> Router<Arc<ServiceConfig>> {
    Router::new()
        .route("/health", get(health))
        .route("/delaunay", post(delaunay))
        .route("/blocks", post(blocks))
        .route("/construct", post(construct))
        .route("/certify-lb", post(certify_lb))
        .route("/certify-epsilon", post(certify_epsilon))
        .route("/solve", post(solve))
}

pub fn router(cfg: ServiceConfig) -> Router {
    let static_dir = cfg.static_dir.clone();
    let app = Router::new().nest("/api/v1", api_routes()).nest("/api", api_routes());
    let app = match static_dir {
        Some(dir) => app.fallback_service(ServeDir::new(dir)),
        None => app,
    };
    app.with_state(Arc::new(cfg))
}

pub async fn serve(port: u16, cfg: ServiceConfig) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(("0.0.0.0", port)).await?;
    axum::serve(listener, router(cfg)).await
}
