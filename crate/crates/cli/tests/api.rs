use std::time::Duration;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use blockade_cli::api::{router, ServiceConfig};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

async fn call_with(cfg: ServiceConfig, method: &str, path: &str, body: &str) -> (StatusCode, Vec<u8>) {
    let req = Request::builder()
        .method(method)
        .uri(path)
        .header("content-type", "application/json")
        .body(Body::from(body.to_string()))
        .unwrap();
    let resp = router(cfg).oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes().to_vec();
    (status, bytes)
}

async fn call(method: &str, path: &str, body: &str) -> (StatusCode, Value) {
    let (s, b) = call_with(ServiceConfig::default(), method, path, body).await;
    (s, serde_json::from_slice(&b).unwrap())
}

const STRADDLE: &str = r#"{"P":{"points":[{"x":"0/1","y":"0/1"},{"x":"1/1","y":"0/1"}]},
    "Q":{"points":[{"x":"1/2","y":"1/10"},{"x":"1/2","y":"-1/10"}]}}"#;

#[tokio::test]
async fn health() {
    let (s, v) = call("GET", "/api/health", "").await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v, json!({"ok": true}));
    let (s, _) = call("GET", "/api/v1/health", "").await;
    assert_eq!(s, StatusCode::OK);
}

#[tokio::test]
async fn construct_p0() {
    let (s, v) = call("POST", "/api/construct", r#"{"kind":"p0","k":1}"#).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["ok"], true);
    let pts = v["result"]["points"].as_array().unwrap();
    assert_eq!(pts.len(), 4);
    assert_eq!(pts[0], json!({"x": "9/1", "y": "0/1", "label": "ell_1"}));
}

#[tokio::test]
async fn straddling_pair_is_blocked() {
    let (s, v) = call("POST", "/api/blocks", STRADDLE).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v, json!({"ok": true, "result": {"verdict": "blocked"}}));
}

#[tokio::test]
async fn delaunay_edges_with_intervals() {
    let body = r#"{"points":[{"x":"0","y":"0"},{"x":"2","y":"0"},{"x":"1","y":"3"}]}"#;
    let (s, v) = call("POST", "/api/v1/delaunay", body).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["result"]["edges"], json!([[0, 1], [0, 2], [1, 2]]));
    assert_eq!(v["result"]["intervals"].as_array().unwrap().len(), 3);
    assert_eq!(v["result"]["intervals"][0]["lo"], "-inf");
}

#[tokio::test]
async fn certify_lb_and_epsilon() {
    let (s, v) = call("POST", "/api/certify-lb", r#"{"construction":"collinear","k":2}"#).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["result"]["bound"], 7);
    let (s, v) = call("POST", "/api/certify-epsilon", r#"{"k":2,"emit_polys":true}"#).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["result"]["tau_star"], "1/16384");
    assert_eq!(v["result"]["polys"].as_array().unwrap().len(), 126);
}

#[tokio::test]
async fn solve_pentagon() {
    let pts: Vec<Value> = (0..5)
        .map(|i| {
            let a = std::f64::consts::PI / 2.0 + 2.0 * std::f64::consts::PI * i as f64 / 5.0;
            json!({"x": format!("{}/1000", (a.cos() * 1000.0).round()), "y": format!("{}/1000", (a.sin() * 1000.0).round())})
        })
        .collect();
    let body = json!({"P": {"points": pts}, "config": {"exterior_only": true}}).to_string();
    let (s, v) = call("POST", "/api/solve", &body).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["result"]["verified"], true);
    assert!(v["result"]["size"].as_u64().unwrap() >= 5);
}

#[tokio::test]
async fn schema_violation_is_400() {
    let (s, v) = call("POST", "/api/blocks", r#"{"P":{"points":[{"x":"1/0","y":"0"}]}}"#).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
    assert_eq!(v["ok"], false);
    assert_eq!(v["error"]["code"], "InvalidInput");
    let (s, _) = call("POST", "/api/construct", "not json").await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn domain_failure_is_422() {
    let (s, v) = call("POST", "/api/construct", r#"{"kind":"p0","k":0}"#).await;
    assert_eq!(s, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(v["error"]["code"], "InvalidK");
    let dup = r#"{"points":[{"x":"1","y":"1"},{"x":"1/1","y":"2/2"}]}"#;
    let (s, v) = call("POST", "/api/delaunay", dup).await;
    assert_eq!(s, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(v["error"]["code"], "IdenticalPoints");
}

#[tokio::test]
async fn time_budget_gives_503_with_cursor() {
    let cfg = ServiceConfig { budget: Duration::from_millis(0), static_dir: None };
    let (s, b) = call_with(cfg, "POST", "/api/certify-epsilon", r#"{"k":4}"#).await;
    let v: Value = serde_json::from_slice(&b).unwrap();
    assert_eq!(s, StatusCode::SERVICE_UNAVAILABLE);
    assert_eq!(v["error"]["code"], "Interrupted");
    assert!(v["error"]["detail"].get("cursor").is_some());
}

#[tokio::test]
async fn resume_from_cursor() {
    let (s, v) = call("POST", "/api/certify-epsilon", r#"{"k":2,"resume_tau":"1/1024"}"#).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["result"]["tau_star"], "1/16384");
}

#[tokio::test]
async fn responses_are_byte_identical() {
    for (path, body) in [
        ("/api/blocks", STRADDLE),
        ("/api/construct", r#"{"kind":"alt3k","k":3}"#),
        ("/api/certify-lb", r#"{"construction":"alt3k","k":2,"explain":true}"#),
        ("/api/solve", r#"{"P":{"points":[{"x":"0","y":"0"},{"x":"3","y":"1"},{"x":"1","y":"4"}]}}"#),
    ] {
        let a = call_with(ServiceConfig::default(), "POST", path, body).await;
        let b = call_with(ServiceConfig::default(), "POST", path, body).await;
        assert_eq!(a, b, "{path}");
    }
}

#[tokio::test]
async fn static_files_are_served() {
    let dir = std::env::temp_dir().join(format!("blockade-static-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("index.html"), "<html>ui</html>").unwrap();
    let cfg = ServiceConfig { static_dir: Some(dir.clone()), ..ServiceConfig::default() };
    let (s, b) = call_with(cfg, "GET", "/index.html", "").await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(b, b"<html>ui</html>");
    std::fs::remove_dir_all(dir).unwrap();
}
