use std::sync::Arc;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use http_body_util::BodyExt;
use sentimeter_core::{Engine, MethodId, Polarity};
use sentimeter_service::{app, router, AnalyzeResponse, AppState, ErrorResponse, API_VERSION};
use serde_json::{json, Value};
use tower::ServiceExt;

fn state() -> Arc<AppState> {
    Arc::new(AppState::new(Engine::bundled(), 200))
}

async fn call(app: axum::Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Vec<u8>) {
    let req = Request::builder().method(method).uri(uri).header("content-type", "application/json");
    let req = match body {
        Some(b) => req.body(Body::from(b.to_string())).unwrap(),
        None => req.body(Body::empty()).unwrap(),
    };
    let resp = app.oneshot(req).await.unwrap();
    let status = resp.status();
    (status, resp.into_body().collect().await.unwrap().to_bytes().to_vec())
}

async fn analyze(body: Value) -> (StatusCode, Vec<u8>) {
    call(router(state()), "POST", "/api/v1/analyze", Some(body)).await
}

fn error_code(bytes: &[u8]) -> String {
    serde_json::from_slice::<ErrorResponse>(bytes).unwrap().error.code
}

#[tokio::test]
async fn smiley_is_positive() {
    let (status, body) = analyze(json!({"text": ":)"})).await;
    assert_eq!(status, StatusCode::OK);
    let resp: AnalyzeResponse = serde_json::from_slice(&body).unwrap();
    assert_eq!(resp.api_version, API_VERSION);
    assert_eq!(resp.verdicts.len(), MethodId::ALL.len());
    let emo = resp.verdicts.iter().find(|v| v.method == MethodId::Emoticons).unwrap();
    assert_eq!(emo.polarity, Polarity::Positive);
    assert_eq!(resp.combined.method, MethodId::Combined);
    assert_eq!(resp.combined.polarity, Polarity::Positive);
}

#[tokio::test]
async fn sad_sample_text() {
    let (status, body) = analyze(json!({"text": "I'm feeling too sad today :("})).await;
    assert_eq!(status, StatusCode::OK);
    let resp: AnalyzeResponse = serde_json::from_slice(&body).unwrap();
    let polarity = |m: MethodId| resp.verdicts.iter().find(|v| v.method == m).unwrap().polarity;
    assert_eq!(polarity(MethodId::Emoticons), Polarity::Negative);
    assert_eq!(polarity(MethodId::PanasT), Polarity::Negative);
}

#[tokio::test]
async fn input_errors() {
    let (status, body) = analyze(json!({"text": ""})).await;
    assert_eq!((status, error_code(&body).as_str()), (StatusCode::BAD_REQUEST, "empty_text"));

    let (status, body) = analyze(json!({"text": "é".repeat(201)})).await;
    assert_eq!((status, error_code(&body).as_str()), (StatusCode::BAD_REQUEST, "text_too_long"));
    // The limit counts characters, not bytes.
    let (status, _) = analyze(json!({"text": "é".repeat(200)})).await;
    assert_eq!(status, StatusCode::OK);

    let (status, body) = analyze(json!({"text": "hi", "methods": ["poms"]})).await;
    assert_eq!((status, error_code(&body).as_str()), (StatusCode::NOT_FOUND, "unknown_method"));

    let (status, body) = analyze(json!({"text": "hi", "ensemble": "nope"})).await;
    assert_eq!((status, error_code(&body).as_str()), (StatusCode::NOT_FOUND, "unknown_ensemble"));

    let (status, body) = analyze(json!({"text": "hi", "strategy": "coin-flip"})).await;
    assert_eq!((status, error_code(&body).as_str()), (StatusCode::BAD_REQUEST, "invalid_strategy"));

    let (status, body) = call(router(state()), "POST", "/api/v1/analyze", Some(json!([1, 2]))).await;
    assert_eq!((status, error_code(&body).as_str()), (StatusCode::BAD_REQUEST, "invalid_request"));
}

#[tokio::test]
async fn method_subset_and_strategy() {
    let (status, body) = analyze(json!({"text": "good :(", "methods": ["emoticons", "sentistrength"], "strategy": "cascade"})).await;
    assert_eq!(status, StatusCode::OK);
    let resp: AnalyzeResponse = serde_json::from_slice(&body).unwrap();
    let ids: Vec<MethodId> = resp.verdicts.iter().map(|v| v.method).collect();
    assert_eq!(ids, vec![MethodId::Emoticons, MethodId::SentiStrength]);
    // Emoticons carries the top weight, so the cascade follows it.
    assert_eq!(resp.combined.polarity, Polarity::Negative);
}

#[tokio::test]
async fn methods_listing_is_stable() {
    let (status, first) = call(router(state()), "GET", "/api/v1/methods", None).await;
    assert_eq!(status, StatusCode::OK);
    let (_, second) = call(router(state()), "GET", "/api/v1/methods", None).await;
    assert_eq!(first, second);
    let list: Vec<Value> = serde_json::from_slice(&first).unwrap();
    let emo = list.iter().find(|m| m["id"] == "emoticons").unwrap();
    assert_eq!(emo["lexicon_loaded"], true);
    assert!(emo["description"].as_str().unwrap().len() > 5);
}

#[tokio::test]
async fn missing_lexicon_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("emoticons.tsv"), ":)\tpositive\n:(\tnegative\n").unwrap();
    let state = Arc::new(AppState::new(Engine::from_dir(dir.path()).unwrap(), 200));
    let (_, body) = call(router(state), "GET", "/api/v1/methods", None).await;
    let list: Vec<Value> = serde_json::from_slice(&body).unwrap();
    let loaded = |id: &str| list.iter().find(|m| m["id"] == id).unwrap()["lexicon_loaded"].clone();
    assert_eq!(loaded("emoticons"), true);
    assert_eq!(loaded("sasa"), false);
}

#[tokio::test]
async fn static_mount_serves_files() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("index.html"), "<h1>ui</h1>").unwrap();
    let (status, body) = call(app(state(), Some(dir.path())), "GET", "/index.html", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body, b"<h1>ui</h1>");
    let (status, _) = call(app(state(), None), "GET", "/index.html", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
}
