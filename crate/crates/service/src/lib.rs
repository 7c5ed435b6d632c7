//! HTTP JSON API over the sentiment engine.
//!
//! Routes:
//! - `POST /api/v1/analyze` with `{"text": ..., "methods"?: [...], "ensemble"?: name, "strategy"?: ...}`
//! - `GET /api/v1/methods`
//! - everything else is served from the optional static directory.

mod config;

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use axum::body::Bytes;
use axum::extract::State;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use sentimeter_core::{Engine, EnsembleConfig, MethodId, MethodInfo, Strategy, Verdict};
use serde::{Deserialize, Serialize};
use tokio::net::TcpListener;
use tower_http::services::ServeDir;

pub use config::{ServiceConfig, DEFAULT_LISTEN, DEFAULT_MAX_TEXT_LENGTH};

pub const API_VERSION: &str = "1";

/// Name of the ensemble used when a request does not pick one.
pub const DEFAULT_ENSEMBLE: &str = "default";

#[derive(Debug, thiserror::Error)]
pub enum ServiceError {
    #[error("invalid service configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] sentimeter_core::Error),
    #[error("server error: {0}")]
    Io(#[from] std::io::Error),
}

/// Shared, read-only request state.
#[derive(Debug, Clone)]
pub struct AppState {
    pub engine: Engine,
    pub ensembles: BTreeMap<String, EnsembleConfig>,
    pub max_text_length: usize,
}

impl AppState {
    /// The reference ensemble is registered as `default` and `reference`.
    pub fn new(engine: Engine, max_text_length: usize) -> Self {
        let reference = EnsembleConfig::reference(Strategy::WeightedVote);
        AppState {
            engine,
            ensembles: BTreeMap::from([
                (DEFAULT_ENSEMBLE.to_string(), reference.clone()),
                ("reference".to_string(), reference),
            ]),
            max_text_length,
        }
    }

    pub fn from_config(cfg: &ServiceConfig) -> Result<Self, ServiceError> {
        let engine = Engine::from_dir_or_env(cfg.lexicon_dir.as_deref())?;
        let mut state = AppState::new(engine, cfg.max_text_length);
        if let Some(path) = &cfg.ensemble_config {
            state.ensembles.insert(DEFAULT_ENSEMBLE.to_string(), EnsembleConfig::load(path)?);
        }
        for (name, path) in &cfg.ensembles {
            state.ensembles.insert(name.clone(), EnsembleConfig::load(path)?);
        }
        Ok(state)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnalyzeRequest {
    pub text: String,
    #[serde(default)]
    pub methods: Option<Vec<String>>,
    #[serde(default)]
    pub ensemble: Option<String>,
    #[serde(default)]
    pub strategy: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeResponse {
    pub api_version: String,
    pub verdicts: Vec<Verdict>,
    pub combined: Verdict,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub code: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorResponse {
    pub error: ErrorBody,
}

struct ApiError {
    status: StatusCode,
    code: &'static str,
    message: String,
}

impl ApiError {
    fn new(status: StatusCode, code: &'static str, message: impl Into<String>) -> Self {
        ApiError {
            status,
            code,
            message: message.into(),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = ErrorResponse {
            error: ErrorBody {
                code: self.code.to_string(),
                message: self.message,
            },
        };
        (self.status, Json(body)).into_response()
    }
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/api/v1/analyze", post(analyze))
        .route("/api/v1/methods", get(methods))
        .with_state(state)
}

/// The API plus a static file mount for the UI bundle.
pub fn app(state: Arc<AppState>, static_dir: Option<&std::path::Path>) -> Router {
    let api = router(state);
    match static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    }
}

async fn methods(State(state): State<Arc<AppState>>) -> Json<Vec<MethodInfo>> {
    Json(state.engine.methods())
}

async fn analyze(State(state): State<Arc<AppState>>, body: Bytes) -> Result<Json<AnalyzeResponse>, ApiError> {
    let started = Instant::now();
    let request: AnalyzeRequest = serde_json::from_slice(&body)
        .map_err(|e| ApiError::new(StatusCode::BAD_REQUEST, "invalid_request", e.to_string()))?;
    if request.text.trim().is_empty() {
        return Err(ApiError::new(StatusCode::BAD_REQUEST, "empty_text", "text is empty"));
    }
    let length = request.text.chars().count();
    if length > state.max_text_length {
        return Err(ApiError::new(
            StatusCode::BAD_REQUEST,
            "text_too_long",
            format!("text has {length} characters, the limit is {}", state.max_text_length),
        ));
    }

    let methods: Vec<MethodId> = match &request.methods {
        None => MethodId::ALL.to_vec(),
        Some(names) => names
            .iter()
            .map(|n| n.parse::<MethodId>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| ApiError::new(StatusCode::NOT_FOUND, "unknown_method", e.to_string()))?,
    };
    let name = request.ensemble.as_deref().unwrap_or(DEFAULT_ENSEMBLE);
    let mut ensemble = state
        .ensembles
        .get(name)
        .cloned()
        .ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, "unknown_ensemble", format!("no ensemble named {name:?}")))?;
    if let Some(strategy) = &request.strategy {
        let strategy: Strategy = strategy
            .parse()
            .map_err(|e: sentimeter_core::Error| ApiError::new(StatusCode::BAD_REQUEST, "invalid_strategy", e.to_string()))?;
        ensemble = ensemble.with_strategy(strategy);
    }

    let internal = |e: sentimeter_core::Error| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", e.to_string());
    let verdicts = state
        .engine
        .analyze(&request.text, &methods, &ensemble)
        .map_err(internal)?;
    let combined = match verdicts.iter().find(|v| v.method == MethodId::Combined) {
        Some(v) => v.clone(),
        None => state.engine.combine(&request.text, &ensemble).map_err(internal)?,
    };
    Ok(Json(AnalyzeResponse {
        api_version: API_VERSION.to_string(),
        verdicts,
        combined,
        elapsed_ms: started.elapsed().as_secs_f64() * 1000.0,
    }))
}

/// Serves on an already bound listener until the task is dropped.
pub async fn serve_on(listener: TcpListener, app: Router) -> Result<(), ServiceError> {
    axum::serve(listener, app).await?;
    Ok(())
}

/// Binds the configured address and serves forever.
pub async fn serve(cfg: ServiceConfig) -> Result<(), ServiceError> {
    let state = Arc::new(AppState::from_config(&cfg)?);
    let listener = TcpListener::bind(cfg.listen).await?;
    tracing::info!(addr = %listener.local_addr()?, "listening");
    serve_on(listener, app(state, cfg.static_dir.as_deref())).await
}
