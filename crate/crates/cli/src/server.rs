//! Stateless HTTP JSON service. Every request carries the whole puzzle.

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::rejection::{BytesRejection, QueryRejection};
use axum::extract::{DefaultBodyLimit, Query, State};
use axum::http::StatusCode;
use axum::response::{Html, IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::de::DeserializeOwned;
use serde::Serialize;
use tower_http::services::ServeDir;

use purgatory_core::gen::gen_puzzle;
use purgatory_core::reduction::reduce_with;
use purgatory_core::solver::{check_path, solve, verify_certificate};
use purgatory_core::{Certificate, DirectedGraph, PathInstance, Position, Puzzle, SublistConstants};

use crate::api::*;

pub const DEFAULT_MAX_N: usize = 1_000_000;
const BODY_LIMIT: usize = 64 * 1024 * 1024;

#[derive(Debug, Clone)]
pub struct ServerConfig {
    /// Largest puzzle (or graph) accepted; bigger requests get 413.
    pub max_n: usize,
    pub static_dir: Option<PathBuf>,
}

impl Default for ServerConfig {
    fn default() -> Self {
        ServerConfig { max_n: DEFAULT_MAX_N, static_dir: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApiError {
    pub status: StatusCode,
    pub message: String,
}

impl ApiError {
    fn bad_request(message: impl ToString) -> Self {
        ApiError { status: StatusCode::BAD_REQUEST, message: message.to_string() }
    }

    fn too_large(n: usize, max: usize) -> Self {
        ApiError { status: StatusCode::PAYLOAD_TOO_LARGE, message: format!("n = {n} exceeds the limit of {max}") }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(ErrorBody { error: self.message })).into_response()
    }
}

type ApiResult<T> = Result<Json<T>, ApiError>;

fn parse_body<T: DeserializeOwned>(body: Result<Bytes, BytesRejection>) -> Result<T, ApiError> {
    let body = body.map_err(|e| ApiError { status: e.status(), message: e.body_text() })?;
    serde_json::from_slice(&body).map_err(ApiError::bad_request)
}

fn load_puzzle(values: &[i64], config: &ServerConfig) -> Result<Puzzle, ApiError> {
    if values.len() > config.max_n {
        return Err(ApiError::too_large(values.len(), config.max_n));
    }
    Puzzle::from_signed(values).map_err(ApiError::bad_request)
}

pub fn puzzle(q: PuzzleQuery, config: &ServerConfig) -> Result<PuzzleResponse, ApiError> {
    if q.n > config.max_n {
        return Err(ApiError::too_large(q.n, config.max_n));
    }
    let p = gen_puzzle(q.n, q.solvable, q.seed).map_err(ApiError::bad_request)?;
    Ok(PuzzleResponse { n: p.n(), values: p.into_values(), seed: q.seed })
}

pub fn solve_values(req: ValuesRequest, config: &ServerConfig) -> Result<SolveResponse, ApiError> {
    let p = load_puzzle(&req.values, config)?;
    Ok(SolveResponse::from(&solve(&p)))
}

pub fn moves(req: MovesRequest, config: &ServerConfig) -> Result<MovesResponse, ApiError> {
    let p = load_puzzle(&req.values, config)?;
    let pos = p.position(req.position).map_err(ApiError::bad_request)?;
    let moves = p.legal_moves(pos).map_err(ApiError::bad_request)?;
    Ok(MovesResponse {
        win: moves.iter().any(|m| p.is_win(m.to)),
        moves: moves.iter().map(MoveBody::from).collect(),
    })
}

pub fn verify(req: VerifyRequest, config: &ServerConfig) -> Result<VerifyResponse, ApiError> {
    let p = load_puzzle(&req.values, config)?;
    match (req.path, req.certificate) {
        (Some(path), None) => {
            let path = path
                .into_iter()
                .map(Position::try_from)
                .collect::<Result<Vec<_>, _>>()
                .map_err(ApiError::bad_request)?;
            let verdict = check_path(&p, &path);
            Ok(VerifyResponse { valid: verdict.is_ok(), reason: verdict.err().map(|r| r.code()) })
        }
        (None, Some(cert)) => {
            let cert: Certificate = cert.parse().map_err(ApiError::bad_request)?;
            let valid = verify_certificate(|j| p.values()[j - 1], p.n(), cert.steps().iter().copied());
            Ok(VerifyResponse { valid, reason: (!valid).then(|| "Rejected".to_string()) })
        }
        _ => Err(ApiError::bad_request("give exactly one of `path` and `certificate`")),
    }
}

pub fn reduce(req: ReduceRequest, config: &ServerConfig) -> Result<ReduceResponse, ApiError> {
    if req.n > config.max_n {
        return Err(ApiError::too_large(req.n, config.max_n));
    }
    let graph =
        DirectedGraph::from_edges(req.n, req.edges.iter().map(|e| (e[0], e[1]))).map_err(ApiError::bad_request)?;
    let inst = PathInstance::new(graph, req.s, req.t).map_err(ApiError::bad_request)?;
    let constants = if req.paper_constants { SublistConstants::Paper } else { SublistConstants::Corrected };
    let red = reduce_with(&inst, constants);
    if red.puzzle.n() > config.max_n {
        return Err(ApiError::too_large(red.puzzle.n(), config.max_n));
    }
    Ok(ReduceResponse { values: red.puzzle.into_values(), trace: red.trace })
}

type Shared = State<Arc<ServerConfig>>;

fn post_handler<Req, Resp>(
    f: fn(Req, &ServerConfig) -> Result<Resp, ApiError>,
) -> impl Fn(Shared, Result<Bytes, BytesRejection>) -> std::future::Ready<ApiResult<Resp>> + Clone
where
    Req: DeserializeOwned,
    Resp: Serialize,
{
    move |State(config), body| std::future::ready(parse_body(body).and_then(|req| f(req, &config)).map(Json))
}

async fn health() -> Json<serde_json::Value> {
    Json(serde_json::json!({ "status": "ok" }))
}

async fn get_puzzle(State(config): Shared, q: Result<Query<PuzzleQuery>, QueryRejection>) -> ApiResult<PuzzleResponse> {
    let Query(q) = q.map_err(|e| ApiError::bad_request(e.body_text()))?;
    puzzle(q, &config).map(Json)
}

async fn index() -> Html<&'static str> {
    Html(concat!(
        "<!doctype html><title>purgatory</title><h1>purgatory service</h1>",
        "<p>No player assets configured; start with <code>--static-dir</code>.</p>",
        "<ul><li>GET /api/health</li><li>GET /api/puzzle?n=&amp;solvable=&amp;seed=</li>",
        "<li>POST /api/solve</li><li>POST /api/moves</li><li>POST /api/verify</li><li>POST /api/reduce</li></ul>"
    ))
}

pub fn router(config: ServerConfig) -> Router {
    let static_dir = config.static_dir.clone();
    let api = Router::new()
        .route("/api/health", get(health))
        .route("/api/puzzle", get(get_puzzle))
        .route("/api/solve", post(post_handler(solve_values)))
        .route("/api/moves", post(post_handler(moves)))
        .route("/api/verify", post(post_handler(verify)))
        .route("/api/reduce", post(post_handler(reduce)))
        .layer(DefaultBodyLimit::max(BODY_LIMIT))
        .with_state(Arc::new(config));
    match static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api.route("/", get(index)),
    }
}

pub async fn serve(addr: SocketAddr, config: ServerConfig) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(config)).await
}
