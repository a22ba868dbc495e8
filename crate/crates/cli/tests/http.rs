use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use purgatory_cli::api::SolveResponse;
use purgatory_cli::server::{router, ServerConfig};
use purgatory_core::gen::gen_puzzle;
use purgatory_core::solver::solve;
use purgatory_core::{Position, Puzzle};

const PAPER: [u64; 9] = [3, 2, 2, 1, 4, 2, 1, 2, 3];

fn app() -> Router {
    router(ServerConfig::default())
}

async fn send(app: Router, req: Request<Body>) -> (StatusCode, Value) {
    let resp = app.oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    let value = serde_json::from_slice(&bytes).unwrap_or_else(|_| Value::String(String::from_utf8_lossy(&bytes).into()));
    (status, value)
}

async fn get(app: Router, uri: &str) -> (StatusCode, Value) {
    send(app, Request::get(uri).body(Body::empty()).unwrap()).await
}

async fn post(app: Router, uri: &str, body: Value) -> (StatusCode, Value) {
    let req = Request::post(uri)
        .header("content-type", "application/json")
        .body(Body::from(body.to_string()))
        .unwrap();
    send(app, req).await
}

#[tokio::test]
async fn health() {
    assert_eq!(get(app(), "/api/health").await, (StatusCode::OK, json!({"status": "ok"})));
}

#[tokio::test]
async fn solve_worked_example() {
    let (status, body) = post(app(), "/api/solve", json!({"values": PAPER})).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body, json!({"solvable": true, "path": [1, 4, 5, 9, 6, 8, 10], "certificate": "FFFBFF"}));

    let (_, body) = post(app(), "/api/solve", json!({"values": [2]})).await;
    assert_eq!(body, json!({"solvable": false, "path": null, "certificate": null}));
}

#[tokio::test]
async fn solve_matches_cli_json() {
    // the CLI prints serde_json of the same type; compare the exact bytes
    let p = Puzzle::new(PAPER.to_vec()).unwrap();
    let cli_bytes = serde_json::to_string(&SolveResponse::from(&solve(&p))).unwrap();
    let req = Request::post("/api/solve").body(Body::from(json!({"values": PAPER}).to_string())).unwrap();
    let resp = app().oneshot(req).await.unwrap();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    assert_eq!(bytes, cli_bytes.as_bytes());
}

#[tokio::test]
async fn generated_puzzle_is_solvable() {
    let (status, body) = get(app(), "/api/puzzle?n=53&solvable=true&seed=7").await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["n"], 53);
    assert_eq!(body["seed"], 7);
    assert_eq!(body["values"].as_array().unwrap().len(), 53);
    let (_, solved) = post(app(), "/api/solve", json!({"values": body["values"]})).await;
    assert_eq!(solved["solvable"], true);

    let (_, body) = get(app(), "/api/puzzle?n=2&solvable=false&seed=1").await;
    assert_eq!(body["values"], json!([1, 2]));
}

#[tokio::test]
async fn puzzle_query_errors() {
    assert_eq!(get(app(), "/api/puzzle").await.0, StatusCode::BAD_REQUEST);
    assert_eq!(get(app(), "/api/puzzle?n=abc").await.0, StatusCode::BAD_REQUEST);
    let (status, body) = get(app(), "/api/puzzle?n=1&solvable=false").await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert!(body["error"].is_string());
    assert_eq!(get(app(), "/api/puzzle?n=1000001").await.0, StatusCode::PAYLOAD_TOO_LARGE);
}

#[tokio::test]
async fn moves_endpoint() {
    let (status, body) = post(app(), "/api/moves", json!({"values": PAPER, "position": 4})).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body, json!({"moves": [{"dir": "B", "to": 3}, {"dir": "F", "to": 5}], "win": false}));

    let (_, body) = post(app(), "/api/moves", json!({"values": PAPER, "position": 8})).await;
    assert_eq!(body, json!({"moves": [{"dir": "B", "to": 6}, {"dir": "F", "to": 10}], "win": true}));

    let (status, body) = post(app(), "/api/moves", json!({"values": PAPER, "position": 10})).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert!(body["error"].as_str().unwrap().contains("goal"));
    assert_eq!(post(app(), "/api/moves", json!({"values": PAPER, "position": 0})).await.0, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn moves_agree_with_core_semantics() {
    for seed in 0..50 {
        let p = gen_puzzle(12, seed % 2 == 0, seed).unwrap();
        for j in 1..=p.n() {
            let (_, body) = post(app(), "/api/moves", json!({"values": p.values(), "position": j})).await;
            let expected: Vec<Value> = p
                .legal_moves(Position::new(j))
                .unwrap()
                .iter()
                .map(|m| json!({"dir": m.direction.as_char().to_string(), "to": m.to.get()}))
                .collect();
            assert_eq!(body["moves"], Value::Array(expected));
        }
    }
}

#[tokio::test]
async fn verify_endpoint() {
    let ok = post(app(), "/api/verify", json!({"values": PAPER, "path": [1, 4, 5, 9, 6, 8, 10]})).await;
    assert_eq!(ok, (StatusCode::OK, json!({"valid": true, "reason": null})));
    let (_, body) = post(app(), "/api/verify", json!({"values": PAPER, "path": [1, 4, 5]})).await;
    assert_eq!(body, json!({"valid": false, "reason": "NotAtGoal"}));
    let (_, body) = post(app(), "/api/verify", json!({"values": PAPER, "path": [1, 4, 6]})).await;
    assert_eq!(body["reason"], "IllegalStep(2)");
    let (_, body) = post(app(), "/api/verify", json!({"values": PAPER, "certificate": "FFFBFF"})).await;
    assert_eq!(body["valid"], true);
    let both = json!({"values": PAPER, "path": [1], "certificate": "F"});
    assert_eq!(post(app(), "/api/verify", both).await.0, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn reduce_endpoint() {
    let (status, body) = post(app(), "/api/reduce", json!({"n": 2, "edges": [[1, 2]], "s": 1, "t": 2})).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["values"], json!([9, 11, 14, 14, 14, 14, 14, 14, 7, 1, 14, 14]));
    assert_eq!(body["trace"]["n"], 2);
    assert_eq!(body["trace"]["sublist_center"], json!([10]));

    let paper = json!({"n": 2, "edges": [[1, 2]], "s": 1, "t": 2, "paper_constants": true});
    let (_, body) = post(app(), "/api/reduce", paper).await;
    assert_eq!(body["values"][8], 6);

    let bad = json!({"n": 2, "edges": [[1, 3]], "s": 1, "t": 2});
    assert_eq!(post(app(), "/api/reduce", bad).await.0, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn malformed_bodies() {
    let req = Request::post("/api/solve").body(Body::from("{not json")).unwrap();
    let (status, body) = send(app(), req).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert!(body["error"].is_string());

    let (status, body) = post(app(), "/api/solve", json!({"values": [3, 0, 2]})).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert!(body["error"].as_str().unwrap().contains("position 2"));
    assert_eq!(post(app(), "/api/solve", json!({"values": []})).await.0, StatusCode::BAD_REQUEST);
    assert_eq!(post(app(), "/api/solve", json!({"values": [-1]})).await.0, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn size_cap() {
    let small = router(ServerConfig { max_n: 5, static_dir: None });
    let (status, body) = post(small.clone(), "/api/solve", json!({"values": PAPER})).await;
    assert_eq!(status, StatusCode::PAYLOAD_TOO_LARGE);
    assert!(body["error"].is_string());
    let graph = json!({"n": 2, "edges": [[1, 2]], "s": 1, "t": 2});
    assert_eq!(post(small, "/api/reduce", graph).await.0, StatusCode::PAYLOAD_TOO_LARGE);
}

#[tokio::test]
async fn static_assets() {
    let (status, body) = get(app(), "/").await;
    assert_eq!(status, StatusCode::OK);
    assert!(body.as_str().unwrap().contains("/api/solve"));

    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("index.html"), "<p>player</p>").unwrap();
    let app = router(ServerConfig { static_dir: Some(dir.path().to_owned()), ..Default::default() });
    let (status, body) = get(app.clone(), "/").await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body, Value::String("<p>player</p>".into()));
    assert_eq!(get(app, "/api/health").await.0, StatusCode::OK);
}
