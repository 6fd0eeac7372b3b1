#![allow(dead_code)]

use std::sync::Arc;

use axum::body::Body;
use axum::http::{Method, Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use netrepo_service::{router, AppState, Catalog, ServiceConfig};
use tempfile::TempDir;
use tower::ServiceExt;

pub fn catalog() -> (TempDir, Catalog) {
    let dir = tempfile::tempdir().unwrap();
    let catalog = Catalog::open(ServiceConfig::new(dir.path())).unwrap();
    (dir, catalog)
}

pub fn app_with(config: ServiceConfig) -> (Router, Arc<Catalog>) {
    let catalog = Arc::new(Catalog::open(config).unwrap());
    (router(AppState::new(catalog.clone())), catalog)
}

pub struct Reply {
    pub status: StatusCode,
    pub content_type: String,
    pub body: Vec<u8>,
}

impl Reply {
    pub fn json(&self) -> serde_json::Value {
        serde_json::from_slice(&self.body).unwrap_or_else(|e| {
            panic!("{e}: {}", String::from_utf8_lossy(&self.body))
        })
    }

    pub fn text(&self) -> String {
        String::from_utf8(self.body.clone()).unwrap()
    }
}

pub async fn send(app: &Router, method: Method, uri: &str, content_type: &str, body: Vec<u8>) -> Reply {
    let mut req = Request::builder().method(method).uri(uri);
    if !content_type.is_empty() {
        req = req.header("content-type", content_type);
    }
    let resp = app.clone().oneshot(req.body(Body::from(body)).unwrap()).await.unwrap();
    let status = resp.status();
    let content_type = resp
        .headers()
        .get("content-type")
        .map(|v| v.to_str().unwrap().to_string())
        .unwrap_or_default();
    let body = resp.into_body().collect().await.unwrap().to_bytes().to_vec();
    Reply { status, content_type, body }
}

pub async fn get(app: &Router, uri: &str) -> Reply {
    send(app, Method::GET, uri, "", Vec::new()).await
}

pub async fn post_json(app: &Router, uri: &str, body: serde_json::Value) -> Reply {
    send(app, Method::POST, uri, "application/json", body.to_string().into_bytes()).await
}

pub const BOUNDARY: &str = "netrepo-test-boundary";

pub fn multipart(fields: &[(&str, &str)], file: &str) -> Vec<u8> {
    let mut out = String::new();
    for (name, value) in fields {
        out.push_str(&format!(
            "--{BOUNDARY}\r\nContent-Disposition: form-data; name=\"{name}\"\r\n\r\n{value}\r\n"
        ));
    }
    out.push_str(&format!(
        "--{BOUNDARY}\r\nContent-Disposition: form-data; name=\"file\"; filename=\"graph.txt\"\r\nContent-Type: text/plain\r\n\r\n{file}\r\n--{BOUNDARY}--\r\n"
    ));
    out.into_bytes()
}

pub async fn upload(app: &Router, name: &str, text: &str) -> Reply {
    send(
        app,
        Method::POST,
        "/graphs",
        &format!("multipart/form-data; boundary={BOUNDARY}"),
        multipart(&[("name", name)], text),
    )
    .await
}

pub fn clique_text(n: u32) -> String {
    let mut s = format!("#nodes {n}\n");
    for u in 0..n {
        for v in u + 1..n {
            s.push_str(&format!("{u} {v}\n"));
        }
    }
    s
}

pub fn star_text(leaves: u32) -> String {
    let mut s = format!("#nodes {}\n", leaves + 1);
    for v in 1..=leaves {
        s.push_str(&format!("0 {v}\n"));
    }
    s
}
