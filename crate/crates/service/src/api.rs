//! HTTP/JSON routes.
//!
//! | method | path | body / params | response |
//! |---|---|---|---|
//! | GET | `/collections` | | collection names |
//! | GET | `/graphs` | `?collection=` | records |
//! | POST | `/graphs` | multipart (`file`, `name`, `collection`, `description`, `citation`) or JSON with `data` | 201 record, 202 job |
//! | GET | `/graphs/{id}` | | record |
//! | PATCH | `/graphs/{id}` | `{name?, description?, citation?}` | record |
//! | POST | `/graphs/{id}/notes` | `{text}` | record |
//! | GET | `/graphs/{id}/stats` | | stats JSON |
//! | GET | `/graphs/{id}/nodes` | `?stat.min=&stat.max=&columns=` | node query result |
//! | GET | `/graphs/{id}/distribution/{statistic}` | | distribution |
//! | GET | `/graphs/{id}/viz` | `?max_nodes=&labels=community\|role&seed=` | visualization |
//! | GET | `/graphs/{id}/download` | | canonical edge list |
//! | POST | `/generate` | generator config plus `name`, `collection`, `preview` | 201 record, 202 job, 200 preview |
//! | POST | `/query` | filter query | query result |
//! | POST | `/drill` | drill request | drill result |
//! | GET | `/jobs/{id}` | | job |
//! | GET, POST | `/workspace/{key}/items` | `{kind, payload}` | items, 201 item |
//! | DELETE | `/workspace/{key}/items/{item}` | | 204 |
//!
//! Errors are `{"error": {"code", "message", "line"?}}` with a 4xx or 5xx status.

use std::net::SocketAddr;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{DefaultBodyLimit, FromRequest, Multipart, Path, Query, Request, State};
use axum::http::{header, HeaderMap, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{delete, get, post};
use axum::{Json, Router};
use netrepo_core::generators::{intra_block_fraction, GeneratorConfig};
use netrepo_core::stats::{compute_all, GraphStats};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use tokio::sync::Semaphore;

use crate::error::{Result, ServiceError};
use crate::jobs::Jobs;
use crate::model::{DatasetInfo, RecordPatch};
use crate::query::{
    drill_graphs, drill_nodes, predicates_from_params, query_graphs, query_nodes, DrillRequest,
    FilterQuery, QueryResult,
};
use crate::store::{Catalog, Pending};
use crate::viz::{self, Visualization, VizRequest};
use crate::workspace::NewItem;

#[derive(Clone)]
pub struct AppState {
    pub catalog: Arc<Catalog>,
    pub jobs: Arc<Jobs>,
    workers: Arc<Semaphore>,
}

impl AppState {
    pub fn new(catalog: Arc<Catalog>) -> Self {
        let workers = catalog.config().workers.max(1);
        Self {
            catalog,
            jobs: Arc::new(Jobs::default()),
            workers: Arc::new(Semaphore::new(workers)),
        }
    }
}

impl IntoResponse for ServiceError {
    fn into_response(self) -> Response {
        let status = StatusCode::from_u16(self.status()).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
        if status.is_server_error() {
            log::error!("{self}");
        }
        let mut body = serde_json::json!({ "code": self.code(), "message": self.to_string() });
        if let Some(line) = self.line() {
            body["line"] = line.into();
        }
        (status, Json(serde_json::json!({ "error": body }))).into_response()
    }
}

fn parse_json<T: DeserializeOwned>(body: &[u8]) -> Result<T> {
    serde_json::from_slice(body).map_err(|e| ServiceError::BadRequest(format!("invalid JSON body: {e}")))
}

async fn blocking<T, F>(f: F) -> Result<T>
where
    T: Send + 'static,
    F: FnOnce() -> Result<T> + Send + 'static,
{
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ServiceError::Io(std::io::Error::other(e)))?
}

pub fn router(state: AppState) -> Router {
    let limit = state.catalog.config().max_upload_bytes;
    Router::new()
        .route("/collections", get(collections))
        .route("/graphs", get(list_graphs).post(upload))
        .route("/graphs/{id}", get(get_graph).patch(patch_graph))
        .route("/graphs/{id}/notes", post(add_note))
        .route("/graphs/{id}/stats", get(get_stats))
        .route("/graphs/{id}/nodes", get(get_nodes))
        .route("/graphs/{id}/distribution/{statistic}", get(get_distribution))
        .route("/graphs/{id}/viz", get(get_viz))
        .route("/graphs/{id}/download", get(download))
        .route("/generate", post(generate))
        .route("/query", post(query))
        .route("/drill", post(drill))
        .route("/jobs/{id}", get(get_job))
        .route("/workspace/{key}/items", get(list_items).post(save_item))
        .route("/workspace/{key}/items/{item}", delete(delete_item))
        .layer(DefaultBodyLimit::max(limit))
        .with_state(state)
}

/// Serves the catalog until the process is stopped.
pub async fn serve(catalog: Catalog, addr: SocketAddr) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    log::info!("listening on {}", listener.local_addr()?);
    axum::serve(listener, router(AppState::new(Arc::new(catalog)))).await
}

async fn collections(State(s): State<AppState>) -> Json<Vec<String>> {
    Json(s.catalog.collections().to_vec())
}

#[derive(Deserialize)]
struct ListParams {
    collection: Option<String>,
}

async fn list_graphs(
    State(s): State<AppState>,
    params: std::result::Result<Query<ListParams>, axum::extract::rejection::QueryRejection>,
) -> Result<Response> {
    let Query(params) = params.map_err(|e| ServiceError::BadRequest(e.body_text()))?;
    let mut records = s.catalog.list();
    if let Some(c) = params.collection {
        records.retain(|r| r.collection == c);
    }
    Ok(Json(records).into_response())
}

/// Finishes `pending` inline, or as a background job above the size threshold.
async fn submit(s: &AppState, pending: Pending) -> Result<Response> {
    if pending.edge_count() > s.catalog.config().background_threshold {
        let job = s.jobs.create(pending.id());
        let state = s.clone();
        let id = job.id.clone();
        tokio::spawn(async move {
            let _permit = state.workers.clone().acquire_owned().await;
            let catalog = state.catalog.clone();
            let outcome = blocking(move || catalog.finish(pending)).await;
            if let Err(e) = &outcome {
                log::error!("{id} failed: {e}");
            }
            state.jobs.finish(&id, outcome.map(|_| ()).map_err(|e| e.to_string()));
        });
        return Ok((StatusCode::ACCEPTED, Json(job)).into_response());
    }
    let catalog = s.catalog.clone();
    let record = blocking(move || catalog.finish(pending)).await?;
    Ok((StatusCode::CREATED, Json(record)).into_response())
}

#[derive(Deserialize)]
struct JsonUpload {
    #[serde(flatten)]
    info: DatasetInfo,
    data: String,
}

async fn read_multipart(mut form: Multipart) -> Result<(DatasetInfo, String)> {
    let bad = |e: axum::extract::multipart::MultipartError| ServiceError::BadRequest(e.body_text());
    let mut info = DatasetInfo::default();
    let mut data = None;
    let mut file_name = None;
    while let Some(field) = form.next_field().await.map_err(bad)? {
        let name = field.name().unwrap_or_default().to_string();
        if name == "file" || name == "data" {
            file_name = field.file_name().map(str::to_string);
            let bytes = field.bytes().await.map_err(bad)?;
            data = Some(
                String::from_utf8(bytes.to_vec())
                    .map_err(|_| ServiceError::BadRequest("upload is not valid UTF-8".into()))?,
            );
            continue;
        }
        let text = field.text().await.map_err(bad)?;
        match name.as_str() {
            "name" => info.name = text,
            "collection" => info.collection = Some(text),
            "description" => info.description = text,
            "citation" => info.citation = text,
            other => return Err(ServiceError::BadRequest(format!("unexpected form field '{other}'"))),
        }
    }
    let data = data.ok_or_else(|| ServiceError::BadRequest("missing 'file' field".into()))?;
    if info.name.is_empty() {
        info.name = file_name.unwrap_or_else(|| "upload".into());
    }
    Ok((info, data))
}

async fn upload(State(s): State<AppState>, headers: HeaderMap, req: Request) -> Result<Response> {
    let content_type = headers
        .get(header::CONTENT_TYPE)
        .and_then(|v| v.to_str().ok())
        .unwrap_or_default();
    let (info, data) = if content_type.starts_with("multipart/form-data") {
        let form = Multipart::from_request(req, &s)
            .await
            .map_err(|e| ServiceError::BadRequest(e.body_text()))?;
        read_multipart(form).await?
    } else {
        let body = Bytes::from_request(req, &s)
            .await
            .map_err(|e| ServiceError::BadRequest(e.body_text()))?;
        let upload: JsonUpload = parse_json(&body)?;
        (upload.info, upload.data)
    };
    let catalog = s.catalog.clone();
    let pending = blocking(move || catalog.prepare_upload(info, &data)).await?;
    submit(&s, pending).await
}

async fn get_graph(State(s): State<AppState>, Path(id): Path<String>) -> Result<Response> {
    Ok(Json(s.catalog.get(&id)?).into_response())
}

async fn patch_graph(State(s): State<AppState>, Path(id): Path<String>, body: Bytes) -> Result<Response> {
    let patch: RecordPatch = parse_json(&body)?;
    Ok(Json(s.catalog.update(&id, patch)?).into_response())
}

#[derive(Deserialize)]
struct Note {
    text: String,
}

async fn add_note(State(s): State<AppState>, Path(id): Path<String>, body: Bytes) -> Result<Response> {
    let note: Note = parse_json(&body)?;
    Ok(Json(s.catalog.add_note(&id, note.text)?).into_response())
}

async fn get_stats(State(s): State<AppState>, Path(id): Path<String>) -> Result<Response> {
    let json = s.catalog.stats_json(&id)?;
    Ok(([(header::CONTENT_TYPE, "application/json")], json).into_response())
}

async fn get_nodes(
    State(s): State<AppState>,
    Path(id): Path<String>,
    Query(params): Query<Vec<(String, String)>>,
) -> Result<Response> {
    let q = predicates_from_params(&params)?;
    let record = s.catalog.get(&id)?;
    let table = s.catalog.node_stats(&record.id)?;
    Ok(Json(query_nodes(&record.id, &table, &q)?).into_response())
}

async fn get_distribution(
    State(s): State<AppState>,
    Path((id, statistic)): Path<(String, String)>,
) -> Result<Response> {
    Ok(Json(s.catalog.distribution(&id, &statistic)?).into_response())
}

async fn get_viz(
    State(s): State<AppState>,
    Path(id): Path<String>,
    params: std::result::Result<Query<VizRequest>, axum::extract::rejection::QueryRejection>,
) -> Result<Response> {
    let Query(req) = params.map_err(|e| ServiceError::BadRequest(e.body_text()))?;
    let catalog = s.catalog.clone();
    let v = blocking(move || viz::visualization(&catalog, &id, &req)).await?;
    Ok(Json(v).into_response())
}

async fn download(State(s): State<AppState>, Path(id): Path<String>) -> Result<Response> {
    let record = s.catalog.get(&id)?;
    let text = s.catalog.edge_list(&record.id)?;
    let disposition = format!("attachment; filename=\"{}.txt\"", record.id);
    Ok((
        [
            (header::CONTENT_TYPE, "text/plain; charset=utf-8".to_string()),
            (header::CONTENT_DISPOSITION, disposition),
        ],
        text,
    )
        .into_response())
}

#[derive(Deserialize)]
struct GenerateRequest {
    #[serde(flatten)]
    config: GeneratorConfig,
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    collection: Option<String>,
    #[serde(default)]
    description: String,
    #[serde(default)]
    citation: String,
    /// Return stats and a layout without saving anything.
    #[serde(default)]
    preview: bool,
    #[serde(default)]
    max_nodes: Option<usize>,
}

#[derive(Serialize)]
struct Preview {
    preview: bool,
    warnings: Vec<String>,
    stats: GraphStats,
    #[serde(skip_serializing_if = "Option::is_none")]
    intra_block_fraction: Option<f64>,
    visualization: Visualization,
}

async fn generate(State(s): State<AppState>, body: Bytes) -> Result<Response> {
    let req: GenerateRequest =
        serde_json::from_slice(&body).map_err(|e| ServiceError::InvalidConfig(e.to_string()))?;
    let warnings = req.config.validate()?;
    let catalog = s.catalog.clone();
    if req.preview {
        let max_nodes = req.max_nodes.unwrap_or(catalog.config().viz_nodes);
        let iterations = catalog.config().layout_iterations;
        let preview = blocking(move || {
            let g = req.config.generate()?;
            let (stats, _) = compute_all(&g);
            let intra = req.config.block_sizes().map(|b| intra_block_fraction(&g, &b));
            Ok(Preview {
                preview: true,
                warnings,
                stats,
                intra_block_fraction: intra,
                visualization: viz::preview(&g, max_nodes, req.config.rng_seed, iterations),
            })
        })
        .await?;
        return Ok(Json(preview).into_response());
    }
    let info = DatasetInfo {
        name: req
            .name
            .unwrap_or_else(|| format!("{}-{}", req.config.model.kind(), req.config.rng_seed)),
        collection: req.collection,
        description: req.description,
        citation: req.citation,
    };
    let pending = blocking(move || catalog.prepare_generated(info, req.config)).await?;
    submit(&s, pending).await
}

async fn query(State(s): State<AppState>, body: Bytes) -> Result<Response> {
    let q: FilterQuery = parse_json(&body)?;
    let result = match &q.graph {
        Some(id) => {
            let record = s.catalog.get(id)?;
            let table = s.catalog.node_stats(&record.id)?;
            QueryResult::Nodes(query_nodes(&record.id, &table, &q)?)
        }
        None => QueryResult::Graphs(query_graphs(&s.catalog.list(), &q)?),
    };
    Ok(Json(result).into_response())
}

async fn drill(State(s): State<AppState>, body: Bytes) -> Result<Response> {
    let req: DrillRequest = parse_json(&body)?;
    let result = match &req.graph {
        Some(id) => drill_nodes(&s.catalog.node_stats(&s.catalog.get(id)?.id)?, &req)?,
        None => drill_graphs(&s.catalog.list(), &req)?,
    };
    Ok(Json(result).into_response())
}

async fn get_job(State(s): State<AppState>, Path(id): Path<String>) -> Result<Response> {
    Ok(Json(s.jobs.get(&id)?).into_response())
}

async fn list_items(State(s): State<AppState>, Path(key): Path<String>) -> Result<Response> {
    Ok(Json(s.catalog.workspace().list(&key)).into_response())
}

async fn save_item(State(s): State<AppState>, Path(key): Path<String>, body: Bytes) -> Result<Response> {
    let item: NewItem = parse_json(&body)?;
    let saved = s.catalog.workspace().save(&key, item)?;
    Ok((StatusCode::CREATED, Json(saved)).into_response())
}

async fn delete_item(
    State(s): State<AppState>,
    Path((key, item)): Path<(String, u64)>,
) -> Result<Response> {
    s.catalog.workspace().delete(&key, item)?;
    Ok(StatusCode::NO_CONTENT.into_response())
}
