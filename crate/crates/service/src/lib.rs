//! Graph dataset catalog and query service.
//!
//! [`Catalog`] owns a directory of processed datasets: every upload or
//! generated graph is normalized, fully analysed and laid out once, then
//! served read-only. [`api::router`] exposes the catalog over HTTP/JSON.

pub mod api;
pub mod error;
pub mod jobs;
pub mod model;
pub mod query;
pub mod store;
pub mod viz;
pub mod workspace;

pub use api::{router, serve, AppState};
pub use error::{Result, ServiceError};
pub use model::{DatasetInfo, DatasetRecord, Source};
pub use store::{Catalog, ServiceConfig};
