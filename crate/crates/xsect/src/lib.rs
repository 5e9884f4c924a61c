//! Command-line front end for cross-section classification.
//!
//! Configuration, the fixture catalog, graph interchange, the JSON report
//! and SVG rendering live here; the analysis itself is in `xsect-core`.

pub mod catalog;
pub mod config;
pub mod error;
pub mod interchange;
pub mod report;
pub mod runner;
pub mod svg;

pub use error::Error;
pub use runner::{build_graph, run};
