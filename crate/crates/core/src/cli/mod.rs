//! Library side of the command-line front end: the analysis pipeline, the conic-bundle
//! report, brute-force search and the JSON report envelope.

pub mod analyze;
pub mod bundle;
pub mod report;
pub mod search;

pub use analyze::{analyze, AnalyzeReport, AnalyzeVerdict};
pub use bundle::{bundle_report, BundleReport};
pub use report::{exit_code, ReportEnvelope, TOOL_NAME};
pub use search::{search_box, SearchResult};
