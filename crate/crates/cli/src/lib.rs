//! Command-line front end: matrix ingestion, check orchestration and reports.

pub mod input;
pub mod report;
pub mod request;
pub mod run;

pub use input::{parse_matrix, InputError};
pub use report::{emit, Bearing, Format, Record, Report, SCHEMA};
pub use request::{AnalysisRequest, Check, Modes};
pub use run::run;
