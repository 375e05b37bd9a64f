//! Command-line tool, metric-definition language and report formats for the
//! curvature engine in `weylscope-core`.

pub mod cli;
pub mod error;
pub mod identities;
pub mod metric_lang;
pub mod report;
pub mod sweep;
pub mod target;
