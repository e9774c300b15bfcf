//! File formats, reports and command dispatch for the `scenario` tool.

pub mod format;
pub mod report;
pub mod run;
