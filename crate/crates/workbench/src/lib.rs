//! File formats, reports, the command-line front end and the acceptance
//! catalog for `green-core`.

pub mod catalog;
pub mod cli;
pub mod inputs;
pub mod json;
pub mod oracle;
pub mod report;
