//! Document format, verification commands and reports for `rbcyb`.

pub mod commands;
pub mod doc;
pub mod export;
pub mod report;

pub use commands::{cmd_catalog, cmd_check, cmd_construct, cmd_groupeval, cmd_validate, Construct, Property};
pub use doc::{emit, parse, DocError, Document, Object};
pub use report::{Record, Report, Status};
