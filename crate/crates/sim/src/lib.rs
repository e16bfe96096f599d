//! Deterministic cluster simulator over the regenerating codes of `lrc-core`.

pub mod cluster;
pub mod config;
pub mod container;
pub mod error;
pub mod events;
pub mod pack;
pub mod report;
pub mod scheme;

pub use cluster::{Cluster, RepairOutcome};
pub use config::SimConfig;
pub use error::{Result, SimError};
pub use events::{Event, Schedule};
pub use report::{run, SimReport, Status};
pub use scheme::{CodeSpec, Mode, Scheme};
