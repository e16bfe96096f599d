//! The canonical layered code: parameters, encoder, collector and
//! help-by-transfer repair.

mod code;
mod params;
mod repair;

pub use code::{CanonicalCode, CodeArray, Layer, ThreadId};
pub use params::{beta_by_thread_count, CanonicalParams, SmallParams};
pub use repair::{RepairPlan, ThreadRecipe, Transfers};
