//! Layered exact-repair regenerating codes.
//!
//! Bottom-up: [`field`] arithmetic, [`patterns`] (cyclic orbits of column
//! subsets), the inner [`mds`] code, the [`canonical`] layered code, the
//! [`rank`] accumulation analysis, the [`outer`] linearized-polynomial
//! precoding (including the locality extension) and the exact-rational
//! [`tradeoff`] engine.

pub mod canonical;
pub mod error;
pub mod field;
pub mod linalg;
pub mod mds;
pub mod outer;
pub mod patterns;
pub mod rank;
pub mod tradeoff;

pub use canonical::{CanonicalCode, CanonicalParams, CodeArray, RepairPlan};
pub use error::{CodeError, Result};
pub use field::{BaseField, ExtElem, ExtField, Field};
