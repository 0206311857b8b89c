//! Exact arithmetic for block-transitive Steiner 6-designs.
//!
//! [`design`] holds the counting identities and necessary conditions,
//! [`groups`] the 3-homogeneous group catalog, and [`engine`] the case
//! eliminations that turn both into checkable certificates.

pub mod arith;
pub mod dec;
pub mod design;
pub mod engine;
pub mod error;
pub mod groups;
pub mod report;

pub use design::DesignParams;
pub use error::{Error, Result};
