//! Real trace fields of complex and quaternionic hyperbolic groups.

pub mod algebra;
pub mod error;
pub mod geometry;
pub mod groups;
pub mod invariants;
pub mod isometry;
pub mod traces;

pub use error::{Error, Result};
