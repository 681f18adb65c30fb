//! Exact computation with tame frieze patterns and their quiddity cycles.

pub mod enumeration;
pub mod error;
pub mod bounds;
pub mod clusters;
pub mod etacore;
pub mod frieze;
pub mod json;
pub mod labelling;
pub mod reduction;
pub mod rings;
pub mod transforms;
pub mod worked;

pub use error::{Error, Result};
pub use etacore::{Cycle, Mat2};
pub use rings::{RingDescriptor, RingElement};
