//! Ruler-and-compass construction kernel with plane and solid mensuration.

pub mod construct;
pub mod error;
pub mod measure;
pub mod mensura;
pub mod plane;
pub mod scalar;
pub mod solids;
pub mod verify;

pub use error::{GeomError, Result};
