//! Exact piecewise-linear limit sets of modular circle quotients.

pub mod blockcore;
pub mod error;
pub mod exactnum;
pub mod geometry;
pub mod modblocks;
pub mod modtiling;
pub mod netbuild;

pub use error::{Error, Result};
