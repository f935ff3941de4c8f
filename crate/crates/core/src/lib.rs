pub mod error;
pub mod group;

pub use error::{Error, Result};
pub mod brace;
pub mod enumerate;
pub mod report;
pub mod classify;
