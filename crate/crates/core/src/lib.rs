pub mod error;
pub mod forest;
pub mod generate;
pub mod hierarchy;
pub mod iterated;
pub mod levels;
pub mod ordinal;
pub mod syntax;
pub mod term;

pub use error::{Error, Result};
