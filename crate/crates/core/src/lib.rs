pub mod chars;
pub mod cli;
pub mod cyclo;
pub mod error;
pub mod fields;
pub mod matrices;
pub mod mult;
pub mod oracle;
pub mod poly;

pub use error::{Error, Result};
