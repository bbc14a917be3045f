pub mod cli;
pub mod error;
pub mod qarith;
pub mod tldiag;
pub mod jw;
pub mod karoubi;
pub mod otl;

pub use error::{Error, Result};
