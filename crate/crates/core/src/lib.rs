pub mod audit;
pub mod bounds;
pub mod compare;
pub mod error;
pub mod regions;
pub mod specfun;

pub use error::{Error, Result};
