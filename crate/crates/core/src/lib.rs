pub mod algebra;
pub mod cli;
pub mod dsl;
pub mod error;
pub mod field;
pub mod lab;
pub mod lambda;
pub mod linalg;
pub mod monic;
pub mod oracle;
pub mod quiver;

pub use error::{Error, Result};
