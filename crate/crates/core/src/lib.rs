pub mod catalog;
pub mod cli;
pub mod error;
pub mod group;
pub mod linalg;
pub mod mackey;
pub mod netconv;

pub use error::{Error, Result};
pub use linalg::CMatrix;
