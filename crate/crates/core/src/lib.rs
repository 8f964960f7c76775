pub mod bits;
pub mod brauer;
pub mod checks;
pub mod config;
pub mod dynkin;
pub mod error;
pub mod linalg;
pub mod meshcat;
pub mod mutation;
pub mod nakayama;
pub mod ztquiver;

pub use error::{Error, Result};
