pub mod classify;
pub mod error;
pub mod exec;
pub mod fourier;
pub mod linalg;
pub mod measure;
pub mod oracle;
pub mod scalar;

pub use error::{Error, Result};
