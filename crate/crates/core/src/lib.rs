pub mod cli;
pub mod cost;
pub mod error;
pub mod flow;
pub mod format;
pub mod graph;
pub mod hybrid;
pub mod instance;
pub mod jwp;
pub mod microstructure;
pub mod models;
pub mod noc;
pub mod oracle;
pub mod solve;

pub use cost::Cost;
pub use error::{Error, Result};
pub use instance::{Assignment, VcspInstance};
