pub mod algebra;
pub mod bimodule;
pub mod cli;
pub mod duality;
pub mod error;
pub mod hochschild;
pub mod io;
pub mod library;
pub mod linalg;
pub mod report;
pub mod trace;
pub mod verify;

pub use error::{Error, Result};
