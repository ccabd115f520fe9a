pub mod arith;
pub mod cache;
pub mod error;
pub mod holonomic;
pub mod nu;
pub mod omega_gf;
pub mod stern;
pub mod transfer;

pub use error::{Error, Result};
