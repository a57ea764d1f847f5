pub mod abp;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod fibonacci;
pub mod formula;
pub mod hypercube;
pub mod ring;
pub mod width2;
pub mod width3;

pub use error::{Error, Result};
