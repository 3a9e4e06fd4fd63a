pub mod arith;
pub mod arrangement;
pub mod catalog;
pub mod cm;
pub mod error;
pub mod kummer;
pub mod point_count;
pub mod qseries;
pub mod report;
pub mod tensor;

pub use error::{Error, Result};
