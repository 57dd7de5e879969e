pub mod error;
pub mod limits;
pub mod partitions;
pub mod symrep;

pub use error::{Error, Result};
pub use partitions::{partitions_of, Partition};
pub mod bmcycles;
pub mod cli;
pub mod moduli;
pub mod quasibanal;
pub mod types;
