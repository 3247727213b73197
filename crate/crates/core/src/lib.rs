pub mod error;
pub mod exactalg;
pub mod gamma;
pub mod identities;
pub mod perm;
pub mod runner;
pub mod sieve;
pub mod trees;

pub use error::{Error, Result};
