//! Exact polynomial and truncated q-series arithmetic.

pub mod poly;
pub mod qnum;
pub mod report;
pub mod series;
pub mod var;

pub use poly::{Monomial, MultiPoly};
pub use qnum::{q_number, QNumber};
pub use report::{cross_check, IdentityReport, Mismatch, Status};
pub use series::{QMode, QSeries};
pub use var::Var;
