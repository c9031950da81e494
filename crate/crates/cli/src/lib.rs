//! Batch front-end for the `dmu-corona` library: JSON job documents in,
//! JSON reports out, with a fixed exit-code contract (0 PASS, 1 FAIL,
//! 2 INCONCLUSIVE, 3 input error).

pub mod export;
pub mod input;
pub mod report;
pub mod run;
pub mod suite;

pub use input::{CliError, Config, ErrorCode};
pub use report::{Report, Status};
pub use run::run;
