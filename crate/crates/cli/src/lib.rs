//! Front end for `djsim`: run configuration, dispatch and output.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod run;

pub use config::{Experiment, RunConfig};
pub use error::CliError;
