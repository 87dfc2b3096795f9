//! File formats, reference likelihoods, experiments and the command-line
//! front end built on [`asymerr_core`].

pub mod cli;
pub mod exact;
pub mod experiments;
pub mod output;
pub mod record;

pub use asymerr_core as core;
