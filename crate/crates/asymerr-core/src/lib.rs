//! Models for asymmetric uncertainties: probability densities built from a
//! quantile or moment triple, log-likelihood curves built from a
//! `Δln L = −½` triple, and the procedures that combine them.
//!
//! The crate is `no_std` (with `alloc`) when the default `std` feature is
//! disabled. All transcendental functions come from `libm`, so results are
//! bit-identical with and without `std`.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod combine;
mod error;
pub mod lnl;
pub mod numeric;
pub mod pdf;

pub use error::{Error, Result, Side};
