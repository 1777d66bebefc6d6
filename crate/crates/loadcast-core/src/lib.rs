//! Forecasting toolkit for monthly electricity-consumption series.
//!
//! The crate bundles the model families used by the `loadcast` benchmark
//! harness — classical decomposition, seasonal-dummy regression, exponential
//! smoothing and seasonal ARIMA — together with the MAPE/MAD/MSD accuracy
//! metrics and a fixed catalog of nineteen forecasting approaches built on
//! top of them.
//!
//! Everything in here is pure computation over in-memory series: no I/O, no
//! global state, no randomness. All fits are deterministic functions of
//! their inputs, so results are reproducible bit for bit. The crate is
//! `no_std`-compatible (with `alloc`); disable the default `std` feature and
//! enable `libm` to use it in such environments.

#![cfg_attr(not(feature = "std"), no_std)]

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("loadcast-core needs either the `std` or the `libm` feature");

extern crate alloc;

mod error;
mod math;

pub mod arima;
pub mod catalog;
pub mod decomposition;
pub mod evaluation;
pub mod regression;
pub mod series;
pub mod smoothing;

pub use error::{Error, Result};

/// Whether a model combines its components by addition or multiplication.
///
/// Used both for decomposition (trend/seasonal/irregular composition) and
/// for the trend term of double exponential smoothing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelForm {
    Additive,
    Multiplicative,
}

impl core::fmt::Display for ModelForm {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ModelForm::Additive => f.write_str("additive"),
            ModelForm::Multiplicative => f.write_str("multiplicative"),
        }
    }
}
