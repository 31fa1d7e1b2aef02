//! Transmit antenna selection versus space-time block coding under
//! hidden-node interference.
//!
//! The link-level side ([`channel`], [`phy`], [`scenario`], [`montecarlo`])
//! estimates BER curves for a victim AP-to-client link that either spreads
//! an orthogonal STBC block over all its antennas or transmits from the
//! single antenna with the largest channel norm. The [`mac`] module models
//! a controller that lets a group of APs transmit simultaneously after an
//! antenna-selection sounding phase, and accounts for the airtime saved
//! against sequential transmissions.

// `!(x > 0.0)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channel;
pub mod cli;
pub mod config;
pub mod error;
pub mod mac;
pub mod montecarlo;
pub mod phy;
pub mod plot;
pub mod report;
pub mod scenario;

pub use error::{Error, Result};
