//! Symbolic dynamics for non-autonomous coupled-expanding systems.

pub mod region;
pub mod dynsys;
pub mod expansion;
pub mod symbolic;
pub mod coding;
pub mod hyperspace;
pub mod chaoslab;
pub mod examples;
pub mod scenario;

#[cfg(feature = "cli")]
pub mod cli;

mod par;
