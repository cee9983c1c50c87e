//! SHA-1 as an application-specific datapath.
//!
//! The crate has three layers:
//!
//! * [`sha1`] — an equation-faithful SHA-1 (padding, schedule, round update,
//!   compression) together with a byte-oriented streaming hasher.
//! * [`sim`] — a cycle-accurate register-transfer model of an
//!   iterative-looping SHA-1 core, one round per clock, with per-cycle traces.
//! * [`perf`] — the throughput model of a multi-instance device, the
//!   published synthesis table, crack-time prediction and a parallel
//!   brute-force keyspace search.
//!
//! [`vectors`] reads the line-oriented test-vector format used by the CLI.

pub mod error;
pub mod perf;
pub mod sha1;
pub mod sim;
pub mod vectors;

pub use error::{Error, Result};
pub use sha1::{digest, digest_bytes, BitMessage, Block, Digest, PaddedMessage, RoundState, Sha1};
pub use sim::{ClockTraceRecord, DatapathState, Phase, SimMessageJob};
