//! Rate-region toolbox for the Gaussian two-way relay channel (TWRC) with
//! decode-forward relaying.
//!
//! Two users exchange messages with the help of a relay while a direct link
//! between them is also present. This crate computes the achievable rate
//! regions of composite decode-forward schemes in both duplexing modes,
//! classifies channel configurations into closed-form link regimes, and sweeps
//! relay geometry to map out where each relaying technique is worth using.
//!
//! - [`channel`] — link amplitudes, power budgets, and the path-loss
//!   constructor that turns node geometry into channel gains.
//! - [`rate_geometry`] — rate pentagons `{R1 <= a, R2 <= b, R1+R2 <= c}`,
//!   convex unions (time sharing), containment and support queries.
//! - [`fd_schemes`] — the full-duplex composite scheme, its special cases
//!   (coherent DF, independent DF, direct transmission, hybrids) and grid
//!   search over power allocations.
//! - [`regime_analysis`] — link-regime classifier (regimes A through E),
//!   closed-form time-share certificates, and a brute-force oracle that checks
//!   the closed forms by direct region comparison.
//! - [`hd_schemes`] — the six-phase half-duplex scheme, reductions to prior
//!   four- and six-phase protocols, and joint duration/power optimization.
//! - [`survey`] — relay-position sweeps producing regime and throughput-gain
//!   map data.
//! - [`cli`] — the `twrc` command-line front end (`region`, `classify`,
//!   `sweep`, `verify`).
//!
//! Rates are in bits per channel use (`C(x) = log2(1 + x)`) under unit-variance
//! noise, so powers are directly receive SNRs at unit gain.
//!
//! # Examples
//!
//! Runnable examples live in `examples/`:
//!
//! - `fd_regions` — full-duplex regions of every scheme for one channel
//! - `hd_regions` — half-duplex six-phase region and its restrictions
//! - `classify_regimes` — regime labels and time-share certificates
//! - `relay_sweep` — small relay-placement sweep as CSV
//! - `oracle_check` — closed-form classifier vs. brute-force region oracle
//!
//! ```
//! use twrc::channel::{ChannelGains, PowerBudget};
//! use twrc::regime_analysis::classify_regime;
//!
//! let gains = ChannelGains::new(1.0, 1.0, 1.0, 1.0, 2.0, 2.0).unwrap();
//! let budget = PowerBudget::new(1.0, 1.0, 1.0).unwrap();
//! let label = classify_regime(&gains, &budget).unwrap();
//! println!("{label}");
//! ```

pub mod channel;
pub mod cli;
pub mod fd_schemes;
pub mod hd_schemes;
pub mod rate_geometry;
pub mod regime_analysis;
pub mod survey;

use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument violated a domain precondition (negative power, coincident
    /// nodes, infeasible allocation, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// Underlying I/O failure when writing results.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
