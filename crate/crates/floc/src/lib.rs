//! Deterministic round-based simulator of energy-efficient opportunistic
//! clustering in wireless sensor networks.
//!
//! Each round, nodes draw asynchronous awake windows, heat up under the
//! diurnal radiation curve, form an opportunistic connection graph with the
//! peers whose windows overlap, and rank the cluster-head / member / relay
//! roles with the [`hflts`] decision engine from six criteria: RF gain
//! degree, energy welfare, relative thermal entropy, link connectivity,
//! expected hops to the sink, and link quality. Members sense and forward
//! to their heads; heads aggregate and relay toward the sink over min-cost
//! routes; every energy movement is ledgered.
//!
//! Runs are pure functions of the scenario (including its seed): the same
//! configuration always produces the same metrics series.

pub mod energy;
pub mod error;
pub mod links;
pub mod network;
pub mod scenario;
pub mod sim;
pub mod sweep;
pub mod thermal;

pub use error::{FlocError, Result};
pub use network::Role;
pub use scenario::Scenario;
pub use sim::{run, RoundMetrics, Simulation};

/// True when the `FLOC_LOG` environment variable asks for diagnostics.
pub fn log_enabled() -> bool {
    std::env::var("FLOC_LOG")
        .map(|v| !v.is_empty() && v != "0")
        .unwrap_or(false)
}
