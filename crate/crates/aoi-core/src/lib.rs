//! Core state model for a relay-aided sensor network.
//!
//! `K` sensors feed a relay, and the relay forwards fresh samples to a
//! destination node. Time is slotted. In every slot the relay samples at most
//! `S` sensors and pushes updates for at most `U` sensors, and each selected
//! transmission independently suffers an outage with a per-sensor probability.
//! Freshness is tracked as two per-sensor ages: `g[k]` (slots since the relay
//! last heard from sensor `k`) and `h[k]` (slots since the destination last
//! received an update that originated at sensor `k`).
//!
//! This crate defines the network configuration, the age state, selection
//! actions with their outage outcomes, the slot transition, and the reduction
//! quantities used to reason about how much age a selection removes.

mod action;
pub mod combinatorics;
mod config;
mod dynamics;
mod error;
mod state;

pub use action::{feasible_actions, Action, ActionSpace, OutageDraws};
pub use config::NetworkConfig;
pub use dynamics::{
    outage_patterns, sampling_reduction, step, update_reduction, weighted_sum, Node,
};
pub use error::CoreError;
pub use state::AoIState;
