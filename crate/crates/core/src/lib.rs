//! Station-based bike-sharing rebalancing: a continuous-time, event-driven
//! simulator with multiple rebalancing vehicles, a from-scratch Deep
//! Q-Network learner, and baseline policies for comparison.
//!
//! The crate is organized along the pipeline:
//!
//! - [`domain`]: instances, states, actions, and validation.
//! - [`demand`]: synthetic network layouts and Poisson commuter trip demand.
//! - [`sim`]: the first-arrive-first-serve discrete-event engine driving
//!   rentals, returns, and rebalancing operations between decision epochs.
//! - [`env`]: observation encoding, loading-rule action decoding, legal-action
//!   masking, and the reset/step contract.
//! - [`neural`]: dense Q-network with analytic gradients and Adam, generic
//!   over the scalar type.
//! - [`trainer`]: epsilon-greedy off-policy training loop with replay buffer
//!   and target network, plus policy evaluation.
//! - [`baselines`]: non-learned and partially learned comparison policies.

pub mod baselines;
pub mod demand;
pub mod domain;
pub mod env;
pub mod matrix;
pub mod neural;
pub mod scalar;
pub mod sim;
pub mod trainer;

pub use scalar::Scalar;

/// Q-network with double-precision parameters (the default for training).
pub type QNetwork64 = neural::QNetwork<f64>;
/// Q-network with single-precision parameters.
pub type QNetwork32 = neural::QNetwork<f32>;
/// Adam state matching [`QNetwork64`].
pub type AdamState64 = neural::AdamState<f64>;
/// Adam state matching [`QNetwork32`].
pub type AdamState32 = neural::AdamState<f32>;
