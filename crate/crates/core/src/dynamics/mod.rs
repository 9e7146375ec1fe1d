//! Lindblad dynamics of an excitation-preserving qubit network and the
//! channel it induces between an input and an output site.
//!
//! Both the hopping Hamiltonian and every Lindblad term either conserve or
//! lower the excitation number, so a single excitation injected on top of the
//! ground state never leaves `span{vacuum, |1>, ..., |N>, sink}`. All
//! operators here live in that `N + 2` dimensional space, ordered
//! `[vacuum, site 1, ..., site N, sink]`.
//!
//! Units: time in ps, frequencies and rates in ps^-1, `hbar = 1`.

mod extract;
mod integrator;
mod liouvillian;
mod network;

pub use extract::{extract_channel, trajectory, ChannelSample, DEGENERATE_ETA};
pub use integrator::{propagate, IntegratorConfig, Propagator, DEFAULT_STEP_FACTOR, STEP_LIMIT};
pub use liouvillian::{liouvillian, Liouvillian};
pub use network::{BasisState, EvolvedOperator, NetworkSpec, Output, Sink};
