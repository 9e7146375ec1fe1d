//! Classical and quantum capacities of the qubit channels induced by noisy,
//! excitation-preserving network dynamics.
//!
//! A qubit prepared at an input site of an `N`-site network evolves under a
//! hopping Hamiltonian plus local dephasing, dissipation and an optional
//! absorbing sink. At every time the reduced state of the output site is
//! related to the input by a two-parameter channel `E(eta, s)`:
//!
//! ```text
//!   | p      gamma |        | eta p              sqrt(eta s) gamma |
//!   | gamma* 1 - p |   ->   | sqrt(eta s) gamma* 1 - eta p         |
//! ```
//!
//! The crate is organised in layers:
//!
//! * [`channel`] - the channel family itself: map, Kraus and Choi forms,
//!   figures of merit.
//! * [`capacity`] - Holevo and coherent information, the one-shot capacities
//!   `C1`/`Q1` and a Blahut-Arimoto oracle for classical channels.
//! * [`dynamics`] - Lindblad evolution in the vacuum + single-excitation
//!   (+ sink) subspace and extraction of `(eta, s)` over time.
//! * [`model_io`] - TOML network configs, bundled models and CSV tables.
//! * [`verify`] and [`cli`] - the cross-module check suite and the command
//!   line driver behind the `noisecap` binary.
//!
//! ```
//! use noisecap::channel::ChannelParams;
//! use noisecap::capacity::c1_fully_dephased;
//!
//! let c1 = c1_fully_dephased(0.5).unwrap();
//! assert!((c1.value - (1.25f64).log2()).abs() < 1e-12);
//! let params = ChannelParams::new(0.5, 0.5).unwrap();
//! assert!((params.fidelity() - 0.625).abs() < 1e-12);
//! ```

pub mod capacity;
pub mod channel;
pub mod cli;
pub mod dynamics;
mod error;
pub mod linalg;
pub mod model_io;
pub mod optimize;
pub mod verify;

pub use error::{Error, Result};
