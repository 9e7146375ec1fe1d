//! One-shot classical (`C1`) and quantum (`Q1`) capacities of `E(eta, s)`.
//!
//! All rates are in bits (or qubits) per channel use.

mod blahut;
mod coherent;
mod surface;

pub use blahut::{blahut_arimoto, blahut_arimoto_with_input, ClassicalCapacity};
pub use coherent::{coherent_information, q1_numeric};
pub use surface::{capacity_surface, SurfaceRow};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::channel::{ChannelParams, QubitState};
use crate::optimize::{self, NelderMead};
use crate::{Error, Result};

/// Probability-weighted collection of input states.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    entries: Vec<(f64, QubitState)>,
}

impl Ensemble {
    pub fn new(entries: Vec<(f64, QubitState)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidInput("ensemble is empty".into()));
        }
        if let Some((w, _)) = entries.iter().find(|(w, _)| w.is_nan() || *w < 0.0) {
            return Err(Error::InvalidInput(format!("negative ensemble weight {w}")));
        }
        let total: f64 = entries.iter().map(|(w, _)| w).sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidInput(format!("ensemble weights sum to {total}")));
        }
        Ok(Self { entries })
    }

    pub fn single(state: QubitState) -> Self {
        Self { entries: vec![(1.0, state)] }
    }

    pub fn entries(&self) -> &[(f64, QubitState)] {
        &self.entries
    }

    /// The weighted average state.
    pub fn average(&self) -> QubitState {
        let (p, gamma) = self
            .entries
            .iter()
            .fold((0.0, crate::linalg::ZERO), |(p, g), (w, rho)| {
                (p + w * rho.p(), g + rho.gamma() * *w)
            });
        // a convex combination of valid states is valid
        QubitState::new(p, gamma).expect("convex combination of states")
    }
}

/// Settings for the multistart searches behind [`c1_numeric`] and
/// [`q1_numeric`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerOptions {
    pub max_iterations: usize,
    pub restarts: usize,
    pub tolerance: f64,
    pub ensemble_size: usize,
    pub seed: u64,
}

impl Default for OptimizerOptions {
    fn default() -> Self {
        Self {
            max_iterations: 10_000,
            restarts: 8,
            tolerance: 1e-12,
            ensemble_size: 4,
            seed: 0x5EED,
        }
    }
}

impl OptimizerOptions {
    pub fn validate(&self) -> Result<()> {
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(Error::InvalidInput("optimizer tolerance must be positive".into()));
        }
        if self.ensemble_size < 2 {
            return Err(Error::InvalidInput("ensemble_size must be at least 2".into()));
        }
        if self.restarts == 0 || self.max_iterations == 0 {
            return Err(Error::InvalidInput("restarts and max_iterations must be positive".into()));
        }
        Ok(())
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    pub(crate) fn nelder_mead(&self) -> NelderMead {
        NelderMead {
            max_iterations: self.max_iterations,
            tolerance: self.tolerance,
            ..NelderMead::default()
        }
    }

    pub(crate) fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// The maximiser found by a capacity computation.
#[derive(Debug, Clone, PartialEq)]
pub enum Argmax {
    Ensemble(Ensemble),
    State(QubitState),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CapacityResult {
    pub value: f64,
    pub argmax: Argmax,
    pub converged: bool,
    pub iterations: usize,
}

/// `H2(x) = -x log2 x - (1 - x) log2 (1 - x)`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("binary entropy argument {x} outside [0, 1]")));
    }
    Ok(binary_entropy_unchecked(x))
}

pub(crate) fn binary_entropy_unchecked(x: f64) -> f64 {
    let term = |y: f64| if y > 0.0 { -y * y.log2() } else { 0.0 };
    term(x) + term(1.0 - x)
}

/// Optimal excited-state weight `1 / ((1 - eta)^((eta - 1)/eta) + eta)` for the
/// fully dephased channel.
pub fn optimal_input_weight(eta: f64) -> Result<f64> {
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(Error::Domain(format!("optimal input weight undefined for eta = {eta}")));
    }
    Ok(1.0 / ((1.0 - eta).powf((eta - 1.0) / eta) + eta))
}

/// Closed-form `C1(E(eta, 0)) = H2(eta p) - p H2(eta)` at the optimal `p`,
/// achieved by mixing `|1>` (weight `p`) with `|0>`.
pub fn c1_fully_dephased(eta: f64) -> Result<CapacityResult> {
    let eta = ChannelParams::new(eta, 0.0)?.eta();
    if eta == 0.0 {
        return Ok(CapacityResult {
            value: 0.0,
            argmax: Argmax::Ensemble(Ensemble::single(QubitState::ground())),
            converged: true,
            iterations: 0,
        });
    }
    let p = optimal_input_weight(eta)?;
    let value = binary_entropy_unchecked(eta * p) - p * binary_entropy_unchecked(eta);
    let ensemble = Ensemble::new(vec![(p, QubitState::excited()), (1.0 - p, QubitState::ground())])?;
    Ok(CapacityResult {
        value: value.max(0.0),
        argmax: Argmax::Ensemble(ensemble),
        converged: true,
        iterations: 0,
    })
}

/// `S(sum_k xi_k E(rho_k)) - sum_k xi_k S(E(rho_k))`.
pub fn holevo_information(params: ChannelParams, ensemble: &Ensemble) -> f64 {
    let average = params.apply(&ensemble.average()).entropy();
    let conditional: f64 = ensemble
        .entries
        .iter()
        .map(|(w, rho)| w * params.apply(rho).entropy())
        .sum();
    (average - conditional).max(0.0)
}

/// Decodes `3K` optimiser coordinates into `K` pure states (Bloch angles)
/// with softmax weights.
fn decode_ensemble(x: &[f64]) -> Ensemble {
    let k = x.len() / 3;
    let logits = &x[2 * k..];
    let top = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let raw: Vec<f64> = logits.iter().map(|l| (l - top).exp()).collect();
    let total: f64 = raw.iter().sum();
    let entries = (0..k)
        .map(|i| (raw[i] / total, QubitState::pure(x[2 * i], x[2 * i + 1])))
        .collect();
    Ensemble { entries }
}

/// Multistart maximisation of the Holevo information over ensembles of
/// `opts.ensemble_size` pure states.
pub fn c1_numeric(params: ChannelParams, opts: &OptimizerOptions) -> Result<CapacityResult> {
    opts.validate()?;
    let k = opts.ensemble_size;
    let objective = |x: &[f64]| -holevo_information(params, &decode_ensemble(x));

    let mut bounds = Vec::with_capacity(3 * k);
    for _ in 0..k {
        bounds.push((0.0, std::f64::consts::PI));
        bounds.push((0.0, std::f64::consts::TAU));
    }
    bounds.extend(std::iter::repeat_n((-1.0, 1.0), k));

    let mut rng = opts.rng();
    let starts: Vec<Vec<f64>> = (0..opts.restarts)
        .map(|_| optimize::random_point(&mut rng, &bounds))
        .collect();
    let best = optimize::multistart(&opts.nelder_mead(), &objective, starts)
        .ok_or_else(|| Error::InvalidInput("no optimizer starts".into()))?;

    Ok(CapacityResult {
        value: (-best.value).clamp(0.0, 1.0),
        argmax: Argmax::Ensemble(decode_ensemble(&best.x)),
        converged: best.converged,
        iterations: best.iterations,
    })
}

/// `C1` using the closed form where one exists (`s = 0`) and the numeric
/// search otherwise.
pub fn c1(params: ChannelParams, opts: &OptimizerOptions) -> Result<CapacityResult> {
    if params.s() == 0.0 || params.eta() == 0.0 {
        c1_fully_dephased(params.eta())
    } else if params == ChannelParams::identity() {
        let basis = Ensemble::new(vec![(0.5, QubitState::excited()), (0.5, QubitState::ground())])?;
        Ok(CapacityResult {
            value: 1.0,
            argmax: Argmax::Ensemble(basis),
            converged: true,
            iterations: 0,
        })
    } else {
        c1_numeric(params, opts)
    }
}
