use std::f64::consts::PI;

use super::{Argmax, CapacityResult, OptimizerOptions};
use crate::channel::{exchange_entropy, ChannelParams, QubitState};
use crate::linalg::real;
use crate::optimize;
use crate::{Error, Result};

/// `S(E(rho)) - S(W)`; negative values are possible.
pub fn coherent_information(params: ChannelParams, rho: &QubitState) -> f64 {
    params.apply(rho).entropy() - exchange_entropy(params, rho)
}

/// Maps `(a, b)` to `p = (1 - cos a)/2` and a real coherence
/// `sin^2(b) sqrt(p (1 - p))`, covering every state with real `gamma >= 0`.
fn decode_state(x: &[f64]) -> QubitState {
    let p = 0.5 * (1.0 - x[0].cos());
    let g = x[1].sin().powi(2) * (p * (1.0 - p)).max(0.0).sqrt();
    QubitState::new(p, real(g)).expect("decoded state is valid")
}

/// `Q1 = max(0, max_rho coherent_information)`.
///
/// Exactly zero for `eta <= 1/2`, where the damping factor of the channel is
/// anti-degradable. Otherwise inputs are searched over real `gamma >= 0`,
/// which loses nothing because the channel commutes with phase rotations.
pub fn q1_numeric(params: ChannelParams, opts: &OptimizerOptions) -> Result<CapacityResult> {
    opts.validate()?;
    if params.eta() <= 0.5 {
        return Ok(CapacityResult {
            value: 0.0,
            argmax: Argmax::State(QubitState::maximally_mixed()),
            converged: true,
            iterations: 0,
        });
    }
    let objective = |x: &[f64]| -coherent_information(params, &decode_state(x));
    let mut rng = opts.rng();
    let bounds = [(0.0, PI), (0.0, 0.5 * PI)];
    let starts: Vec<Vec<f64>> = std::iter::once(vec![0.5 * PI, 0.0])
        .chain((1..opts.restarts).map(|_| optimize::random_point(&mut rng, &bounds)))
        .collect();
    let best = optimize::multistart(&opts.nelder_mead(), &objective, starts)
        .ok_or_else(|| Error::InvalidInput("no optimizer starts".into()))?;
    // gains below the optimizer tolerance are indistinguishable from zero
    let value = -best.value;
    let value = if value < opts.tolerance { 0.0 } else { value.min(1.0) };
    Ok(CapacityResult {
        value,
        argmax: Argmax::State(decode_state(&best.x)),
        converged: best.converged,
        iterations: best.iterations,
    })
}
