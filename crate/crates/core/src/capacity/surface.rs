use rayon::prelude::*;

use super::{c1, q1_numeric, OptimizerOptions};
use crate::channel::{channel_entropy, channel_fidelity, ChannelParams};
use crate::optimize::mix_seed;
use crate::Result;

/// One `(eta, s)` cell of a capacity surface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceRow {
    pub eta: f64,
    pub s: f64,
    pub c1: f64,
    pub q1: f64,
    pub fidelity: f64,
    pub entropy: f64,
    pub c1_converged: bool,
    pub q1_converged: bool,
}

impl SurfaceRow {
    pub fn converged(&self) -> bool {
        self.c1_converged && self.q1_converged
    }

    pub fn compute(params: ChannelParams, opts: &OptimizerOptions) -> Result<Self> {
        let c = c1(params, opts)?;
        let q = q1_numeric(params, opts)?;
        Ok(Self {
            eta: params.eta(),
            s: params.s(),
            c1: c.value,
            q1: q.value,
            fidelity: channel_fidelity(params),
            entropy: channel_entropy(params),
            c1_converged: c.converged,
            q1_converged: q.converged,
        })
    }
}

/// Evaluates every `(eta, s)` pair, `eta`-major. Cells run in parallel, each
/// with its own seed derived from `(opts.seed, cell index)`, so the table does
/// not depend on scheduling.
pub fn capacity_surface(eta_grid: &[f64], s_grid: &[f64], opts: &OptimizerOptions) -> Result<Vec<SurfaceRow>> {
    opts.validate()?;
    let cells: Vec<ChannelParams> = eta_grid
        .iter()
        .flat_map(|&eta| s_grid.iter().map(move |&s| ChannelParams::new(eta, s)))
        .collect::<Result<_>>()?;
    cells
        .par_iter()
        .enumerate()
        .map(|(i, &params)| SurfaceRow::compute(params, &opts.with_seed(mix_seed(opts.seed, i as u64))))
        .collect()
}
