use nalgebra::DMatrix;

use super::integrator::{check_positivity, IntegratorConfig, Propagator};
use super::network::{BasisState, EvolvedOperator, NetworkSpec, Output};
use crate::channel::ChannelParams;
use crate::linalg::C64;
use crate::{Error, Result};

/// Below this output population `s` is not observable and is set to 0.
pub const DEGENERATE_ETA: f64 = 1e-9;

/// Tolerance on `eta` and `s` leaving `[0, 1]` before they are clamped.
const RANGE_TOLERANCE: f64 = 1e-7;

/// Absolute error budget of the propagated entries. `s = |f|^2 / eta` divides
/// it by `eta`, so its range tolerance widens near the degenerate threshold.
const ENTRY_ERROR: f64 = 1e-11;

/// The induced channel at one time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelSample {
    pub t: f64,
    pub params: ChannelParams,
    /// Set when `eta < DEGENERATE_ETA`; `s` is then reported as 0.
    pub degenerate: bool,
}

fn unit_interval(name: &'static str, value: f64, tolerance: f64) -> Result<f64> {
    if !(value >= -tolerance && value <= 1.0 + tolerance) {
        return Err(Error::ParameterRange { name, value });
    }
    Ok(value.clamp(0.0, 1.0))
}

/// `eta` from the output population and `s = |f|^2 / eta` from the
/// output/vacuum coherence `f` of the propagated `|in><vac|`.
fn sample(spec: &NetworkSpec, t: f64, population: f64, coherence: C64) -> Result<ChannelSample> {
    let eta = unit_interval("eta", population, RANGE_TOLERANCE)?;
    if eta < DEGENERATE_ETA {
        return Ok(ChannelSample { t, params: ChannelParams::new(eta, 0.0)?, degenerate: true });
    }
    // population reaching the sink carries no coherence
    let s = match spec.output {
        Output::Sink => 0.0,
        Output::Site(_) => unit_interval("s", coherence.norm_sqr() / eta, RANGE_TOLERANCE + ENTRY_ERROR / eta)?,
    };
    Ok(ChannelSample { t, params: ChannelParams::new(eta, s)?, degenerate: false })
}

/// The channel parameters at time `t`.
pub fn extract_channel(spec: &NetworkSpec, cfg: &IntegratorConfig, t: f64) -> Result<ChannelSample> {
    trajectory(spec, cfg, &[t]).map(|mut v| v.remove(0))
}

/// Records `entry` of the evolved `initial` at every grid time, in a single
/// forward pass.
fn record(
    propagator: &mut Propagator,
    initial: EvolvedOperator,
    grid: &[f64],
    entry: (usize, usize),
    physical: bool,
) -> Result<Vec<C64>> {
    let mut x: DMatrix<C64> = initial.matrix;
    let mut now = 0.0;
    let mut out = Vec::with_capacity(grid.len());
    for &t in grid {
        propagator.advance(&mut x, t - now);
        now = t;
        if physical {
            check_positivity(&x, t)?;
        }
        out.push(x[entry]);
    }
    Ok(out)
}

fn max_deviation(a: &[C64], b: &[C64]) -> (usize, f64) {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .enumerate()
        .fold((0, 0.0), |acc, (i, d)| if d > acc.1 { (i, d) } else { acc })
}

/// `(eta, s)` along an ascending time grid. The population run (`|in><in|`)
/// and the coherence run (`|in><vac|`) are independent and run concurrently.
pub fn trajectory(spec: &NetworkSpec, cfg: &IntegratorConfig, t_grid: &[f64]) -> Result<Vec<ChannelSample>> {
    if t_grid.iter().any(|t| t.is_nan() || *t < 0.0) || t_grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidInput("time grid must be nonnegative and ascending".into()));
    }
    if let Some(&last) = t_grid.last() {
        if last > cfg.t_max * (1.0 + 1e-12) {
            return Err(Error::InvalidInput(format!("time {last} beyond t_max = {}", cfg.t_max)));
        }
    }
    let propagator = Propagator::new(spec, cfg)?;
    let n = spec.n_sites();
    let out = spec.output_index();
    let vacuum = BasisState::Vacuum.index(n);
    let input = BasisState::Site(spec.input_site);

    let run = |propagator: &Propagator| -> Result<(Vec<C64>, Vec<C64>)> {
        let (mut a, mut b) = (propagator.clone(), propagator.clone());
        let (pops, cohs) = rayon::join(
            || record(&mut a, EvolvedOperator::unit(n, input, input), t_grid, (out, out), true),
            || record(&mut b, EvolvedOperator::unit(n, input, BasisState::Vacuum), t_grid, (out, vacuum), false),
        );
        Ok((pops?, cohs?))
    };

    let (pops, cohs) = run(&propagator)?;
    if let Some(tolerance) = cfg.richardson_tolerance {
        let (fine_pops, fine_cohs) = run(&propagator.refined())?;
        for (coarse, fine) in [(&pops, &fine_pops), (&cohs, &fine_cohs)] {
            let (i, deviation) = max_deviation(coarse, fine);
            if deviation > tolerance {
                return Err(Error::Accuracy { time: t_grid[i], deviation, tolerance });
            }
        }
    }

    t_grid
        .iter()
        .zip(pops.iter().zip(&cohs))
        .map(|(&t, (pop, coh))| sample(spec, t, pop.re, *coh))
        .collect()
}
