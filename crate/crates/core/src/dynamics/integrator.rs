use nalgebra::DMatrix;

use super::liouvillian::{liouvillian, Liouvillian};
use super::network::{EvolvedOperator, NetworkSpec};
use crate::linalg::{self, C64};
use crate::{Error, Result};

/// Upper bound on `dt * max rate` accepted by the integrator.
pub const STEP_LIMIT: f64 = 0.05;

/// `dt * max rate` used by [`IntegratorConfig::for_spec`].
pub const DEFAULT_STEP_FACTOR: f64 = 0.002;

/// Allowed negative eigenvalue for states that started out physical.
const POSITIVITY_TOLERANCE: f64 = 1e-7;

/// Fixed-step classical RK4 settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig {
    pub dt: f64,
    pub t_max: f64,
    /// When set, every propagation is repeated at `dt / 2` and entries may
    /// not differ by more than this.
    pub richardson_tolerance: Option<f64>,
}

impl IntegratorConfig {
    /// Step `DEFAULT_STEP_FACTOR / max rate` (or `DEFAULT_STEP_FACTOR` for a
    /// rate-free network).
    pub fn for_spec(spec: &NetworkSpec, t_max: f64) -> Self {
        let rate = spec.max_rate();
        let dt = if rate > 0.0 { DEFAULT_STEP_FACTOR / rate } else { DEFAULT_STEP_FACTOR };
        Self { dt, t_max, richardson_tolerance: None }
    }

    pub fn validate(&self, spec: &NetworkSpec) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::InvalidInput(format!("time step {} must be positive", self.dt)));
        }
        if !(self.t_max >= 0.0 && self.t_max.is_finite()) {
            return Err(Error::InvalidInput(format!("t_max {} must be nonnegative", self.t_max)));
        }
        let product = self.dt * spec.max_rate();
        if product > STEP_LIMIT {
            return Err(Error::StepSize { dt: self.dt, product, limit: STEP_LIMIT });
        }
        Ok(())
    }
}

/// RK4 stepper holding the generator and scratch buffers.
#[derive(Debug, Clone)]
pub struct Propagator {
    generator: Liouvillian,
    dt: f64,
    k: [DMatrix<C64>; 4],
    stage: DMatrix<C64>,
}

impl Propagator {
    pub fn new(spec: &NetworkSpec, cfg: &IntegratorConfig) -> Result<Self> {
        let generator = liouvillian(spec)?;
        cfg.validate(spec)?;
        let d = generator.dim();
        let zero = DMatrix::zeros(d, d);
        Ok(Self {
            generator,
            dt: cfg.dt,
            k: [zero.clone(), zero.clone(), zero.clone(), zero.clone()],
            stage: zero,
        })
    }

    /// Halves the nominal step.
    pub fn refined(&self) -> Self {
        Self { dt: 0.5 * self.dt, ..self.clone() }
    }

    /// Advances `x` by `duration` using `ceil(duration / dt)` equal steps.
    pub fn advance(&mut self, x: &mut DMatrix<C64>, duration: f64) {
        if duration <= 0.0 {
            return;
        }
        let steps = (duration / self.dt).ceil().max(1.0) as usize;
        let h = duration / steps as f64;
        for _ in 0..steps {
            self.step(x, h);
        }
    }

    fn step(&mut self, x: &mut DMatrix<C64>, h: f64) {
        let [k1, k2, k3, k4] = &mut self.k;
        self.generator.apply_into(x, k1);
        shifted(&mut self.stage, x, 0.5 * h, k1);
        self.generator.apply_into(&self.stage, k2);
        shifted(&mut self.stage, x, 0.5 * h, k2);
        self.generator.apply_into(&self.stage, k3);
        shifted(&mut self.stage, x, h, k3);
        self.generator.apply_into(&self.stage, k4);
        let sixth = h / 6.0;
        for (i, xi) in x.iter_mut().enumerate() {
            *xi += (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * sixth;
        }
    }
}

/// `out = x + h * k`.
fn shifted(out: &mut DMatrix<C64>, x: &DMatrix<C64>, h: f64, k: &DMatrix<C64>) {
    for ((o, a), b) in out.iter_mut().zip(x.iter()).zip(k.iter()) {
        *o = a + b * h;
    }
}

/// Checks that a propagated physical state is still positive semidefinite.
pub(crate) fn check_positivity(x: &DMatrix<C64>, time: f64) -> Result<()> {
    let min = linalg::hermitian_eigenvalues(x).first().copied().unwrap_or(0.0);
    if min < -POSITIVITY_TOLERANCE {
        return Err(Error::Positivity { time, eigenvalue: min });
    }
    Ok(())
}

/// Evolves `initial` for time `t` under the network's Lindblad generator.
pub fn propagate(spec: &NetworkSpec, initial: &EvolvedOperator, cfg: &IntegratorConfig, t: f64) -> Result<EvolvedOperator> {
    if t.is_nan() || t < 0.0 || t > cfg.t_max * (1.0 + 1e-12) {
        return Err(Error::InvalidInput(format!("time {t} outside [0, t_max = {}]", cfg.t_max)));
    }
    if initial.matrix.nrows() != spec.dim() || initial.matrix.ncols() != spec.dim() {
        return Err(Error::InvalidInput(format!(
            "operator is {}x{}, network needs {}x{}",
            initial.matrix.nrows(),
            initial.matrix.ncols(),
            spec.dim(),
            spec.dim()
        )));
    }
    let mut propagator = Propagator::new(spec, cfg)?;
    let mut x = initial.matrix.clone();
    propagator.advance(&mut x, t);

    if let Some(tolerance) = cfg.richardson_tolerance {
        let mut fine = initial.matrix.clone();
        propagator.refined().advance(&mut fine, t);
        let deviation = linalg::max_abs_diff(&x, &fine);
        if deviation > tolerance {
            return Err(Error::Accuracy { time: t, deviation, tolerance });
        }
    }
    if initial.is_hermitian(1e-12) {
        check_positivity(&x, t)?;
    }
    Ok(EvolvedOperator { matrix: x })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::BasisState;

    #[test]
    fn zero_time_is_identity() {
        let spec = NetworkSpec::new(2).with_hopping(1, 2, 1.0).with_dephasing(1, 0.3);
        let cfg = IntegratorConfig::for_spec(&spec, 1.0);
        let x = EvolvedOperator::unit(2, BasisState::Site(1), BasisState::Vacuum);
        assert_eq!(propagate(&spec, &x, &cfg, 0.0).unwrap(), x);
    }

    #[test]
    fn step_size_violation() {
        let spec = NetworkSpec::new(2).with_hopping(1, 2, 10.0);
        let cfg = IntegratorConfig { dt: 0.01, t_max: 1.0, richardson_tolerance: None };
        let err = propagate(&spec, &EvolvedOperator::excitation(2, 1), &cfg, 0.5).unwrap_err();
        assert!(matches!(err, Error::StepSize { .. }));
    }

    #[test]
    fn time_beyond_t_max_rejected() {
        let spec = NetworkSpec::new(1);
        let cfg = IntegratorConfig::for_spec(&spec, 1.0);
        assert!(propagate(&spec, &EvolvedOperator::excitation(1, 1), &cfg, 2.0).is_err());
    }

    #[test]
    fn single_site_coherence_decay() {
        let (omega, gamma, t) = (1.3, 0.7, 2.0);
        let mut spec = NetworkSpec::new(1).with_dephasing(1, gamma);
        spec.omega[0] = omega;
        let cfg = IntegratorConfig::for_spec(&spec, t);
        let x = EvolvedOperator::unit(1, BasisState::Site(1), BasisState::Vacuum);
        let out = propagate(&spec, &x, &cfg, t).unwrap();
        let expected = C64::from_polar((-gamma * t).exp(), -omega * t);
        assert!((out.entry(1, 0) - expected).norm() < 1e-10);
    }

    #[test]
    fn richardson_check_passes_and_fails() {
        let spec = NetworkSpec::new(2).with_hopping(1, 2, 1.0);
        let mut cfg = IntegratorConfig { dt: 0.05, t_max: 5.0, richardson_tolerance: Some(1e-5) };
        assert!(propagate(&spec, &EvolvedOperator::excitation(2, 1), &cfg, 5.0).is_ok());
        cfg.richardson_tolerance = Some(1e-8);
        assert!(matches!(
            propagate(&spec, &EvolvedOperator::excitation(2, 1), &cfg, 5.0),
            Err(Error::Accuracy { .. })
        ));
    }
}
