use nalgebra::DMatrix;

use super::network::{BasisState, EvolvedOperator, NetworkSpec};
use crate::linalg::{real, C64};
use crate::Result;

/// A quantum jump `X -> rate * X[from, from] |to><to|`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Jump {
    from: usize,
    to: usize,
    rate: f64,
}

/// The generator `dX/dt = -i (H_eff X - X H_eff^dagger) + sum_k c_k X c_k^dagger`
/// restricted to the vacuum + single-excitation + sink space.
#[derive(Debug, Clone, PartialEq)]
pub struct Liouvillian {
    h_eff: DMatrix<C64>,
    h_eff_adjoint: DMatrix<C64>,
    jumps: Vec<Jump>,
}

/// Builds the generator for `spec`:
///
/// * coherent part: `h_jj = omega_j`, `h_jl = v_jl` on the sites;
/// * dephasing `gamma_j [2 P_j X P_j - {P_j, X}]`;
/// * dissipation `Gamma_j [2 s_j X s_j^+ - {s_j^+ s_j, X}]` with `s_j = |vac><j|`;
/// * sink `Gamma_sink [2 t X t^+ - {t^+ t, X}]` with `t = |sink><k|`.
pub fn liouvillian(spec: &NetworkSpec) -> Result<Liouvillian> {
    spec.validate()?;
    let n = spec.n_sites();
    let d = spec.dim();
    let mut h_eff = DMatrix::zeros(d, d);
    let mut jumps = Vec::new();
    for j in 1..=n {
        let site = BasisState::Site(j).index(n);
        let mut decay = spec.dephasing[j - 1] + spec.dissipation[j - 1];
        if let Some(sink) = spec.sink.filter(|s| s.site == j) {
            decay += sink.rate;
            jumps.push(Jump { from: site, to: BasisState::Sink.index(n), rate: 2.0 * sink.rate });
        }
        h_eff[(site, site)] = C64::new(spec.omega[j - 1], -decay);
        for l in 1..=n {
            if l != j {
                h_eff[(site, BasisState::Site(l).index(n))] = real(spec.hopping[j - 1][l - 1]);
            }
        }
        if spec.dephasing[j - 1] > 0.0 {
            jumps.push(Jump { from: site, to: site, rate: 2.0 * spec.dephasing[j - 1] });
        }
        if spec.dissipation[j - 1] > 0.0 {
            jumps.push(Jump { from: site, to: BasisState::Vacuum.index(n), rate: 2.0 * spec.dissipation[j - 1] });
        }
    }
    let h_eff_adjoint = h_eff.adjoint();
    Ok(Liouvillian { h_eff, h_eff_adjoint, jumps })
}

impl Liouvillian {
    pub fn dim(&self) -> usize {
        self.h_eff.nrows()
    }

    /// Writes `L(x)` into `out`.
    pub fn apply_into(&self, x: &DMatrix<C64>, out: &mut DMatrix<C64>) {
        let minus_i = C64::new(0.0, -1.0);
        out.gemm(minus_i, &self.h_eff, x, C64::new(0.0, 0.0));
        out.gemm(-minus_i, x, &self.h_eff_adjoint, C64::new(1.0, 0.0));
        for jump in &self.jumps {
            out[(jump.to, jump.to)] += x[(jump.from, jump.from)] * jump.rate;
        }
    }

    pub fn apply(&self, x: &EvolvedOperator) -> EvolvedOperator {
        let mut out = DMatrix::zeros(self.dim(), self.dim());
        self.apply_into(&x.matrix, &mut out);
        EvolvedOperator { matrix: out }
    }
}
