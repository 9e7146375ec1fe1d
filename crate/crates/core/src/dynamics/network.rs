use nalgebra::DMatrix;

use crate::linalg::{C64, ONE};
use crate::{Error, Result};

/// Irreversible population trap attached to one site.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sink {
    /// 1-based site index feeding the sink.
    pub site: usize,
    /// `Gamma_sink`; population moves into the sink at `2 Gamma_sink`.
    pub rate: f64,
}

/// Where the receiver reads the channel output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Output {
    /// 1-based site index.
    Site(usize),
    Sink,
}

/// Network parameters. Site indices are 1-based throughout.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkSpec {
    /// Site excitation frequencies `omega_j`, rad/ps.
    pub omega: Vec<f64>,
    /// Symmetric hopping matrix `v_jl`, rad/ps, zero diagonal.
    pub hopping: Vec<Vec<f64>>,
    /// Dephasing rates `gamma_j`, ps^-1.
    pub dephasing: Vec<f64>,
    /// Dissipation rates `Gamma_j` (loss to the ground state), ps^-1.
    pub dissipation: Vec<f64>,
    pub sink: Option<Sink>,
    pub input_site: usize,
    pub output: Output,
}

impl NetworkSpec {
    /// `n` uncoupled, noiseless, degenerate sites with input 1 and output `n`.
    pub fn new(n: usize) -> Self {
        Self {
            omega: vec![0.0; n],
            hopping: vec![vec![0.0; n]; n],
            dephasing: vec![0.0; n],
            dissipation: vec![0.0; n],
            sink: None,
            input_site: 1,
            output: Output::Site(n),
        }
    }

    pub fn n_sites(&self) -> usize {
        self.omega.len()
    }

    /// Dimension of the restricted space, `N + 2`.
    pub fn dim(&self) -> usize {
        self.n_sites() + 2
    }

    /// Sets `v_jl = v_lj = value`.
    pub fn with_hopping(mut self, j: usize, l: usize, value: f64) -> Self {
        self.hopping[j - 1][l - 1] = value;
        self.hopping[l - 1][j - 1] = value;
        self
    }

    pub fn with_dephasing(mut self, site: usize, rate: f64) -> Self {
        self.dephasing[site - 1] = rate;
        self
    }

    /// Multiplies every dephasing rate by `factor`.
    pub fn scale_dephasing(&mut self, factor: f64) {
        self.dephasing.iter_mut().for_each(|g| *g *= factor);
    }

    /// Largest of `|omega_j|`, `|v_jl|`, `gamma_j`, `Gamma_j` and `Gamma_sink`.
    pub fn max_rate(&self) -> f64 {
        self.omega
            .iter()
            .chain(self.hopping.iter().flatten())
            .chain(&self.dephasing)
            .chain(&self.dissipation)
            .chain(self.sink.iter().map(|s| &s.rate))
            .fold(0.0f64, |m, x| m.max(x.abs()))
    }

    pub fn output_index(&self) -> usize {
        match self.output {
            Output::Site(j) => BasisState::Site(j).index(self.n_sites()),
            Output::Sink => BasisState::Sink.index(self.n_sites()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n_sites();
        let invalid = |msg: String| Err(Error::InvalidInput(msg));
        if n == 0 {
            return invalid("network needs at least one site".into());
        }
        for (name, v) in [("dephasing", &self.dephasing), ("dissipation", &self.dissipation)] {
            if v.len() != n {
                return invalid(format!("{name} has {} entries, expected {n}", v.len()));
            }
            if let Some((j, r)) = v.iter().enumerate().find(|(_, r)| !(r.is_finite() && **r >= 0.0)) {
                return invalid(format!("{name}[{}] = {r} must be a nonnegative rate", j + 1));
            }
        }
        if let Some(w) = self.omega.iter().find(|w| !w.is_finite()) {
            return invalid(format!("non-finite site frequency {w}"));
        }
        if self.hopping.len() != n || self.hopping.iter().any(|row| row.len() != n) {
            return invalid(format!("hopping matrix must be {n}x{n}"));
        }
        for j in 0..n {
            if self.hopping[j][j] != 0.0 {
                return invalid(format!("hopping diagonal v[{0}][{0}] must be zero", j + 1));
            }
            for l in 0..n {
                let v = self.hopping[j][l];
                if !v.is_finite() || v != self.hopping[l][j] {
                    return invalid(format!("hopping v[{}][{}] = {v} is not symmetric/finite", j + 1, l + 1));
                }
            }
        }
        if let Some(sink) = self.sink {
            if !(1..=n).contains(&sink.site) {
                return invalid(format!("sink site {} outside 1..={n}", sink.site));
            }
            if !(sink.rate.is_finite() && sink.rate >= 0.0) {
                return invalid(format!("sink rate {} must be nonnegative", sink.rate));
            }
        }
        if !(1..=n).contains(&self.input_site) {
            return invalid(format!("input site {} outside 1..={n}", self.input_site));
        }
        match self.output {
            Output::Site(j) if !(1..=n).contains(&j) => invalid(format!("output site {j} outside 1..={n}")),
            Output::Sink if self.sink.is_none() => invalid("output is the sink but no sink is attached".into()),
            _ => Ok(()),
        }
    }
}

/// Basis vectors of the restricted space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisState {
    Vacuum,
    /// 1-based site index.
    Site(usize),
    Sink,
}

impl BasisState {
    pub fn index(self, n_sites: usize) -> usize {
        match self {
            BasisState::Vacuum => 0,
            BasisState::Site(j) => j,
            BasisState::Sink => n_sites + 1,
        }
    }
}

/// A (not necessarily Hermitian) operator on the restricted space.
#[derive(Debug, Clone, PartialEq)]
pub struct EvolvedOperator {
    pub matrix: DMatrix<C64>,
}

impl EvolvedOperator {
    /// `|row><col|`.
    pub fn unit(n_sites: usize, row: BasisState, col: BasisState) -> Self {
        let d = n_sites + 2;
        let mut matrix = DMatrix::zeros(d, d);
        matrix[(row.index(n_sites), col.index(n_sites))] = ONE;
        Self { matrix }
    }

    /// `|j><j|` for a single excitation on site `j`.
    pub fn excitation(n_sites: usize, site: usize) -> Self {
        Self::unit(n_sites, BasisState::Site(site), BasisState::Site(site))
    }

    pub fn trace(&self) -> C64 {
        self.matrix.trace()
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.matrix[(row, col)]
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let d = self.matrix.nrows();
        (0..d).all(|i| (0..=i).all(|j| (self.matrix[(i, j)] - self.matrix[(j, i)].conj()).norm() <= tol))
    }

    /// Sum of the single-excitation populations.
    pub fn excitation_population(&self) -> f64 {
        let d = self.matrix.nrows();
        (1..d - 1).map(|j| self.matrix[(j, j)].re).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_catches_bad_specs() {
        let ok = NetworkSpec::new(3).with_hopping(1, 2, 1.0);
        assert!(ok.validate().is_ok());

        let mut bad = ok.clone();
        bad.dephasing[1] = -1.0;
        assert!(bad.validate().unwrap_err().to_string().contains("dephasing[2]"));

        let mut bad = ok.clone();
        bad.hopping[0][1] = 2.0;
        assert!(bad.validate().is_err());

        let mut bad = ok.clone();
        bad.output = Output::Sink;
        assert!(bad.validate().is_err());

        let mut bad = ok.clone();
        bad.input_site = 4;
        assert!(bad.validate().is_err());

        let mut bad = ok;
        bad.sink = Some(Sink { site: 0, rate: 1.0 });
        assert!(bad.validate().is_err());
    }

    #[test]
    fn basis_indices() {
        assert_eq!(BasisState::Vacuum.index(7), 0);
        assert_eq!(BasisState::Site(3).index(7), 3);
        assert_eq!(BasisState::Sink.index(7), 8);
    }

    #[test]
    fn max_rate_includes_sink() {
        let mut spec = NetworkSpec::new(2).with_hopping(1, 2, -3.0);
        assert_eq!(spec.max_rate(), 3.0);
        spec.sink = Some(Sink { site: 2, rate: 10.0 });
        assert_eq!(spec.max_rate(), 10.0);
    }
}
