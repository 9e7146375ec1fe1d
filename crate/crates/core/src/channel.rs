//! The two-parameter qubit channel family `E(eta, s)`.
//!
//! Basis ordering puts the excited state `|1>` first, so the population `p`
//! sits in the top-left entry of every 2x2 density matrix in this module.
//!
//! `E(eta, s)` factorises into an amplitude damping channel `D(eta)` and a
//! phase flip `N(s)` that flips the sign of `|1>` with probability
//! `(1 - sqrt(s)) / 2`; the two factors commute.

use nalgebra::{DMatrix, Matrix4};

use crate::linalg::{self, real, Mat2, C64, ONE, ZERO};
use crate::{Error, Result};

/// Slack allowed when validating user-supplied states and parameters.
pub const INPUT_TOLERANCE: f64 = 1e-9;

/// A qubit density matrix `[[p, gamma], [conj(gamma), 1 - p]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    p: f64,
    gamma: C64,
}

impl QubitState {
    /// Validates `0 <= p <= 1` and `|gamma|^2 <= p (1 - p)` up to
    /// [`INPUT_TOLERANCE`]; `p` is clamped into `[0, 1]`.
    pub fn new(p: f64, gamma: C64) -> Result<Self> {
        if !p.is_finite() || !gamma.re.is_finite() || !gamma.im.is_finite() {
            return Err(Error::InvalidInput(format!(
                "non-finite qubit state (p = {p}, gamma = {gamma})"
            )));
        }
        if !(-INPUT_TOLERANCE..=1.0 + INPUT_TOLERANCE).contains(&p) {
            return Err(Error::InvalidInput(format!("population p = {p} outside [0, 1]")));
        }
        let p = p.clamp(0.0, 1.0);
        if gamma.norm_sqr() > p * (1.0 - p) + INPUT_TOLERANCE {
            return Err(Error::InvalidInput(format!(
                "|gamma|^2 = {} exceeds p(1 - p) = {}",
                gamma.norm_sqr(),
                p * (1.0 - p)
            )));
        }
        Ok(Self { p, gamma })
    }

    pub fn diagonal(p: f64) -> Result<Self> {
        Self::new(p, ZERO)
    }

    pub fn excited() -> Self {
        Self { p: 1.0, gamma: ZERO }
    }

    pub fn ground() -> Self {
        Self { p: 0.0, gamma: ZERO }
    }

    pub fn maximally_mixed() -> Self {
        Self { p: 0.5, gamma: ZERO }
    }

    /// Pure state with Bloch polar angle `theta` (measured from `|1>`) and
    /// azimuth `phi`.
    pub fn pure(theta: f64, phi: f64) -> Self {
        let (half_sin, half_cos) = (0.5 * theta).sin_cos();
        Self {
            p: half_cos * half_cos,
            gamma: C64::from_polar(half_sin * half_cos, -phi),
        }
    }

    /// Reads `(p, gamma)` from a 2x2 matrix, checking Hermiticity and unit
    /// trace within [`INPUT_TOLERANCE`].
    pub fn from_matrix(m: &Mat2) -> Result<Self> {
        let trace = m[(0, 0)] + m[(1, 1)];
        if (trace - ONE).norm() > INPUT_TOLERANCE {
            return Err(Error::InvalidInput(format!("trace {trace} is not 1")));
        }
        if (m[(0, 1)] - m[(1, 0)].conj()).norm() > INPUT_TOLERANCE
            || m[(0, 0)].im.abs() > INPUT_TOLERANCE
            || m[(1, 1)].im.abs() > INPUT_TOLERANCE
        {
            return Err(Error::InvalidInput("matrix is not Hermitian".into()));
        }
        Self::new(m[(0, 0)].re, m[(0, 1)])
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn gamma(&self) -> C64 {
        self.gamma
    }

    pub fn matrix(&self) -> Mat2 {
        Mat2::new(real(self.p), self.gamma, self.gamma.conj(), real(1.0 - self.p))
    }

    /// Eigenvalues `1/2 -+ sqrt((p - 1/2)^2 + |gamma|^2)`, ascending.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let r = ((self.p - 0.5).powi(2) + self.gamma.norm_sqr()).sqrt().min(0.5);
        [0.5 - r, 0.5 + r]
    }

    /// Von Neumann entropy in bits.
    pub fn entropy(&self) -> f64 {
        linalg::spectrum_entropy(&self.eigenvalues())
    }

    /// Rotates the coherence by `exp(-i phi)`, the action of
    /// `diag(exp(-i phi/2), exp(i phi/2))`.
    pub fn phase_rotated(&self, phi: f64) -> Self {
        Self {
            p: self.p,
            gamma: self.gamma * C64::from_polar(1.0, -phi),
        }
    }
}

/// The pair `(eta, s)` selecting one member of the channel family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    eta: f64,
    s: f64,
}

impl ChannelParams {
    pub fn new(eta: f64, s: f64) -> Result<Self> {
        let check = |name: &str, x: f64| {
            if x.is_finite() && (-INPUT_TOLERANCE..=1.0 + INPUT_TOLERANCE).contains(&x) {
                Ok(x.clamp(0.0, 1.0))
            } else {
                Err(Error::InvalidInput(format!("{name} = {x} outside [0, 1]")))
            }
        };
        Ok(Self {
            eta: check("eta", eta)?,
            s: check("s", s)?,
        })
    }

    pub const fn identity() -> Self {
        Self { eta: 1.0, s: 1.0 }
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    /// Coherence scaling factor `sqrt(eta s)`.
    pub fn coherence_factor(&self) -> f64 {
        (self.eta * self.s).sqrt()
    }

    pub fn apply(&self, rho: &QubitState) -> QubitState {
        QubitState {
            p: self.eta * rho.p,
            gamma: rho.gamma * self.coherence_factor(),
        }
    }

    /// Linear extension of the channel to arbitrary 2x2 matrices.
    pub fn apply_matrix(&self, m: &Mat2) -> Mat2 {
        let c = self.coherence_factor();
        Mat2::new(
            m[(0, 0)] * self.eta,
            m[(0, 1)] * c,
            m[(1, 0)] * c,
            m[(1, 1)] + m[(0, 0)] * (1.0 - self.eta),
        )
    }

    pub fn kraus(&self) -> KrausSet {
        kraus_set(*self)
    }

    pub fn choi(&self) -> ChoiState {
        ChoiState::from_kraus(&self.kraus())
    }

    pub fn fidelity(&self) -> f64 {
        channel_fidelity(*self)
    }

    pub fn entropy(&self) -> f64 {
        channel_entropy(*self)
    }
}

/// Applies `E(eta, s)`: `(p, gamma) -> (eta p, sqrt(eta s) gamma)`.
pub fn apply_channel(params: ChannelParams, rho: &QubitState) -> QubitState {
    params.apply(rho)
}

/// An ordered list of 2x2 Kraus operators.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausSet {
    operators: Vec<Mat2>,
}

impl KrausSet {
    pub fn new(operators: Vec<Mat2>) -> Self {
        Self { operators }
    }

    pub fn operators(&self) -> &[Mat2] {
        &self.operators
    }

    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    /// `sum_k A_k^dagger A_k`.
    pub fn completeness_sum(&self) -> Mat2 {
        self.operators
            .iter()
            .fold(Mat2::zeros(), |acc, a| acc + a.adjoint() * a)
    }

    /// Largest elementwise deviation of the completeness sum from identity.
    pub fn completeness_deviation(&self) -> f64 {
        (self.completeness_sum() - Mat2::identity())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn apply_matrix(&self, m: &Mat2) -> Mat2 {
        self.operators
            .iter()
            .fold(Mat2::zeros(), |acc, a| acc + a * m * a.adjoint())
    }

    pub fn apply(&self, rho: &QubitState) -> Result<QubitState> {
        QubitState::from_matrix(&self.apply_matrix(&rho.matrix()))
    }

    /// Environment matrix `W_ij = tr[A_i rho A_j^dagger]`.
    pub fn exchange_matrix(&self, rho: &QubitState) -> DMatrix<C64> {
        let m = rho.matrix();
        let left: Vec<Mat2> = self.operators.iter().map(|a| a * m).collect();
        let k = self.operators.len();
        DMatrix::from_fn(k, k, |i, j| (left[i] * self.operators[j].adjoint()).trace())
    }

    /// Unitary remixing `A'_i = sum_j u_ij A_j`, which realises the same
    /// channel whenever `u` is unitary.
    pub fn remix(&self, u: &DMatrix<C64>) -> Result<Self> {
        if u.nrows() != self.len() || u.ncols() != self.len() {
            return Err(Error::InvalidInput(format!(
                "remix matrix is {}x{}, expected {}x{}",
                u.nrows(),
                u.ncols(),
                self.len(),
                self.len()
            )));
        }
        let operators = (0..self.len())
            .map(|i| {
                self.operators
                    .iter()
                    .enumerate()
                    .fold(Mat2::zeros(), |acc, (j, a)| acc + a * u[(i, j)])
            })
            .collect();
        Ok(Self { operators })
    }

    /// Pads the list with zero operators up to `len`.
    pub fn padded(&self, len: usize) -> Self {
        let mut operators = self.operators.clone();
        operators.resize(len.max(self.len()), Mat2::zeros());
        Self { operators }
    }
}

/// Kraus set for `E(eta, s)` obtained from `N(s) o D(eta)` after merging the
/// two operators proportional to the damping jump:
///
/// * `B1 = sqrt((1 + sqrt s)/2) diag(sqrt eta, 1)`
/// * `B2 = sqrt(1 - eta) |0><1|`
/// * `B3 = sqrt((1 - sqrt s)/2) diag(sqrt eta, -1)`
pub fn kraus_set(params: ChannelParams) -> KrausSet {
    let root_s = params.s.sqrt();
    let root_eta = params.eta.sqrt();
    let keep = (0.5 * (1.0 + root_s)).sqrt();
    let flip = (0.5 * (1.0 - root_s)).sqrt();
    KrausSet::new(vec![
        Mat2::new(real(keep * root_eta), ZERO, ZERO, real(keep)),
        jump(params.eta),
        Mat2::new(real(flip * root_eta), ZERO, ZERO, real(-flip)),
    ])
}

fn jump(eta: f64) -> Mat2 {
    Mat2::new(ZERO, ZERO, real((1.0 - eta).sqrt()), ZERO)
}

/// Amplitude damping `D(eta)`: excited population survives with probability
/// `eta`.
pub fn amplitude_damping(eta: f64) -> Result<KrausSet> {
    let eta = ChannelParams::new(eta, 1.0)?.eta;
    Ok(KrausSet::new(vec![
        Mat2::new(real(eta.sqrt()), ZERO, ZERO, ONE),
        jump(eta),
    ]))
}

/// Phase flip `N(s)`: applies `Z` with probability `(1 - sqrt s)/2`.
pub fn phase_flip(s: f64) -> Result<KrausSet> {
    let s = ChannelParams::new(1.0, s)?.s;
    let q = 0.5 * (1.0 - s.sqrt());
    Ok(KrausSet::new(vec![
        Mat2::identity() * real((1.0 - q).sqrt()),
        Mat2::new(ONE, ZERO, ZERO, -ONE) * real(q.sqrt()),
    ]))
}

/// `outer o inner`: apply `inner` first. Produces all products `A_i B_j`.
pub fn compose(outer: &KrausSet, inner: &KrausSet) -> KrausSet {
    let operators = outer
        .operators
        .iter()
        .flat_map(|a| inner.operators.iter().map(move |b| a * b))
        .collect();
    KrausSet::new(operators)
}

/// The Choi state `R = (E x id)(|Phi><Phi|)` with `|Phi> = (|00> + |11>)/sqrt 2`.
/// Index `2a + b` labels channel output `a` and reference `b`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChoiState {
    matrix: Matrix4<C64>,
}

impl ChoiState {
    pub fn from_kraus(kraus: &KrausSet) -> Self {
        let mut matrix = Matrix4::zeros();
        for i in 0..2 {
            for j in 0..2 {
                let mut unit = Mat2::zeros();
                unit[(i, j)] = ONE;
                let image = kraus.apply_matrix(&unit);
                for a in 0..2 {
                    for c in 0..2 {
                        matrix[(2 * a + i, 2 * c + j)] = image[(a, c)] * 0.5;
                    }
                }
            }
        }
        Self { matrix }
    }

    pub fn matrix(&self) -> &Matrix4<C64> {
        &self.matrix
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::hermitian_eigenvalues(&DMatrix::from_fn(4, 4, |i, j| self.matrix[(i, j)]))
    }

    /// `<Phi| R |Phi>`.
    pub fn entanglement_fidelity(&self) -> f64 {
        let idx = [0, 3];
        let sum: C64 = idx
            .iter()
            .flat_map(|&i| idx.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.matrix[(i, j)])
            .sum();
        0.5 * sum.re
    }

    pub fn entropy(&self) -> f64 {
        linalg::spectrum_entropy(&self.eigenvalues())
    }
}

pub fn choi_state(params: ChannelParams) -> ChoiState {
    params.choi()
}

/// `F(R) = (1 + eta + 2 sqrt(eta s)) / 4`.
pub fn channel_fidelity(params: ChannelParams) -> f64 {
    0.25 * (1.0 + params.eta + 2.0 * params.coherence_factor())
}

/// The non-trivial Choi eigenvalues: `(1 - eta)/2` and
/// `(1 + eta +- sqrt(4 eta s + (1 - eta)^2)) / 4`. The fourth eigenvalue is 0.
pub fn choi_eigenvalues(params: ChannelParams) -> [f64; 3] {
    let ChannelParams { eta, s } = params;
    let root = (4.0 * eta * s + (1.0 - eta).powi(2)).sqrt();
    [
        0.5 * (1.0 - eta),
        0.25 * (1.0 + eta + root),
        (0.25 * (1.0 + eta - root)).max(0.0),
    ]
}

/// `S(R)`, entropy in bits of the Choi state.
pub fn channel_entropy(params: ChannelParams) -> f64 {
    linalg::spectrum_entropy(&choi_eigenvalues(params))
}

/// Von Neumann entropy in bits of a Hermitian positive semidefinite matrix.
pub fn von_neumann_entropy(matrix: &DMatrix<C64>) -> Result<f64> {
    if !matrix.is_square() {
        return Err(Error::InvalidInput("density matrix must be square".into()));
    }
    let ev = linalg::hermitian_eigenvalues(matrix);
    if let Some(&min) = ev.first() {
        if min < -INPUT_TOLERANCE {
            return Err(Error::InvalidInput(format!("negative eigenvalue {min:e}")));
        }
    }
    Ok(linalg::spectrum_entropy(&ev))
}

/// Entropy `S(W)` of the environment after the channel acts on `rho`.
pub fn exchange_entropy(params: ChannelParams, rho: &QubitState) -> f64 {
    kraus_exchange_entropy(&params.kraus(), rho)
}

/// Exchange entropy for an arbitrary Kraus realisation.
pub fn kraus_exchange_entropy(kraus: &KrausSet, rho: &QubitState) -> f64 {
    let w = kraus.exchange_matrix(rho);
    linalg::spectrum_entropy(&linalg::hermitian_eigenvalues(&w))
}
