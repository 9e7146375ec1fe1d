//! Small dense complex linear algebra helpers shared across modules.

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type Mat2 = Matrix2<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

#[inline]
pub fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Eigenvalues of a Hermitian matrix, ascending. Only the lower triangle is
/// trusted; the upper triangle is overwritten by its conjugate first.
pub fn hermitian_eigenvalues(m: &DMatrix<C64>) -> Vec<f64> {
    let n = m.nrows();
    let mut h = m.clone();
    for i in 0..n {
        h[(i, i)] = real(h[(i, i)].re);
        for j in 0..i {
            h[(j, i)] = h[(i, j)].conj();
        }
    }
    let mut ev: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Shannon entropy in bits of a spectrum, with `0 log 0 = 0`. Entries at or
/// below zero contribute nothing.
pub fn spectrum_entropy(values: &[f64]) -> f64 {
    values
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| -x * x.log2())
        .sum()
}

/// Largest elementwise modulus of `a - b`.
pub fn max_abs_diff(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn mat2_to_dynamic(m: &Mat2) -> DMatrix<C64> {
    DMatrix::from_fn(2, 2, |i, j| m[(i, j)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigenvalues_of_pauli_y() {
        let y = DMatrix::from_row_slice(2, 2, &[ZERO, C64::new(0.0, -1.0), C64::new(0.0, 1.0), ZERO]);
        let ev = hermitian_eigenvalues(&y);
        assert!((ev[0] + 1.0).abs() < 1e-14 && (ev[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn spectrum_entropy_ignores_zeros() {
        assert_eq!(spectrum_entropy(&[1.0, 0.0, 0.0]), 0.0);
        assert!((spectrum_entropy(&[0.25; 4]) - 2.0).abs() < 1e-15);
    }
}
