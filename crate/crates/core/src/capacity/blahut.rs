use crate::{Error, Result};

/// Capacity of a discrete memoryless channel together with the optimal input
/// distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalCapacity {
    pub bits: f64,
    pub input: Vec<f64>,
    pub iterations: usize,
}

const MAX_ITERATIONS: usize = 1_000_000;

/// Blahut-Arimoto capacity in bits of the channel with transition matrix
/// `w[x][y] = P(y | x)`.
pub fn blahut_arimoto(transition: &[Vec<f64>], tolerance: f64) -> Result<f64> {
    blahut_arimoto_with_input(transition, tolerance).map(|c| c.bits)
}

/// As [`blahut_arimoto`], also returning the capacity-achieving input. Stops
/// when the gap between the upper bound `max_x D(x)` and the lower bound
/// `log2 sum_x p(x) 2^D(x)` falls below `tolerance`.
pub fn blahut_arimoto_with_input(transition: &[Vec<f64>], tolerance: f64) -> Result<ClassicalCapacity> {
    validate(transition)?;
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(Error::InvalidInput("tolerance must be positive".into()));
    }
    let n_in = transition.len();
    let n_out = transition[0].len();
    let mut input = vec![1.0 / n_in as f64; n_in];
    let mut divergence = vec![0.0; n_in];

    for iteration in 1..=MAX_ITERATIONS {
        let output: Vec<f64> = (0..n_out)
            .map(|y| (0..n_in).map(|x| input[x] * transition[x][y]).sum())
            .collect();
        for (x, row) in transition.iter().enumerate() {
            divergence[x] = row
                .iter()
                .zip(&output)
                .filter(|(&w, _)| w > 0.0)
                .map(|(&w, &q)| w * (w / q).log2())
                .sum();
        }
        let weights: Vec<f64> = input.iter().zip(&divergence).map(|(p, d)| p * d.exp2()).collect();
        let total: f64 = weights.iter().sum();
        let lower = total.log2();
        let upper = divergence.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if upper - lower < tolerance {
            return Ok(ClassicalCapacity {
                bits: lower.max(0.0),
                input,
                iterations: iteration,
            });
        }
        input = weights.into_iter().map(|w| w / total).collect();
    }
    Err(Error::NotConverged(format!(
        "Blahut-Arimoto did not reach tolerance {tolerance} in {MAX_ITERATIONS} iterations"
    )))
}

fn validate(transition: &[Vec<f64>]) -> Result<()> {
    let width = transition.first().map(Vec::len).unwrap_or(0);
    if width == 0 {
        return Err(Error::NonStochastic("empty matrix".into()));
    }
    for (x, row) in transition.iter().enumerate() {
        if row.len() != width {
            return Err(Error::NonStochastic(format!("row {x} has {} entries, expected {width}", row.len())));
        }
        if row.iter().any(|w| w.is_nan() || *w < 0.0) {
            return Err(Error::NonStochastic(format!("row {x} has a negative or NaN entry")));
        }
        let sum: f64 = row.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::NonStochastic(format!("row {x} sums to {sum}")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bsc(e: f64) -> Vec<Vec<f64>> {
        vec![vec![1.0 - e, e], vec![e, 1.0 - e]]
    }

    #[test]
    fn binary_symmetric_extremes() {
        assert!((blahut_arimoto(&bsc(0.0), 1e-12).unwrap() - 1.0).abs() < 1e-12);
        assert!(blahut_arimoto(&bsc(0.5), 1e-12).unwrap().abs() < 1e-12);
    }

    #[test]
    fn z_channel_half() {
        let z = vec![vec![0.5, 0.5], vec![0.0, 1.0]];
        let c = blahut_arimoto_with_input(&z, 1e-12).unwrap();
        assert!((c.bits - 1.25f64.log2()).abs() < 1e-10);
        assert!((c.input[0] - 0.4).abs() < 1e-5);
    }

    #[test]
    fn rejects_non_stochastic() {
        assert!(matches!(blahut_arimoto(&[vec![0.5, 0.6]], 1e-9), Err(Error::NonStochastic(_))));
        assert!(blahut_arimoto(&[vec![1.0, 0.0], vec![1.0]], 1e-9).is_err());
        assert!(blahut_arimoto(&[vec![1.5, -0.5]], 1e-9).is_err());
        assert!(blahut_arimoto(&[], 1e-9).is_err());
    }
}
