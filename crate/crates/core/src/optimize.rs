//! Nelder-Mead simplex minimisation with deterministic multistart.

use rand::Rng;

/// Outcome of one minimisation.
#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct NelderMead {
    pub max_iterations: usize,
    /// Stop once the spread of objective values over the simplex drops below
    /// this.
    pub tolerance: f64,
    pub initial_step: f64,
    /// Number of times the search is restarted from the incumbent with a
    /// fresh simplex after converging. Guards against collapsed simplices.
    pub polish_rounds: usize,
}

impl Default for NelderMead {
    fn default() -> Self {
        Self {
            max_iterations: 2000,
            tolerance: 1e-12,
            initial_step: 0.3,
            polish_rounds: 2,
        }
    }
}

impl NelderMead {
    pub fn minimize<F>(&self, f: &F, x0: &[f64]) -> Minimum
    where
        F: Fn(&[f64]) -> f64,
    {
        let mut best = self.run(f, x0, self.initial_step, self.max_iterations);
        let mut step = self.initial_step;
        let mut iterations = best.iterations;
        for _ in 0..self.polish_rounds {
            if iterations >= self.max_iterations {
                break;
            }
            step *= 0.1;
            let next = self.run(f, &best.x, step, self.max_iterations - iterations);
            iterations += next.iterations;
            let improvement = best.value - next.value;
            let converged = next.converged;
            if next.value <= best.value {
                best = next;
            }
            best.converged = converged;
            if improvement.abs() < self.tolerance {
                break;
            }
        }
        best.iterations = iterations;
        best
    }

    fn run<F>(&self, f: &F, x0: &[f64], step: f64, budget: usize) -> Minimum
    where
        F: Fn(&[f64]) -> f64,
    {
        let n = x0.len();
        if n == 0 {
            return Minimum { x: vec![], value: f(x0), iterations: 0, converged: true };
        }
        // adaptive coefficients (Gao & Han) behave better in higher dimensions
        let nf = n as f64;
        let (alpha, beta, gamma, delta) = (1.0, 1.0 + 2.0 / nf, 0.75 - 0.5 / nf, 1.0 - 1.0 / nf);

        let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
        simplex.push(x0.to_vec());
        for i in 0..n {
            let mut v = x0.to_vec();
            v[i] += step;
            simplex.push(v);
        }
        let mut values: Vec<f64> = simplex.iter().map(|x| f(x)).collect();

        let mut iterations = 0;
        let mut converged = false;
        while iterations < budget {
            let mut order: Vec<usize> = (0..=n).collect();
            order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
            simplex = order.iter().map(|&i| simplex[i].clone()).collect();
            values = order.iter().map(|&i| values[i]).collect();

            if values[n] - values[0] < self.tolerance {
                converged = true;
                break;
            }
            iterations += 1;

            let centroid: Vec<f64> = (0..n)
                .map(|d| simplex[..n].iter().map(|v| v[d]).sum::<f64>() / nf)
                .collect();
            let along = |t: f64| -> Vec<f64> {
                centroid
                    .iter()
                    .zip(&simplex[n])
                    .map(|(c, w)| c + t * (c - w))
                    .collect()
            };

            let reflected = along(alpha);
            let fr = f(&reflected);
            if fr < values[0] {
                let expanded = along(alpha * beta);
                let fe = f(&expanded);
                if fe < fr {
                    simplex[n] = expanded;
                    values[n] = fe;
                } else {
                    simplex[n] = reflected;
                    values[n] = fr;
                }
                continue;
            }
            if fr < values[n - 1] {
                simplex[n] = reflected;
                values[n] = fr;
                continue;
            }
            let (contracted, fc) = if fr < values[n] {
                let c = along(alpha * gamma);
                let fc = f(&c);
                (c, fc)
            } else {
                let c = along(-gamma);
                let fc = f(&c);
                (c, fc)
            };
            if fc < values[n].min(fr) {
                simplex[n] = contracted;
                values[n] = fc;
                continue;
            }
            // shrink towards the best vertex
            for i in 1..=n {
                let shrunk: Vec<f64> = simplex[0]
                    .iter()
                    .zip(&simplex[i])
                    .map(|(b, v)| b + delta * (v - b))
                    .collect();
                values[i] = f(&shrunk);
                simplex[i] = shrunk;
            }
        }

        let best = (0..=n)
            .min_by(|&a, &b| values[a].total_cmp(&values[b]))
            .unwrap_or(0);
        Minimum {
            x: simplex[best].clone(),
            value: values[best],
            iterations,
            converged,
        }
    }
}

/// Runs `minimizer` from each start and keeps the lowest result. `converged`
/// is reported for the winning run; `iterations` is the total.
pub fn multistart<F, I>(minimizer: &NelderMead, f: &F, starts: I) -> Option<Minimum>
where
    F: Fn(&[f64]) -> f64,
    I: IntoIterator<Item = Vec<f64>>,
{
    let mut total = 0;
    let mut best: Option<Minimum> = None;
    for x0 in starts {
        let m = minimizer.minimize(f, &x0);
        total += m.iterations;
        if best.as_ref().is_none_or(|b| m.value < b.value) {
            best = Some(m);
        }
    }
    best.map(|mut m| {
        m.iterations = total;
        m
    })
}

/// Uniform random start inside the box `[lo_i, hi_i]`.
pub fn random_point<R: Rng>(rng: &mut R, bounds: &[(f64, f64)]) -> Vec<f64> {
    bounds
        .iter()
        .map(|&(lo, hi)| lo + (hi - lo) * rng.random::<f64>())
        .collect()
}

/// SplitMix64 finaliser; used to derive independent per-task seeds.
pub fn mix_seed(seed: u64, index: u64) -> u64 {
    fn splitmix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    splitmix(seed ^ splitmix(index))
}

/// Golden-section search for the maximum of a unimodal function on `[a, b]`.
pub fn golden_section_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn minimizes_rosenbrock() {
        let f = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let nm = NelderMead { max_iterations: 5000, ..Default::default() };
        let m = nm.minimize(&f, &[-1.2, 1.0]);
        assert!(m.converged);
        assert!((m.x[0] - 1.0).abs() < 1e-4 && (m.x[1] - 1.0).abs() < 1e-4, "{:?}", m.x);
    }

    #[test]
    fn multistart_escapes_local_minimum() {
        // global minimum at x = 2, local at x = -1
        let f = |x: &[f64]| (x[0] - 2.0).powi(2) * (x[0] + 1.0).powi(2) + 0.1 * (x[0] - 2.0).powi(2);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let starts: Vec<Vec<f64>> = (0..8).map(|_| random_point(&mut rng, &[(-3.0, 3.0)])).collect();
        let m = multistart(&NelderMead::default(), &f, starts).unwrap();
        assert!((m.x[0] - 2.0).abs() < 1e-5);
    }

    #[test]
    fn golden_section_finds_parabola_peak() {
        let (x, v) = golden_section_max(|x| -(x - 0.3).powi(2) + 1.0, 0.0, 1.0, 1e-12);
        assert!((x - 0.3).abs() < 1e-6 && (v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn seeds_differ_per_index() {
        assert_ne!(mix_seed(1, 0), mix_seed(1, 1));
        assert_eq!(mix_seed(5, 3), mix_seed(5, 3));
    }
}
