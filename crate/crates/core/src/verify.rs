//! Cross-module consistency checks run by `noisecap verify`.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::capacity::{
    blahut_arimoto, c1_fully_dephased, c1_numeric, capacity_surface, q1_numeric, OptimizerOptions,
};
use crate::channel::{
    amplitude_damping, channel_entropy, channel_fidelity, compose, kraus_set, phase_flip, ChannelParams,
    KrausSet, QubitState,
};
use crate::dynamics::{trajectory, IntegratorConfig, NetworkSpec};
use crate::linalg::{real, Mat2, C64, ONE};
use crate::model_io::{builtin_model, parse_config};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Level {
    #[default]
    Fast,
    Full,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOptions {
    pub level: Level,
    /// Negative control: inflates the first Kraus operator so the
    /// completeness check must fail.
    pub corrupt_kraus: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

fn grid(n: usize) -> Vec<f64> {
    (0..n).map(|i| i as f64 / (n - 1) as f64).collect()
}

fn matrix_units() -> [Mat2; 4] {
    let mut units = [Mat2::zeros(); 4];
    for (k, u) in units.iter_mut().enumerate() {
        u[(k / 2, k % 2)] = ONE;
    }
    units
}

fn max_entry(m: &Mat2) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn random_state(rng: &mut ChaCha8Rng) -> QubitState {
    let p: f64 = rng.random();
    let r = rng.random::<f64>() * (p * (1.0 - p)).sqrt();
    let phase = rng.random::<f64>() * std::f64::consts::TAU;
    QubitState::new(p, C64::from_polar(r, phase)).expect("sampled state is valid")
}

fn completeness(corrupt: bool) -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for &eta in &grid(21) {
        for &s in &grid(21) {
            let mut ks = kraus_set(ChannelParams::new(eta, s)?);
            if corrupt {
                let mut ops = ks.operators().to_vec();
                ops[0] *= real(1.01);
                ks = KrausSet::new(ops);
            }
            worst = worst.max(ks.completeness_deviation());
        }
    }
    Ok((worst <= 1e-12, format!("max |sum B^dag B - I| = {worst:.2e}")))
}

fn kraus_map_equivalence() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst: f64 = 0.0;
    for _ in 0..500 {
        let params = ChannelParams::new(rng.random(), rng.random())?;
        let rho = random_state(&mut rng);
        let diff = params.kraus().apply_matrix(&rho.matrix()) - params.apply(&rho).matrix();
        worst = worst.max(max_entry(&diff));
    }
    Ok((worst <= 1e-12, format!("max deviation {worst:.2e} over 500 samples")))
}

fn composition_law() -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for &eta in &grid(21) {
        for &s in &grid(21) {
            let params = ChannelParams::new(eta, s)?;
            let (d, n) = (amplitude_damping(eta)?, phase_flip(s)?);
            let dn = compose(&d, &n);
            let nd = compose(&n, &d);
            for unit in matrix_units() {
                let target = params.apply_matrix(&unit);
                worst = worst
                    .max(max_entry(&(dn.apply_matrix(&unit) - target)))
                    .max(max_entry(&(nd.apply_matrix(&unit) - target)));
            }
        }
    }
    Ok((worst <= 1e-12, format!("max deviation {worst:.2e} on 21x21 grid")))
}

fn dephased_c1_vs_blahut() -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for k in 1..=20 {
        let eta = 0.05 * k as f64;
        let z = vec![vec![eta, 1.0 - eta], vec![0.0, 1.0]];
        let ba = blahut_arimoto(&z, 1e-10)?;
        worst = worst.max((ba - c1_fully_dephased(eta)?.value).abs());
    }
    Ok((worst <= 1e-6, format!("max |closed form - Blahut-Arimoto| = {worst:.2e}")))
}

fn c1_monotone(opts: &OptimizerOptions) -> Result<(bool, String)> {
    let mut worst_drop: f64 = 0.0;
    for eta in [0.3, 0.6, 0.9] {
        let mut previous = f64::NEG_INFINITY;
        for s in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let c = c1_numeric(ChannelParams::new(eta, s)?, opts)?.value;
            worst_drop = worst_drop.max(previous - c);
            previous = c;
        }
    }
    Ok((worst_drop <= 1e-4, format!("largest decrease in s: {worst_drop:.2e}")))
}

fn q1_regime(opts: &OptimizerOptions) -> Result<(bool, String)> {
    let mut nonzero = 0;
    for &eta in grid(11).iter().filter(|&&e| e <= 0.5) {
        for &s in &grid(11) {
            if q1_numeric(ChannelParams::new(eta, s)?, opts)?.value != 0.0 {
                nonzero += 1;
            }
        }
    }
    let identity = q1_numeric(ChannelParams::identity(), opts)?.value;
    let passed = nonzero == 0 && (identity - 1.0).abs() <= 1e-6;
    Ok((passed, format!("{nonzero} nonzero cells with eta <= 1/2; Q1(1,1) = {identity:.8}")))
}

fn noiseless_spec(name: &str) -> Result<NetworkSpec> {
    let mut spec = parse_config(builtin_model(name)?)?.spec;
    spec.scale_dephasing(0.0);
    Ok(spec)
}

fn noiseless(name: &str, t_max: f64) -> Result<(NetworkSpec, Vec<crate::dynamics::ChannelSample>)> {
    let spec = noiseless_spec(name)?;
    let cfg = IntegratorConfig::for_spec(&spec, t_max);
    let times: Vec<f64> = (0..=2000).map(|i| t_max * i as f64 / 2000.0).collect();
    let samples = trajectory(&spec, &cfg, &times)?;
    Ok((spec, samples))
}

fn noiseless_s_is_one() -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for name in ["twosite", "threesite"] {
        let (_, samples) = noiseless(name, 20.0)?;
        for s in samples.iter().filter(|s| s.params.eta() > 1e-6) {
            worst = worst.max((s.params.s() - 1.0).abs());
        }
    }
    Ok((worst <= 1e-6, format!("max |s - 1| = {worst:.2e}")))
}

fn threesite_bound() -> Result<(bool, String)> {
    // the analytic maximum (2/9)(1 - cos 3t) = 4/9 is hit at t = pi/3
    let spec = noiseless_spec("threesite")?;
    let t_max = std::f64::consts::PI;
    let cfg = IntegratorConfig::for_spec(&spec, t_max);
    let times: Vec<f64> = (0..=3000).map(|i| t_max * i as f64 / 3000.0).collect();
    let best = trajectory(&spec, &cfg, &times)?
        .iter()
        .map(|s| s.params.eta())
        .fold(0.0, f64::max);
    let dev = (best - 4.0 / 9.0).abs();
    Ok((dev <= 1e-4, format!("max eta = {best:.8}, |max - 4/9| = {dev:.2e}")))
}

fn surface_consistency(opts: &OptimizerOptions) -> Result<(bool, String)> {
    let rows = capacity_surface(&grid(21), &grid(21), opts)?;
    let mut figures: f64 = 0.0;
    let mut failures = Vec::new();
    for row in &rows {
        let params = ChannelParams::new(row.eta, row.s)?;
        let choi = params.choi();
        figures = figures
            .max((choi.entanglement_fidelity() - channel_fidelity(params)).abs())
            .max((choi.entropy() - channel_entropy(params)).abs());
        let floor = c1_fully_dephased(row.eta)?.value;
        if row.c1 < floor - 1e-4 || row.c1 > 1.0 + 1e-12 || row.q1 > 1.0 || row.q1 < 0.0 {
            failures.push(format!("bounds at ({}, {})", row.eta, row.s));
        }
        if row.eta <= 0.5 && row.q1 != 0.0 {
            failures.push(format!("Q1 > 0 at ({}, {})", row.eta, row.s));
        }
    }
    let passed = figures <= 1e-8 && failures.is_empty();
    let detail = if failures.is_empty() {
        format!("{} cells; F/S closed form vs Choi {figures:.2e}", rows.len())
    } else {
        failures.join("; ")
    };
    Ok((passed, detail))
}

/// Runs every check for `options.level`. A check that errors is reported as
/// failed with the error text.
pub fn run_checks(options: VerifyOptions) -> Vec<Check> {
    let opts = OptimizerOptions::default();
    type CheckFn<'a> = Box<dyn Fn() -> Result<(bool, String)> + 'a>;
    let mut checks: Vec<(&'static str, CheckFn)> = vec![
        ("kraus-completeness", Box::new(move || completeness(options.corrupt_kraus))),
        ("kraus-map-equivalence", Box::new(kraus_map_equivalence)),
        ("composition-law", Box::new(composition_law)),
        ("dephased-c1-vs-blahut-arimoto", Box::new(dephased_c1_vs_blahut)),
        ("c1-monotone-in-s", Box::new(|| c1_monotone(&opts))),
        ("q1-zero-below-half", Box::new(|| q1_regime(&opts))),
        ("noiseless-s-equals-one", Box::new(noiseless_s_is_one)),
        ("threesite-noiseless-bound", Box::new(threesite_bound)),
    ];
    if options.level == Level::Full {
        checks.push(("surface-21x21-consistency", Box::new(|| surface_consistency(&opts))));
    }
    checks
        .into_iter()
        .map(|(name, check)| {
            let start = Instant::now();
            let (passed, detail) = check().unwrap_or_else(|e| (false, format!("error: {e}")));
            Check { name, passed, detail, seconds: start.elapsed().as_secs_f64() }
        })
        .collect()
}
