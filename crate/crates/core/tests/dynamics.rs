use nalgebra::DMatrix;
use noisecap::dynamics::{
    extract_channel, propagate, trajectory, BasisState, EvolvedOperator, IntegratorConfig, NetworkSpec, Output, Sink,
};
use noisecap::linalg::C64;
use noisecap::model_io::{builtin_model, parse_config};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn triangle() -> NetworkSpec {
    NetworkSpec::new(3).with_hopping(1, 2, 1.0).with_hopping(2, 3, 1.0).with_hopping(1, 3, 1.0)
}

fn random_spec(rng: &mut ChaCha8Rng, n: usize) -> NetworkSpec {
    let mut spec = NetworkSpec::new(n);
    for j in 1..=n {
        spec.omega[j - 1] = rng.random::<f64>() * 2.0 - 1.0;
        spec.dephasing[j - 1] = rng.random::<f64>();
        spec.dissipation[j - 1] = 0.1 * rng.random::<f64>();
        for l in j + 1..=n {
            spec = spec.with_hopping(j, l, rng.random::<f64>() * 2.0 - 1.0);
        }
    }
    spec
}

fn random_operator(rng: &mut ChaCha8Rng, d: usize) -> EvolvedOperator {
    EvolvedOperator { matrix: DMatrix::from_fn(d, d, |_, _| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)) }
}

#[test]
fn three_site_population_matches_hopping_eigenmodes() {
    let spec = triangle();
    let cfg = IntegratorConfig::for_spec(&spec, 3.0);
    for k in 0..=30 {
        let t = 0.1 * k as f64;
        let rho = propagate(&spec, &EvolvedOperator::excitation(3, 1), &cfg, t).unwrap();
        let expected = 2.0 / 9.0 * (1.0 - (3.0 * t).cos());
        assert!((rho.entry(3, 3).re - expected).abs() < 1e-9, "t {t}");
    }
}

#[test]
fn propagation_is_linear() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let spec = random_spec(&mut rng, 4);
    let cfg = IntegratorConfig::for_spec(&spec, 2.0);
    for _ in 0..5 {
        let (x, y) = (random_operator(&mut rng, 6), random_operator(&mut rng, 6));
        let (a, b) = (C64::new(0.3, -1.2), C64::new(-0.7, 0.4));
        let combined = EvolvedOperator { matrix: x.matrix.map(|z| z * a) + y.matrix.map(|z| z * b) };
        let lhs = propagate(&spec, &combined, &cfg, 2.0).unwrap().matrix;
        let px = propagate(&spec, &x, &cfg, 2.0).unwrap().matrix;
        let py = propagate(&spec, &y, &cfg, 2.0).unwrap().matrix;
        let rhs = px.map(|z| z * a) + py.map(|z| z * b);
        assert!((lhs - rhs).iter().all(|z| z.norm() < 1e-9));
    }
}

#[test]
fn trace_survives_dissipation_and_sink() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut spec = random_spec(&mut rng, 4);
    spec.sink = Some(Sink { site: 2, rate: 0.8 });
    let cfg = IntegratorConfig::for_spec(&spec, 5.0);
    let rho = propagate(&spec, &EvolvedOperator::excitation(4, 1), &cfg, 5.0).unwrap();
    assert!((rho.trace() - C64::new(1.0, 0.0)).norm() < 1e-10);
    assert!(rho.is_hermitian(1e-12));
    let sink = rho.entry(BasisState::Sink.index(4), BasisState::Sink.index(4)).re;
    let vacuum = rho.entry(0, 0).re;
    assert!(sink > 0.0 && vacuum > 0.0);
}

#[test]
fn pure_dephasing_conserves_excitations() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut spec = random_spec(&mut rng, 5);
    spec.dissipation = vec![0.0; 5];
    let cfg = IntegratorConfig::for_spec(&spec, 4.0);
    for t in [0.5, 2.0, 4.0] {
        let rho = propagate(&spec, &EvolvedOperator::excitation(5, 2), &cfg, t).unwrap();
        assert!((rho.excitation_population() - 1.0).abs() < 1e-10, "t {t}");
    }
}

#[test]
fn relabelling_sites_leaves_channel_unchanged() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let spec = random_spec(&mut rng, 4);
    let perm = [3usize, 1, 4, 2]; // site j -> perm[j - 1]
    let mut relabelled = NetworkSpec::new(4);
    for j in 1..=4 {
        let pj = perm[j - 1];
        relabelled.omega[pj - 1] = spec.omega[j - 1];
        relabelled.dephasing[pj - 1] = spec.dephasing[j - 1];
        relabelled.dissipation[pj - 1] = spec.dissipation[j - 1];
        for l in 1..=4 {
            relabelled.hopping[pj - 1][perm[l - 1] - 1] = spec.hopping[j - 1][l - 1];
        }
    }
    relabelled.input_site = perm[spec.input_site - 1];
    relabelled.output = Output::Site(perm[3]);
    let cfg = IntegratorConfig::for_spec(&spec, 6.0);
    let times: Vec<f64> = (0..=60).map(|i| 0.1 * i as f64).collect();
    let a = trajectory(&spec, &cfg, &times).unwrap();
    let b = trajectory(&relabelled, &cfg, &times).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert!((x.params.eta() - y.params.eta()).abs() < 1e-10);
        assert!((x.params.s() - y.params.s()).abs() < 1e-10);
    }
}

#[test]
fn dephasing_the_middle_site_lifts_transfer_above_half() {
    let parsed = parse_config(builtin_model("threesite").unwrap()).unwrap();
    let times = parsed.sweep.grid();
    let samples = trajectory(&parsed.spec, &parsed.integrator, &times).unwrap();
    let best = samples.iter().map(|x| x.params.eta()).fold(0.0, f64::max);
    assert!(best > 0.5, "{best}");
}

#[test]
fn channel_at_time_zero_is_degenerate() {
    let spec = triangle();
    let sample = extract_channel(&spec, &IntegratorConfig::for_spec(&spec, 1.0), 0.0).unwrap();
    assert!(sample.degenerate);
    assert_eq!((sample.params.eta(), sample.params.s()), (0.0, 0.0));
}

#[test]
fn dephasing_lowers_s_below_one() {
    let spec = triangle().with_dephasing(2, 1.0);
    let sample = extract_channel(&spec, &IntegratorConfig::for_spec(&spec, 1.5), 1.5).unwrap();
    assert!(sample.params.s() < 0.99 && sample.params.eta() > 0.01);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn channel_parameters_stay_in_range(seed in any::<u64>(), t in 0.0..4.0f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = random_spec(&mut rng, 3);
        let sample = extract_channel(&spec, &IntegratorConfig::for_spec(&spec, t), t).unwrap();
        prop_assert!((0.0..=1.0).contains(&sample.params.eta()));
        prop_assert!((0.0..=1.0).contains(&sample.params.s()));
    }
}
