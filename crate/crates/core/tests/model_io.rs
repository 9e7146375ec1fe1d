use noisecap::dynamics::{IntegratorConfig, NetworkSpec, Output, Sink};
use noisecap::model_io::{builtin_model, parse_config, serialize_config, ParsedConfig, Sweep, BUILTIN_MODELS};
use proptest::prelude::*;

prop_compose! {
    fn network()(n in 1usize..6)(
        omega in prop::collection::vec(-500.0..500.0f64, n),
        upper in prop::collection::vec(prop_oneof![Just(0.0), -50.0..50.0f64], n * (n - 1) / 2),
        dephasing in prop::collection::vec(prop_oneof![Just(0.0), 0.0..100.0f64], n),
        dissipation in prop::collection::vec(0.0..1.0f64, n),
        sink in prop::option::of((1..=n, 0.0..10.0f64)),
        input in 1..=n,
        output in 1..=n,
        read_sink in any::<bool>(),
        n in Just(n),
    ) -> NetworkSpec {
        let mut spec = NetworkSpec::new(n);
        spec.omega = omega;
        let mut k = 0;
        for j in 1..=n {
            for l in j + 1..=n {
                spec = spec.with_hopping(j, l, upper[k]);
                k += 1;
            }
        }
        spec.dephasing = dephasing;
        spec.dissipation = dissipation;
        spec.sink = sink.map(|(site, rate)| Sink { site, rate });
        spec.input_site = input;
        spec.output = if read_sink && spec.sink.is_some() { Output::Sink } else { Output::Site(output) };
        spec
    }
}

proptest! {
    #[test]
    fn serialized_config_parses_back(spec in network(), t_max in 0.0..100.0f64, t_steps in 1usize..1000,
                                     scale in 0.0..4.0f64, richardson in prop::option::of(1e-12..1e-3f64)) {
        let mut integrator = IntegratorConfig::for_spec(&spec, t_max);
        integrator.richardson_tolerance = richardson;
        let config = ParsedConfig { spec, integrator, sweep: Sweep { t_max, t_steps, dephasing_scale: scale } };
        let text = serialize_config(&config).unwrap();
        let parsed = parse_config(&text).unwrap();
        prop_assert_eq!(parsed, config);
    }
}

#[test]
fn bundled_models_round_trip() {
    for (name, _) in BUILTIN_MODELS {
        let config = parse_config(builtin_model(name).unwrap()).unwrap();
        let again = parse_config(&serialize_config(&config).unwrap()).unwrap();
        assert_eq!(again, config, "{name}");
    }
}

#[test]
fn wavenumber_energies_are_converted() {
    let doc = "[network]\nsites = 2\nenergy_unit = \"inverse_cm\"\nomega = [100.0, 0.0]\nhoppings = [[1, 2, 10.0]]\n";
    let spec = parse_config(doc).unwrap().spec;
    assert!((spec.omega[0] - 18.83651567).abs() < 1e-9);
    assert!((spec.hopping[1][0] - 1.883651567).abs() < 1e-9);
}
