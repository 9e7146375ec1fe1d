// Seven-site FMO-style network read out at the reaction-centre sink.
// Compares C1 after 5 ps with and without dephasing.

use noisecap::capacity::{c1, OptimizerOptions};
use noisecap::dynamics::{extract_channel, IntegratorConfig};
use noisecap::model_io::{builtin_model, parse_config};

pub fn run() -> noisecap::Result<()> {
    let config = parse_config(builtin_model("fmo7")?)?;
    let opts = OptimizerOptions::default();
    for scale in [0.0, 0.25, 1.0, 4.0] {
        let mut spec = config.spec.clone();
        spec.scale_dephasing(scale);
        let cfg = IntegratorConfig::for_spec(&spec, 5.0);
        let sample = extract_channel(&spec, &cfg, 5.0)?;
        let capacity = c1(sample.params, &opts)?.value;
        println!(
            "dephasing x{scale:<4}: eta = {:.4}, s = {}, C1 = {capacity:.4}",
            sample.params.eta(),
            sample.params.s()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> noisecap::Result<()> {
    run()
}
