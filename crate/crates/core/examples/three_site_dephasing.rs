// The triangle network with and without strong dephasing on the middle
// site: noise blocks the direct interference and lets Q1 switch on.

use noisecap::capacity::{q1_numeric, OptimizerOptions};
use noisecap::dynamics::trajectory;
use noisecap::model_io::{builtin_model, parse_config};

pub fn run() -> noisecap::Result<()> {
    let config = parse_config(builtin_model("threesite")?)?;
    let times = config.sweep.grid();
    let opts = OptimizerOptions::default();
    for scale in [0.0, 1.0] {
        let mut spec = config.spec.clone();
        spec.scale_dephasing(scale);
        let samples = trajectory(&spec, &config.integrator, &times)?;
        let (mut best_eta, mut best_q1, mut at) = (0.0f64, 0.0f64, 0.0);
        for x in &samples {
            best_eta = best_eta.max(x.params.eta());
            let q = q1_numeric(x.params, &opts)?.value;
            if q > best_q1 {
                (best_q1, at) = (q, x.t);
            }
        }
        println!("dephasing x{scale}: max eta {best_eta:.4}, max Q1 {best_q1:.4} at t = {at:.2} ps");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> noisecap::Result<()> {
    run()
}
