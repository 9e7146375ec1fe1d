// One-shot quantum capacity across the damping parameter.

use noisecap::capacity::{q1_numeric, OptimizerOptions};
use noisecap::channel::ChannelParams;

pub fn run() -> noisecap::Result<()> {
    let opts = OptimizerOptions::default();
    println!("{:>5} {:>10} {:>10} {:>10}", "eta", "s = 0", "s = 0.5", "s = 1");
    for k in 0..=10 {
        let eta = 0.1 * k as f64;
        let q: Vec<f64> = [0.0, 0.5, 1.0]
            .into_iter()
            .map(|s| q1_numeric(ChannelParams::new(eta, s)?, &opts).map(|r| r.value))
            .collect::<noisecap::Result<_>>()?;
        println!("{eta:>5.1} {:>10.6} {:>10.6} {:>10.6}", q[0], q[1], q[2]);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> noisecap::Result<()> {
    run()
}
