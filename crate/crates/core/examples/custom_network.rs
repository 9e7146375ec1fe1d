// Describes a four-site chain in TOML, runs it, and prints the channel
// parameters along the way.

use noisecap::dynamics::trajectory;
use noisecap::model_io::{parse_config, serialize_config};

const CHAIN: &str = r#"
[network]
sites = 4
hoppings = [[1, 2, 1.0], [2, 3, 1.0], [3, 4, 1.0]]
dephasing = [0.0, 0.5, 0.5, 0.0]
dissipation = [0.01, 0.01, 0.01, 0.01]

[sweep]
t_max = 6.0
t_steps = 13
"#;

pub fn run() -> noisecap::Result<()> {
    let config = parse_config(CHAIN)?;
    for x in trajectory(&config.spec, &config.integrator, &config.sweep.grid())? {
        println!("t = {:4.1}  eta = {:.5}  s = {:.5}{}", x.t, x.params.eta(), x.params.s(), if x.degenerate { "  (degenerate)" } else { "" });
    }
    println!("\nnormalised config:\n{}", serialize_config(&config)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> noisecap::Result<()> {
    run()
}
