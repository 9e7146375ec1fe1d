// One-shot classical capacity: the closed form for the fully dephased
// channel, the Blahut-Arimoto cross-check, and the numeric Holevo search.

use noisecap::capacity::{blahut_arimoto, c1_fully_dephased, c1_numeric, Argmax, OptimizerOptions};
use noisecap::channel::ChannelParams;

pub fn run() -> noisecap::Result<()> {
    let opts = OptimizerOptions::default();
    println!("{:>5} {:>12} {:>12}", "eta", "closed form", "BA");
    for eta in [0.1, 0.5, 0.9] {
        let closed = c1_fully_dephased(eta)?.value;
        let ba = blahut_arimoto(&[vec![eta, 1.0 - eta], vec![0.0, 1.0]], 1e-12)?;
        println!("{eta:>5.2} {closed:>12.9} {ba:>12.9}");
    }

    println!("\nC1(eta = 0.6, s) from the ensemble search:");
    for s in [0.0, 0.5, 1.0] {
        let result = c1_numeric(ChannelParams::new(0.6, s)?, &opts)?;
        println!("  s = {s:.1}: {:.9} (converged: {})", result.value, result.converged);
        if let Argmax::Ensemble(ensemble) = &result.argmax {
            for (weight, state) in ensemble.entries().iter().filter(|(w, _)| *w > 1e-3) {
                println!("    {weight:.4} x (p = {:.4}, |gamma| = {:.4})", state.p(), state.gamma().norm());
            }
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> noisecap::Result<()> {
    run()
}
