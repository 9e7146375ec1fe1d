// Applies E(eta, s) to a qubit state, checks the Kraus realisation against
// the closed form, and prints the Choi-state figures of merit.

use noisecap::channel::{amplitude_damping, compose, phase_flip, ChannelParams, QubitState};

pub fn run() -> noisecap::Result<()> {
    let params = ChannelParams::new(0.7, 0.4)?;
    let rho = QubitState::pure(1.0, 0.3);
    let out = params.apply(&rho);
    println!("input  p = {:.6}, gamma = {:.6}", rho.p(), rho.gamma());
    println!("output p = {:.6}, gamma = {:.6}", out.p(), out.gamma());

    let kraus = params.kraus();
    println!("{} Kraus operators, completeness deviation {:.1e}", kraus.len(), kraus.completeness_deviation());

    let composed = compose(&phase_flip(0.4)?, &amplitude_damping(0.7)?);
    let diff = (composed.apply_matrix(&rho.matrix()) - out.matrix()).norm();
    println!("N(s) o D(eta) vs closed form: {diff:.1e}");

    let choi = params.choi();
    println!("F(R) = {:.6}, S(R) = {:.6} bits", params.fidelity(), params.entropy());
    let spectrum: Vec<String> = choi.eigenvalues().iter().map(|l| format!("{:.6}", l.max(0.0))).collect();
    println!("Choi spectrum [{}]", spectrum.join(", "));
    Ok(())
}

#[allow(dead_code)]
fn main() -> noisecap::Result<()> {
    run()
}
