// A coarse (eta, s) capacity surface written as CSV to stdout.

use noisecap::capacity::{capacity_surface, OptimizerOptions};
use noisecap::model_io::{write_table, ResultTable};

pub fn run() -> noisecap::Result<()> {
    let grid: Vec<f64> = (0..=4).map(|i| i as f64 / 4.0).collect();
    let rows = capacity_surface(&grid, &grid, &OptimizerOptions::default())?;
    let mut table = ResultTable::new(["eta", "s", "c1", "q1", "fidelity", "entropy"]);
    for r in rows {
        table.push(vec![r.eta, r.s, r.c1, r.q1, r.fidelity, r.entropy])?;
    }
    write_table(&table, std::io::stdout().lock())
}

#[allow(dead_code)]
fn main() -> noisecap::Result<()> {
    run()
}
