// A small bias/MSE study of the log-normal estimator.

use blslab::bls::BlsParams;
use blslab::generators::GeneratorSpec;
use blslab::montecarlo::{run_study, McConfig};

pub fn run_example() -> blslab::Result<()> {
    let config = McConfig {
        spec: GeneratorSpec::log_normal(),
        true_theta: BlsParams::new(1.0, 1.0, 0.5, 0.5, 0.0)?,
        sample_sizes: vec![25, 100],
        rho_values: vec![0.0, 0.5],
        replications: 50,
        master_seed: 42,
    };
    let report = run_study(&config)?;
    print!("{}", report.to_tsv());
    Ok(())
}

#[allow(dead_code)]
fn main() -> blslab::Result<()> {
    run_example()
}
