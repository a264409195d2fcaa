// Fit all eight families to log-Laplace data, profiling extra parameters,
// and rank them by AIC and BIC.

use blslab::bls::{Bls, BlsParams};
use blslab::datakit::{compare_models, Candidate, Dataset};
use blslab::generators::GeneratorSpec;

pub fn run_example() -> blslab::Result<()> {
    let bls = Bls::new(BlsParams::new(1.0, 1.0, 0.5, 0.5, 0.5)?, GeneratorSpec::log_laplace())?;
    let ds = Dataset::synthetic(bls.sample(200, 2)?)?;
    let cmp = compare_models(&ds, &Candidate::all())?;
    print!("{}", cmp.to_tsv());
    if let Some(best) = cmp.best_by_aic() {
        println!("best by AIC: {} {}", best.family, best.params);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> blslab::Result<()> {
    run_example()
}
