// QQ data of squared Mahalanobis distances for a fitted model.

use blslab::bls::{Bls, BlsParams};
use blslab::datakit::{qq_mahalanobis, Dataset};
use blslab::estimation::fit_mle;
use blslab::generators::GeneratorSpec;

pub fn run_example() -> blslab::Result<()> {
    let spec = GeneratorSpec::log_logistic();
    let bls = Bls::new(BlsParams::new(2.0, 1.0, 0.3, 0.5, -0.2)?, spec)?;
    let ds = Dataset::synthetic(bls.sample(300, 8)?)?;
    let fit = fit_mle(&ds.pairs, &spec)?;
    let qq = qq_mahalanobis(&ds, &fit)?;
    println!("least-squares slope {:.3}", qq.slope());
    for (t, e) in qq.pairs.iter().step_by(50) {
        println!("{t:>10.4} {e:>10.4}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> blslab::Result<()> {
    run_example()
}
