// Joint density, joint CDF and marginals of a log-Student-t model.

use blslab::bls::{Bls, BlsParams, Component};
use blslab::generators::GeneratorSpec;

pub fn run_example() -> blslab::Result<()> {
    let theta = BlsParams::new(2.0, 3.0, 0.5, 0.7, 0.4)?;
    let bls = Bls::new(theta, GeneratorSpec::log_student_t(4.0)?)?;

    for t in [[2.0, 3.0], [1.0, 4.0], [5.0, 1.5]] {
        println!(
            "t = ({}, {}): pdf {:.6}, cdf {:.6}, d² {:.4}",
            t[0],
            t[1],
            bls.pdf(t)?,
            bls.cdf(t)?,
            bls.mahalanobis_sq(t)?
        );
    }
    // the medians split each margin in half and the joint CDF at the
    // medians is 1/4 + asin(ρ)/(2π) for every generator
    println!("F(η₁, η₂) = {:.6}", bls.cdf([2.0, 3.0])?);

    for p in [0.05, 0.5, 0.95] {
        let q = bls.marginal_quantile(Component::First, p)?;
        println!("T₁ quantile at {p}: {q:.6} (cdf back {:.6})", bls.marginal_cdf(Component::First, q)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> blslab::Result<()> {
    run_example()
}
