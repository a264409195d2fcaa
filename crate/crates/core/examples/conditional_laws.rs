// Conditional densities of T₂ given T₁ and of T₁ given T₂ in an interval.

use blslab::bls::{Bls, BlsParams, Interval};
use blslab::generators::GeneratorSpec;

pub fn run_example() -> blslab::Result<()> {
    let theta = BlsParams::new(1.0, 1.0, 0.4, 0.6, 0.7)?;
    for spec in [GeneratorSpec::log_normal(), GeneratorSpec::log_student_t(5.0)?, GeneratorSpec::log_logistic()] {
        let bls = Bls::new(theta, spec)?;
        let given_t1 = bls.conditional_pdf_t2_given_t1(1.5, 1.2)?;
        let given_band = bls.conditional_pdf_t1_given_t2_in(1.5, Interval::new(1.0, 2.0)?)?;
        let given_all = bls.conditional_pdf_t1_given_t2_in(1.5, Interval::positive_half_line())?;
        println!(
            "{spec:<16} f(t₂=1.2 | t₁=1.5) = {given_t1:.6}  f(t₁=1.5 | T₂∈[1,2]) = {given_band:.6}  f(t₁=1.5 | T₂>0) = {given_all:.6}"
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> blslab::Result<()> {
    run_example()
}
