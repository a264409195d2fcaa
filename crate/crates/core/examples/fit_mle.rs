// Maximum-likelihood fit of the shipped fixture with standard errors and Wald tests.

use blslab::datakit::load_csv;
use blslab::estimation::fit_mle;
use blslab::generators::GeneratorSpec;
use blslab::montecarlo::PARAM_NAMES;

pub fn run_example() -> blslab::Result<()> {
    let ds = load_csv(concat!(env!("CARGO_MANIFEST_DIR"), "/data/lognormal_n15.csv"))?;
    let fit = fit_mle(&ds.pairs, &GeneratorSpec::log_normal())?;
    println!("converged: {} after {} iterations", fit.converged, fit.iterations);
    let est = fit.theta_hat.to_array();
    let se = fit.std_errors.map(|s| s.to_array());
    let sig = fit.significant();
    for (j, name) in PARAM_NAMES.iter().enumerate() {
        let se_j = se.map_or("NA".to_string(), |s| format!("{:.4}", s[j]));
        let star = if sig.is_some_and(|s| s[j]) { "*" } else { "" };
        println!("{name:<7} {:>9.4} ({se_j}){star}", est[j]);
    }
    println!("log-lik {:.3}  AIC {:.2}  BIC {:.2}", fit.log_lik, fit.aic, fit.bic);
    Ok(())
}

#[allow(dead_code)]
fn main() -> blslab::Result<()> {
    run_example()
}
