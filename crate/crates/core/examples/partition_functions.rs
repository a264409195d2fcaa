// Closed-form partition functions against direct quadrature of the generator.

use blslab::generators::GeneratorSpec;

pub fn run_example() -> blslab::Result<()> {
    println!("{:<28} {:>16} {:>16} {:>10}", "generator", "closed", "numeric", "rel err");
    for spec in GeneratorSpec::defaults() {
        let closed = spec.partition_closed();
        let numeric = spec.partition_numeric()?;
        let rel = (numeric - closed).abs() / closed;
        println!("{:<28} {closed:>16.10} {numeric:>16.10} {rel:>10.2e}", spec.to_string());
        assert!(rel < 1e-6);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> blslab::Result<()> {
    run_example()
}
