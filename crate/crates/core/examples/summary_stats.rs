// Descriptive statistics of a two-column data file.

use blslab::datakit::{load_csv, summarize};

pub fn run_example() -> blslab::Result<()> {
    let ds = load_csv(concat!(env!("CARGO_MANIFEST_DIR"), "/data/lognormal_n15.csv"))?;
    print!("{}", summarize(&ds).to_tsv());
    Ok(())
}

#[allow(dead_code)]
fn main() -> blslab::Result<()> {
    run_example()
}
