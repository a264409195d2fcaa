//! Simulation studies of the ML estimator: bias and MSE per (n, ρ) cell.
//!
//! Every replication draws from its own ChaCha8 stream keyed by a SHA-256
//! digest of (master seed, n index, ρ index, replication index), so results
//! do not depend on scheduling. Replications run on a rayon pool and are
//! aggregated in index order after collection.

use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bls::{Bls, BlsParams, RadialLaw, RadialSampler};
use crate::error::{domain, Error, Result};
use crate::estimation::fit_mle;
use crate::generators::GeneratorSpec;

pub const DEFAULT_SAMPLE_SIZES: [usize; 4] = [25, 50, 100, 150];
pub const DEFAULT_RHO_VALUES: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 0.95];
pub const DEFAULT_REPLICATIONS: usize = 300;
/// Smallest sample size a study accepts.
pub const MIN_SAMPLE_SIZE: usize = 10;
/// A cell raises its alarm when more than this fraction of fits fail.
pub const FAILURE_ALARM_FRACTION: f64 = 0.02;

pub const PARAM_NAMES: [&str; 5] = ["eta1", "eta2", "sigma1", "sigma2", "rho"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McConfig {
    pub spec: GeneratorSpec,
    /// True parameters; `rho` is replaced by each entry of `rho_values`.
    pub true_theta: BlsParams,
    pub sample_sizes: Vec<usize>,
    pub rho_values: Vec<f64>,
    pub replications: usize,
    pub master_seed: u64,
}

impl McConfig {
    /// The standard grid: n ∈ {25, 50, 100, 150}, ρ ∈ {0, 0.25, 0.5, 0.75, 0.95},
    /// 300 replications.
    pub fn standard(spec: GeneratorSpec, true_theta: BlsParams, master_seed: u64) -> Self {
        Self {
            spec,
            true_theta,
            sample_sizes: DEFAULT_SAMPLE_SIZES.to_vec(),
            rho_values: DEFAULT_RHO_VALUES.to_vec(),
            replications: DEFAULT_REPLICATIONS,
            master_seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.replications == 0 {
            return domain("replications must be at least 1");
        }
        if self.sample_sizes.is_empty() || self.rho_values.is_empty() {
            return domain("sample_sizes and rho_values must be nonempty");
        }
        if let Some(n) = self.sample_sizes.iter().find(|&&n| n < MIN_SAMPLE_SIZE) {
            return domain(format!("sample size {n} is below {MIN_SAMPLE_SIZE}"));
        }
        if let Some(r) = self.rho_values.iter().find(|r| !(r.abs() < 1.0)) {
            return domain(format!("rho = {r} is outside (-1, 1)"));
        }
        self.true_theta.validate()
    }

    fn theta_at(&self, rho: f64) -> Result<BlsParams> {
        let t = self.true_theta;
        BlsParams::new(t.eta1, t.eta2, t.sigma1, t.sigma2, rho)
    }
}

/// Empirical bias and mean squared error of one parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BiasMse {
    pub bias: f64,
    pub mse: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McCell {
    pub n: usize,
    pub rho: f64,
    /// Replications whose fit converged and entered the averages.
    pub used: usize,
    /// Replications whose sampling or fit failed or did not converge.
    pub failed: usize,
    pub failure_alarm: bool,
    /// In the order of [`PARAM_NAMES`]; NaN when every replication failed.
    pub stats: [BiasMse; 5],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McReport {
    pub config: McConfig,
    /// Row-major over `sample_sizes` then `rho_values`.
    pub cells: Vec<McCell>,
}

/// `(mean(x) − truth, mean((x − truth)²))`.
pub fn bias_mse(estimates: &[f64], truth: f64) -> Result<BiasMse> {
    if estimates.is_empty() {
        return domain("bias_mse needs at least one estimate");
    }
    let n = estimates.len() as f64;
    let bias = estimates.iter().map(|e| e - truth).sum::<f64>() / n;
    let mse = estimates.iter().map(|e| (e - truth).powi(2)).sum::<f64>() / n;
    Ok(BiasMse { bias, mse })
}

/// 256-bit seed of one replication.
pub fn replication_seed(master_seed: u64, n_index: usize, rho_index: usize, replication: usize) -> [u8; 32] {
    let mut h = Sha256::new();
    h.update(b"blslab-mc");
    h.update(master_seed.to_le_bytes());
    h.update((n_index as u64).to_le_bytes());
    h.update((rho_index as u64).to_le_bytes());
    h.update((replication as u64).to_le_bytes());
    h.finalize().into()
}

/// Draw and fit one replication; `None` on any failure.
fn replicate(bls: &Bls, sampler: &RadialSampler, n: usize, seed: [u8; 32]) -> Option<[f64; 5]> {
    let mut rng = ChaCha8Rng::from_seed(seed);
    let data = bls.sample_with(sampler, n, &mut rng).ok()?;
    let fit = fit_mle(&data, &bls.spec()).ok()?;
    fit.converged.then(|| fit.theta_hat.to_array())
}

/// Run the study on the current rayon pool.
pub fn run_study(config: &McConfig) -> Result<McReport> {
    config.validate()?;
    let sampler = RadialLaw::new(config.spec).sampler()?;
    let mut cells = Vec::with_capacity(config.sample_sizes.len() * config.rho_values.len());
    for (ni, &n) in config.sample_sizes.iter().enumerate() {
        for (ri, &rho) in config.rho_values.iter().enumerate() {
            let truth = config.theta_at(rho)?;
            let bls = Bls::new(truth, config.spec)?;
            let estimates: Vec<Option<[f64; 5]>> = (0..config.replications)
                .into_par_iter()
                .map(|rep| replicate(&bls, &sampler, n, replication_seed(config.master_seed, ni, ri, rep)))
                .collect();
            cells.push(aggregate(n, rho, &truth, &estimates));
        }
    }
    Ok(McReport {
        config: config.clone(),
        cells,
    })
}

/// Run the study on a dedicated pool of `threads` workers (`None`: rayon's default).
/// The report does not depend on the worker count.
pub fn run_study_with_threads(config: &McConfig, threads: Option<usize>) -> Result<McReport> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t.max(1));
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Usage(format!("cannot start worker pool: {e}")))?;
    pool.install(|| run_study(config))
}

fn aggregate(n: usize, rho: f64, truth: &BlsParams, estimates: &[Option<[f64; 5]>]) -> McCell {
    let ok: Vec<[f64; 5]> = estimates.iter().flatten().copied().collect();
    let failed = estimates.len() - ok.len();
    let t = truth.to_array();
    let stats = std::array::from_fn(|j| {
        let col: Vec<f64> = ok.iter().map(|e| e[j]).collect();
        bias_mse(&col, t[j]).unwrap_or(BiasMse {
            bias: f64::NAN,
            mse: f64::NAN,
        })
    });
    McCell {
        n,
        rho,
        used: ok.len(),
        failed,
        failure_alarm: failed as f64 > FAILURE_ALARM_FRACTION * estimates.len() as f64,
        stats,
    }
}

impl McReport {
    pub fn cell(&self, n: usize, rho: f64) -> Option<&McCell> {
        self.cells.iter().find(|c| c.n == n && c.rho == rho)
    }

    /// One row per cell: `n`, `rho`, bias/MSE pairs for η₁, η₂, σ₁, σ₂, ρ, then the failure count.
    pub fn write_tsv<W: Write>(&self, mut w: W) -> Result<()> {
        let mut header = vec!["n".to_string(), "rho".to_string()];
        for p in PARAM_NAMES {
            header.push(format!("bias_{p}"));
            header.push(format!("mse_{p}"));
        }
        header.push("failed".into());
        writeln!(w, "{}", header.join("\t"))?;
        for c in &self.cells {
            let mut row = vec![c.n.to_string(), c.rho.to_string()];
            for s in &c.stats {
                row.push(format!("{:.6}", s.bias));
                row.push(format!("{:.6}", s.mse));
            }
            row.push(c.failed.to_string());
            writeln!(w, "{}", row.join("\t"))?;
        }
        Ok(())
    }

    pub fn to_tsv(&self) -> String {
        let mut buf = Vec::new();
        self.write_tsv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ascii output")
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}
