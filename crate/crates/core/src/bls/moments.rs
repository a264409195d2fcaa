use serde::{Deserialize, Serialize};

use super::{Bls, Component};
use crate::generators::GeneratorId;
use crate::stats::correlation;

/// A value with its Monte Carlo standard error (zero when exact).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub value: f64,
    pub std_error: f64,
}

const BATCHES: usize = 20;

impl Bls {
    /// `E(Tᵢ^r) = ηᵢ^r ϑ(σᵢ² r²)` when the characteristic generator exists.
    pub fn moment(&self, c: Component, r: f64) -> Option<f64> {
        let (eta, sigma) = self.eta_sigma(c);
        self.spec
            .characteristic_generator(sigma * sigma * r * r)
            .map(|v| eta.powf(r) * v)
    }

    /// Whether `E(Tᵢ²)` is finite for both margins.
    fn has_second_moments(&self) -> bool {
        let smax = self.theta.sigma1.max(self.theta.sigma2);
        let spec = self.spec;
        match spec.id() {
            GeneratorId::LogNormal | GeneratorId::LogLogistic => true,
            GeneratorId::LogStudentT | GeneratorId::LogPearsonVII | GeneratorId::LogSlash => false,
            // radial tails e^{-√2 r}, e^{-ν r}, e^{-r/2} (ξ = 1)
            GeneratorId::LogLaplace => 2.0 * smax < std::f64::consts::SQRT_2,
            GeneratorId::LogHyperbolic => 2.0 * smax < spec.params().nu.unwrap_or(0.0),
            GeneratorId::LogPowerExponential => spec.params().xi.unwrap_or(1.0) < 1.0 || 2.0 * smax < 0.5,
        }
    }

    /// Correlation of `(T₁, T₂)`. Closed form for the log-normal; Monte Carlo
    /// with a batch-means standard error when second moments are finite;
    /// `None` when they are not.
    pub fn correlation(&self, mc_draws: usize, seed: u64) -> Option<McEstimate> {
        let th = self.theta;
        if self.spec.id() == GeneratorId::LogNormal {
            let num = (th.sigma1 * th.sigma2 * th.rho).exp_m1();
            let den = ((th.sigma1 * th.sigma1).exp_m1() * (th.sigma2 * th.sigma2).exp_m1()).sqrt();
            return Some(McEstimate {
                value: num / den,
                std_error: 0.0,
            });
        }
        if !self.has_second_moments() || mc_draws < 2 * BATCHES {
            return None;
        }
        let draws = self.sample(mc_draws, seed).ok()?;
        let (x, y): (Vec<f64>, Vec<f64>) = draws.iter().map(|p| (p[0], p[1])).unzip();
        let value = correlation(&x, &y);
        let size = mc_draws / BATCHES;
        let batch: Vec<f64> = (0..BATCHES)
            .map(|b| correlation(&x[b * size..(b + 1) * size], &y[b * size..(b + 1) * size]))
            .collect();
        let std_error = crate::stats::sd(&batch) / (BATCHES as f64).sqrt();
        Some(McEstimate { value, std_error })
    }
}
