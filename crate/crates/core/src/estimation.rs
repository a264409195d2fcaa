//! Maximum-likelihood fitting of θ = (η₁, η₂, σ₁, σ₂, ρ).
//!
//! The optimizer works on φ = (ln η₁, ln η₂, ln σ₁, ln σ₂, atanh ρ) and
//! minimizes −ℓ/n with the analytic score mapped through the chain rule.
//! Standard errors come from the observed information in the original
//! coordinates, obtained by differencing the analytic score.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bls::{quad_form, BlsParams, Pair};
use crate::error::{domain, Error, Result};
use crate::generators::{GeneratorId, GeneratorParams, GeneratorSpec};
use crate::optim::{bfgs, BfgsOptions};
use crate::stats::{correlation, mad, median};

/// Smallest sample accepted by the likelihood.
pub const MIN_OBS: usize = 5;

/// Counted parameters in AIC/BIC. Profiled generator parameters are not counted.
pub const N_PARAMS: usize = 5;

/// Critical value of the two-sided 5% Wald test.
pub const WALD_CRITICAL: f64 = 1.959963984540054;

/// Per-parameter standard errors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StdErrors {
    pub eta1: f64,
    pub eta2: f64,
    pub sigma1: f64,
    pub sigma2: f64,
    pub rho: f64,
}

impl StdErrors {
    pub fn to_array(&self) -> [f64; 5] {
        [self.eta1, self.eta2, self.sigma1, self.sigma2, self.rho]
    }

    fn from_array(v: [f64; 5]) -> Self {
        Self {
            eta1: v[0],
            eta2: v[1],
            sigma1: v[2],
            sigma2: v[3],
            rho: v[4],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub theta_hat: BlsParams,
    /// `None` when the observed information is not positive definite.
    pub std_errors: Option<StdErrors>,
    /// Full log-likelihood including the partition function and Jacobian.
    pub log_lik: f64,
    pub aic: f64,
    pub bic: f64,
    pub n_obs: usize,
    pub converged: bool,
    pub iterations: usize,
    /// Infinity norm of the gradient of −ℓ/n in the unconstrained coordinates.
    pub grad_norm: f64,
    pub spec: GeneratorSpec,
    pub message: String,
}

impl FitResult {
    /// Wald z statistics `θ̂ⱼ / SE(θ̂ⱼ)`.
    pub fn z_scores(&self) -> Option<[f64; 5]> {
        let se = self.std_errors?.to_array();
        let th = self.theta_hat.to_array();
        Some(std::array::from_fn(|i| th[i] / se[i]))
    }

    /// Which estimates are significant at the 5% level by a two-sided Wald test.
    pub fn significant(&self) -> Option<[bool; 5]> {
        self.z_scores().map(|z| z.map(|v| v.abs() > WALD_CRITICAL))
    }
}

/// `(AIC, BIC)` with five counted parameters.
pub fn information_criteria(log_lik: f64, n: usize) -> (f64, f64) {
    let k = N_PARAMS as f64;
    (-2.0 * log_lik + 2.0 * k, -2.0 * log_lik + k * (n as f64).ln())
}

fn check_data(data: &[Pair]) -> Result<()> {
    if data.len() < MIN_OBS {
        return domain(format!("need at least {MIN_OBS} observations, got {}", data.len()));
    }
    if let Some((i, p)) = data.iter().enumerate().find(|(_, p)| !(p[0] > 0.0 && p[1] > 0.0)) {
        return domain(format!("observation {} is not strictly positive: ({}, {})", i + 1, p[0], p[1]));
    }
    Ok(())
}

/// Full log-likelihood `Σ ln f(t₁ᵢ, t₂ᵢ; θ)` (log-Laplace: with the kernel
/// continued below [`LAPLACE_KERNEL_FLOOR`]).
pub fn log_likelihood(theta: &BlsParams, spec: &GeneratorSpec, data: &[Pair]) -> Result<f64> {
    check_data(data)?;
    theta.validate()?;
    let (kernel, n) = (kernel_sum(theta, spec, data), data.len() as f64);
    let jac: f64 = data.iter().map(|p| p[0].ln() + p[1].ln()).sum();
    Ok(kernel - n * spec.ln_partition() - jac)
}

/// The log-likelihood without its additive constant,
/// `Σ ln g(xᵢ) − n ln(σ₁σ₂) − (n/2) ln(1 − ρ²)`.
pub fn log_likelihood_kernel(theta: &BlsParams, spec: &GeneratorSpec, data: &[Pair]) -> Result<f64> {
    check_data(data)?;
    theta.validate()?;
    Ok(kernel_sum(theta, spec, data))
}

/// Below this squared distance the log-Laplace kernel is continued linearly
/// (value and slope matched), because `ln K₀(√(2x)) → +∞` as `x → 0` makes the
/// likelihood unbounded at every observation.
pub const LAPLACE_KERNEL_FLOOR: f64 = 1e-4;

/// `(ln g(x), r(x))` as used by the likelihood.
fn kernel_terms(spec: &GeneratorSpec, x: f64) -> (f64, f64) {
    if spec.id() == GeneratorId::LogLaplace && x < LAPLACE_KERNEL_FLOOR {
        let r = spec.r_raw(LAPLACE_KERNEL_FLOOR);
        (spec.ln_g_raw(LAPLACE_KERNEL_FLOOR) + r * (x - LAPLACE_KERNEL_FLOOR), r)
    } else {
        (spec.ln_g_raw(x), spec.r_raw(x))
    }
}

fn standardized(theta: &BlsParams, p: &Pair) -> [f64; 2] {
    [
        (p[0].ln() - theta.eta1.ln()) / theta.sigma1,
        (p[1].ln() - theta.eta2.ln()) / theta.sigma2,
    ]
}

fn kernel_sum(theta: &BlsParams, spec: &GeneratorSpec, data: &[Pair]) -> f64 {
    let n = data.len() as f64;
    let rho = theta.rho;
    let sum: f64 = data
        .iter()
        .map(|p| kernel_terms(spec, quad_form(standardized(theta, p), rho)).0)
        .sum();
    sum - n * (theta.sigma1 * theta.sigma2).ln() - 0.5 * n * (-rho * rho).ln_1p()
}

/// Log-likelihood kernel and its gradient in the original coordinates.
fn kernel_and_score(theta: &BlsParams, spec: &GeneratorSpec, data: &[Pair]) -> Result<(f64, [f64; 5])> {
    let n = data.len() as f64;
    let BlsParams {
        eta1,
        eta2,
        sigma1,
        sigma2,
        rho,
    } = *theta;
    let om = 1.0 - rho * rho;
    let mut ll = 0.0;
    let (mut a1, mut a2, mut b1, mut b2, mut c) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for p in data {
        let [z1, z2] = standardized(theta, p);
        let x = quad_form([z1, z2], rho);
        if x == 0.0 && spec.score_singular_at_zero() && spec.id() != GeneratorId::LogLaplace {
            return Err(Error::Singular(spec.id().cli_name().to_string()));
        }
        let (lg, g) = kernel_terms(spec, x);
        ll += lg;
        let d1 = rho * z2 - z1;
        let d2 = rho * z1 - z2;
        a1 += d1 * g;
        a2 += d2 * g;
        b1 += z1 * d1 * g;
        b2 += z2 * d2 * g;
        c += d2 * d1 * g;
    }
    ll += -n * (sigma1 * sigma2).ln() - 0.5 * n * om.ln();
    let score = [
        2.0 * a1 / (sigma1 * eta1 * om),
        2.0 * a2 / (sigma2 * eta2 * om),
        -n / sigma1 + 2.0 * b1 / (sigma1 * om),
        -n / sigma2 + 2.0 * b2 / (sigma2 * om),
        n * rho / om - 2.0 * c / (om * om),
    ];
    if !ll.is_finite() || score.iter().any(|v| !v.is_finite()) {
        return domain("log-likelihood or score is not finite at this θ");
    }
    Ok((ll, score))
}

/// The five partial derivatives of ℓ with respect to (η₁, η₂, σ₁, σ₂, ρ).
pub fn score(theta: &BlsParams, spec: &GeneratorSpec, data: &[Pair]) -> Result<[f64; 5]> {
    check_data(data)?;
    theta.validate()?;
    Ok(kernel_and_score(theta, spec, data)?.1)
}

fn to_phi(t: &BlsParams) -> [f64; 5] {
    [t.eta1.ln(), t.eta2.ln(), t.sigma1.ln(), t.sigma2.ln(), t.rho.atanh()]
}

fn from_phi(phi: &[f64]) -> Option<BlsParams> {
    BlsParams::new(phi[0].exp(), phi[1].exp(), phi[2].exp(), phi[3].exp(), phi[4].tanh()).ok()
}

/// Starting values for the optimizer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Init {
    /// Medians, MAD·1.4826 of the logs, sample correlation of the logs.
    Default,
    /// The default start moved by 20%: η·1.2, σ·0.8, ρ·0.8.
    Perturbed,
    Given(BlsParams),
}

/// Moment-type starting values from the log-data.
pub fn default_start(data: &[Pair]) -> Result<BlsParams> {
    check_data(data)?;
    let (l1, l2): (Vec<f64>, Vec<f64>) = data.iter().map(|p| (p[0].ln(), p[1].ln())).unzip();
    let scale = |v: &[f64]| {
        let s = mad(v);
        if s > 1e-8 {
            s
        } else {
            crate::stats::sd(v).max(1e-3)
        }
    };
    let r = correlation(&l1, &l2);
    let r = if r.is_finite() { r.clamp(-0.95, 0.95) } else { 0.0 };
    BlsParams::new(median(&l1).exp(), median(&l2).exp(), scale(&l1), scale(&l2), r)
}

fn start_for(init: Init, data: &[Pair]) -> Result<BlsParams> {
    match init {
        Init::Default => default_start(data),
        Init::Perturbed => {
            let s = default_start(data)?;
            BlsParams::new(1.2 * s.eta1, 1.2 * s.eta2, 0.8 * s.sigma1, 0.8 * s.sigma2, 0.8 * s.rho)
        }
        Init::Given(t) => {
            t.validate()?;
            Ok(t)
        }
    }
}

/// Maximize the log-likelihood from one start. Non-convergence is reported
/// through `converged = false`, not as an error.
pub fn fit_from(data: &[Pair], spec: &GeneratorSpec, init: Init) -> Result<FitResult> {
    check_data(data)?;
    let start = start_for(init, data)?;
    let n = data.len() as f64;
    let objective = |phi: &[f64]| -> Option<(f64, Vec<f64>)> {
        let th = from_phi(phi)?;
        let (ll, s) = kernel_and_score(&th, spec, data).ok()?;
        let chain = [
            th.eta1,
            th.eta2,
            th.sigma1,
            th.sigma2,
            1.0 - th.rho * th.rho,
        ];
        Some((-ll / n, (0..5).map(|i| -s[i] * chain[i] / n).collect()))
    };
    let out = bfgs(objective, &to_phi(&start), BfgsOptions::default());
    let theta_hat = match from_phi(&out.x) {
        Some(t) => t,
        None => return Err(Error::Fit(format!("optimizer left the parameter space: {}", out.message))),
    };
    let log_lik = if out.f.is_finite() {
        log_likelihood(&theta_hat, spec, data)?
    } else {
        f64::NAN
    };
    let (aic, bic) = information_criteria(log_lik, data.len());
    let std_errors = if out.converged {
        observed_information_se(&theta_hat, spec, data).ok()
    } else {
        None
    };
    Ok(FitResult {
        theta_hat,
        std_errors,
        log_lik,
        aic,
        bic,
        n_obs: data.len(),
        converged: out.converged,
        iterations: out.iterations,
        grad_norm: out.grad_norm,
        spec: *spec,
        message: out.message,
    })
}

/// Fit from the default start, retrying from the perturbed start when the
/// first run does not converge. Returns the better of the runs attempted.
pub fn fit_mle(data: &[Pair], spec: &GeneratorSpec) -> Result<FitResult> {
    let first = fit_from(data, spec, Init::Default)?;
    if first.converged {
        return Ok(first);
    }
    let second = fit_from(data, spec, Init::Perturbed)?;
    let better = second.converged || first.log_lik.is_nan() || second.log_lik > first.log_lik;
    Ok(if better { second } else { first })
}

/// Standard errors from the inverse observed information at `fit.theta_hat`.
pub fn standard_errors(fit: &FitResult, data: &[Pair]) -> Result<StdErrors> {
    check_data(data)?;
    observed_information_se(&fit.theta_hat, &fit.spec, data)
}

fn observed_information_se(theta: &BlsParams, spec: &GeneratorSpec, data: &[Pair]) -> Result<StdErrors> {
    let hess = observed_information(theta, spec, data)?;
    let inv = invert_spd(&hess).ok_or(Error::SingularInformation)?;
    let se: [f64; 5] = std::array::from_fn(|i| inv[i][i].sqrt());
    if se.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
        return Err(Error::SingularInformation);
    }
    Ok(StdErrors::from_array(se))
}

/// Negative Hessian of ℓ by central differences of the analytic score.
pub fn observed_information(theta: &BlsParams, spec: &GeneratorSpec, data: &[Pair]) -> Result<[[f64; 5]; 5]> {
    let base = theta.to_array();
    let mut h = [[0.0; 5]; 5];
    for j in 0..5 {
        let mut step = 1e-5 * base[j].abs().max(1e-3);
        if j == 4 {
            step = step.min(0.5 * (1.0 - base[4].abs()));
        }
        let mut plus = base;
        let mut minus = base;
        plus[j] += step;
        minus[j] -= step;
        let sp = kernel_and_score(&BlsParams::from_slice(&plus)?, spec, data)?.1;
        let sm = kernel_and_score(&BlsParams::from_slice(&minus)?, spec, data)?.1;
        for i in 0..5 {
            h[i][j] = -(sp[i] - sm[i]) / (2.0 * step);
        }
    }
    for i in 0..5 {
        for j in 0..i {
            let avg = 0.5 * (h[i][j] + h[j][i]);
            h[i][j] = avg;
            h[j][i] = avg;
        }
    }
    Ok(h)
}

/// Inverse of a symmetric positive-definite matrix via Cholesky.
fn invert_spd(a: &[[f64; 5]; 5]) -> Option<[[f64; 5]; 5]> {
    let mut l = [[0.0; 5]; 5];
    for i in 0..5 {
        for j in 0..=i {
            let s: f64 = (0..j).map(|k| l[i][k] * l[j][k]).sum();
            if i == j {
                let d = a[i][i] - s;
                if !(d > 0.0) {
                    return None;
                }
                l[i][i] = d.sqrt();
            } else {
                l[i][j] = (a[i][j] - s) / l[j][j];
            }
        }
    }
    // columns of L⁻¹ by forward substitution, then A⁻¹ = L⁻ᵀL⁻¹
    let mut linv = [[0.0; 5]; 5];
    for c in 0..5 {
        for i in c..5 {
            let rhs = if i == c { 1.0 } else { 0.0 };
            let s: f64 = (c..i).map(|k| l[i][k] * linv[k][c]).sum();
            linv[i][c] = (rhs - s) / l[i][i];
        }
    }
    let mut inv = [[0.0; 5]; 5];
    for i in 0..5 {
        for j in 0..5 {
            inv[i][j] = (0..5).map(|k| linv[k][i] * linv[k][j]).sum();
        }
    }
    Some(inv)
}

/// Outcome of a grid search over generator parameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProfileResult {
    pub params: GeneratorParams,
    pub fit: FitResult,
    /// Maximized log-likelihood at each grid point (`None` for failed fits).
    pub trace: Vec<(GeneratorParams, Option<f64>)>,
}

fn param_key(p: &GeneratorParams) -> [f64; 3] {
    [p.nu.unwrap_or(0.0), p.xi.unwrap_or(0.0), p.theta.unwrap_or(0.0)]
}

/// Fit θ at each grid point in parallel and keep the grid point with the
/// largest maximized log-likelihood; ties go to the smaller parameter value.
pub fn profile_fit(data: &[Pair], family: GeneratorId, grid: &[GeneratorParams]) -> Result<ProfileResult> {
    if grid.is_empty() {
        return domain("profile grid is empty");
    }
    check_data(data)?;
    let specs: Vec<GeneratorSpec> = grid
        .iter()
        .map(|p| GeneratorSpec::new(family, *p))
        .collect::<Result<_>>()?;
    let fits: Vec<Option<FitResult>> = specs
        .par_iter()
        .map(|spec| fit_mle(data, spec).ok().filter(|f| f.converged && f.log_lik.is_finite()))
        .collect();
    let trace = grid
        .iter()
        .zip(&fits)
        .map(|(p, f)| (*p, f.as_ref().map(|f| f.log_lik)))
        .collect();
    let mut order: Vec<usize> = (0..grid.len()).collect();
    order.sort_by(|&a, &b| {
        param_key(&grid[a])
            .partial_cmp(&param_key(&grid[b]))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut best: Option<usize> = None;
    for i in order {
        if let Some(f) = &fits[i] {
            if best.is_none_or(|b| f.log_lik > fits[b].as_ref().unwrap().log_lik) {
                best = Some(i);
            }
        }
    }
    let Some(b) = best else {
        return Err(Error::Fit(format!(
            "no grid point of {} converged ({} tried)",
            family.cli_name(),
            grid.len()
        )));
    };
    Ok(ProfileResult {
        params: grid[b],
        fit: fits[b].clone().unwrap(),
        trace,
    })
}

#[cfg(test)]
mod tests;
