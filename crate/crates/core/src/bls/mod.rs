//! The bivariate log-symmetric distribution.
//!
//! `(T₁, T₂) = (η₁ e^{σ₁ X̃₁}, η₂ e^{σ₂ X̃₂})` where `(X̃₁, X̃₂)` is elliptical with
//! correlation `ρ` and density generator `g`. Everything here is evaluated in
//! standardized coordinates `t̃ᵢ = (ln tᵢ − ln ηᵢ)/σᵢ`.

mod cdf;
mod conditional;
pub mod marginal;
mod moments;
pub mod radial;
mod sample;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::generators::GeneratorSpec;

pub use moments::McEstimate;
pub use radial::{RadialLaw, RadialSampler};

/// An observation `(t₁, t₂)`, both strictly positive.
pub type Pair = [f64; 2];

/// θ = (η₁, η₂, σ₁, σ₂, ρ).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlsParams {
    pub eta1: f64,
    pub eta2: f64,
    pub sigma1: f64,
    pub sigma2: f64,
    pub rho: f64,
}

impl BlsParams {
    pub fn new(eta1: f64, eta2: f64, sigma1: f64, sigma2: f64, rho: f64) -> Result<Self> {
        let p = Self {
            eta1,
            eta2,
            sigma1,
            sigma2,
            rho,
        };
        p.validate()?;
        Ok(p)
    }

    /// Parse `[η₁, η₂, σ₁, σ₂, ρ]`.
    pub fn from_slice(v: &[f64]) -> Result<Self> {
        match v {
            [a, b, c, d, e] => Self::new(*a, *b, *c, *d, *e),
            _ => domain(format!("expected 5 parameters (eta1,eta2,sigma1,sigma2,rho), got {}", v.len())),
        }
    }

    pub fn to_array(&self) -> [f64; 5] {
        [self.eta1, self.eta2, self.sigma1, self.sigma2, self.rho]
    }

    pub fn validate(&self) -> Result<()> {
        let pos = [self.eta1, self.eta2, self.sigma1, self.sigma2];
        if pos.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return domain(format!("eta and sigma must be finite and positive, got {self:?}"));
        }
        if !(self.rho.abs() < 1.0) {
            return domain(format!("rho must lie in (-1, 1), got {}", self.rho));
        }
        Ok(())
    }

    /// Scale transform: `(c₁T₁, c₂T₂)` has medians `(c₁η₁, c₂η₂)`.
    pub fn scale(&self, c1: f64, c2: f64) -> Result<Self> {
        if !(c1 > 0.0 && c2 > 0.0) {
            return domain(format!("scale factors must be positive, got ({c1}, {c2})"));
        }
        Self::new(c1 * self.eta1, c2 * self.eta2, self.sigma1, self.sigma2, self.rho)
    }

    /// Power transform: `(T₁^{c₁}, T₂^{c₂})` has parameters
    /// `(η₁^{c₁}, η₂^{c₂}, |c₁|σ₁, |c₂|σ₂, sign(c₁c₂)ρ)`.
    pub fn power(&self, c1: f64, c2: f64) -> Result<Self> {
        if c1 == 0.0 || c2 == 0.0 || !c1.is_finite() || !c2.is_finite() {
            return domain(format!("power exponents must be finite and nonzero, got ({c1}, {c2})"));
        }
        let sign = (c1 * c2).signum();
        Self::new(
            self.eta1.powf(c1),
            self.eta2.powf(c2),
            c1.abs() * self.sigma1,
            c2.abs() * self.sigma2,
            sign * self.rho,
        )
    }

    /// θ• = (1, 1, σ₁, σ₂, ρ), the law shared by `(T₁/η₁, T₂/η₂)` and its reciprocal.
    pub fn reciprocal_standardized(&self) -> Self {
        Self {
            eta1: 1.0,
            eta2: 1.0,
            ..*self
        }
    }
}

/// A single interval `[lo, hi]` inside `[0, ∞]` used as a conditioning event.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo >= 0.0 && hi > lo) || lo.is_infinite() {
            return domain(format!("interval needs 0 <= lo < hi, got [{lo}, {hi}]"));
        }
        Ok(Self { lo, hi })
    }

    pub fn positive_half_line() -> Self {
        Self {
            lo: 0.0,
            hi: f64::INFINITY,
        }
    }
}

/// Which margin of the pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Component {
    First,
    Second,
}

/// A BLS distribution: parameter vector plus generator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bls {
    theta: BlsParams,
    spec: GeneratorSpec,
}

fn check_pair(t: Pair) -> Result<()> {
    if !(t[0] > 0.0 && t[1] > 0.0) {
        return domain(format!("observations must be strictly positive, got ({}, {})", t[0], t[1]));
    }
    Ok(())
}

impl Bls {
    pub fn new(theta: BlsParams, spec: GeneratorSpec) -> Result<Self> {
        theta.validate()?;
        Ok(Self { theta, spec })
    }

    pub fn theta(&self) -> BlsParams {
        self.theta
    }

    pub fn spec(&self) -> GeneratorSpec {
        self.spec
    }

    fn eta_sigma(&self, c: Component) -> (f64, f64) {
        match c {
            Component::First => (self.theta.eta1, self.theta.sigma1),
            Component::Second => (self.theta.eta2, self.theta.sigma2),
        }
    }

    /// `(t̃₁, t̃₂)`.
    pub fn standardize(&self, t: Pair) -> Result<[f64; 2]> {
        check_pair(t)?;
        Ok(self.standardize_raw(t))
    }

    pub(crate) fn standardize_raw(&self, t: Pair) -> [f64; 2] {
        let th = &self.theta;
        [
            (t[0].ln() - th.eta1.ln()) / th.sigma1,
            (t[1].ln() - th.eta2.ln()) / th.sigma2,
        ]
    }

    /// Inverse of [`Bls::standardize`].
    pub fn destandardize(&self, z: [f64; 2]) -> Pair {
        let th = &self.theta;
        [th.eta1 * (th.sigma1 * z[0]).exp(), th.eta2 * (th.sigma2 * z[1]).exp()]
    }

    /// Squared Mahalanobis distance `(t̃₁² − 2ρt̃₁t̃₂ + t̃₂²)/(1 − ρ²)`.
    pub fn mahalanobis_sq(&self, t: Pair) -> Result<f64> {
        let z = self.standardize(t)?;
        Ok(quad_form(z, self.theta.rho))
    }

    /// Joint density of `(T₁, T₂)`.
    pub fn pdf(&self, t: Pair) -> Result<f64> {
        Ok(self.ln_pdf(t)?.exp())
    }

    /// Log joint density, computed entirely in log space.
    pub fn ln_pdf(&self, t: Pair) -> Result<f64> {
        check_pair(t)?;
        let th = &self.theta;
        let z = self.standardize_raw(t);
        let x = quad_form(z, th.rho);
        Ok(self.spec.ln_g_raw(x)
            - t[0].ln()
            - t[1].ln()
            - th.sigma1.ln()
            - th.sigma2.ln()
            - 0.5 * (-th.rho * th.rho).ln_1p()
            - self.spec.ln_partition())
    }

    /// Density of `Tᵢ` alone: `f_{Z₁}(t̃ᵢ)/(σᵢ tᵢ)`.
    pub fn marginal_pdf(&self, c: Component, t: f64) -> Result<f64> {
        if !(t > 0.0) {
            return domain(format!("marginal argument must be positive, got {t}"));
        }
        let (eta, sigma) = self.eta_sigma(c);
        let z = (t.ln() - eta.ln()) / sigma;
        Ok(marginal::z_pdf(&self.spec, z)? / (sigma * t))
    }

    /// `P(Tᵢ ≤ t)`.
    pub fn marginal_cdf(&self, c: Component, t: f64) -> Result<f64> {
        if !(t >= 0.0) {
            return domain(format!("marginal argument must be nonnegative, got {t}"));
        }
        if t == 0.0 {
            return Ok(0.0);
        }
        let (eta, sigma) = self.eta_sigma(c);
        marginal::z_cdf(&self.spec, (t.ln() - eta.ln()) / sigma)
    }

    /// `Q_{Tᵢ}(p) = ηᵢ exp(σᵢ Q_{Z₁}(p))`. Both margins share the law of `Z₁`.
    pub fn marginal_quantile(&self, c: Component, p: f64) -> Result<f64> {
        let (eta, sigma) = self.eta_sigma(c);
        Ok(eta * (sigma * marginal::z_quantile(&self.spec, p)?).exp())
    }
}

pub(crate) fn quad_form(z: [f64; 2], rho: f64) -> f64 {
    (z[0] * z[0] - 2.0 * rho * z[0] * z[1] + z[1] * z[1]) / (1.0 - rho * rho)
}
