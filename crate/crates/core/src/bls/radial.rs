//! Law of the squared Mahalanobis distance `d² = Z₁² + Z₂²`, with density
//! `π g(x)/Z_g` on `x > 0`.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::generators::{GeneratorId, GeneratorSpec};
use crate::quad::{brent, integrate, integrate_tail, integrate_with_breaks, QuadOptions};

const TABLE_NODES: usize = 2048;

fn tight() -> QuadOptions {
    QuadOptions::tol(1e-15, 1e-12)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialLaw {
    spec: GeneratorSpec,
    ln_norm: f64,
}

impl RadialLaw {
    pub fn new(spec: GeneratorSpec) -> Self {
        Self {
            spec,
            ln_norm: PI.ln() - spec.ln_partition(),
        }
    }

    pub fn spec(&self) -> GeneratorSpec {
        self.spec
    }

    fn pdf_raw(&self, x: f64) -> f64 {
        (self.ln_norm + self.spec.ln_g_raw(x)).exp()
    }

    pub fn pdf(&self, x: f64) -> Result<f64> {
        if !(x >= 0.0) {
            return domain(format!("squared distance must be >= 0, got {x}"));
        }
        Ok(self.pdf_raw(x))
    }

    /// `P(d² ≤ x)`; exact for the log-normal (χ²₂) and log-Student-t (2·F₂,ν) laws.
    pub fn cdf(&self, x: f64) -> Result<f64> {
        if x.is_nan() {
            return domain("squared distance is NaN");
        }
        if x <= 0.0 {
            return Ok(0.0);
        }
        if x == f64::INFINITY {
            return Ok(1.0);
        }
        match self.spec.id() {
            GeneratorId::LogNormal => Ok(-(-0.5 * x).exp_m1()),
            GeneratorId::LogStudentT => {
                let nu = self.spec.params().nu.unwrap_or(f64::NAN);
                Ok(-(-0.5 * nu * (x / nu).ln_1p()).exp_m1())
            }
            _ if x < 1.0 => self.head_integral(x),
            _ => Ok(1.0 - self.sf(x)?),
        }
    }

    /// `P(d² > x)`, accurate far into the tail.
    pub fn sf(&self, x: f64) -> Result<f64> {
        if x.is_nan() {
            return domain("squared distance is NaN");
        }
        if x <= 0.0 {
            return Ok(1.0);
        }
        if x == f64::INFINITY {
            return Ok(0.0);
        }
        match self.spec.id() {
            GeneratorId::LogNormal => Ok((-0.5 * x).exp()),
            GeneratorId::LogStudentT => {
                let nu = self.spec.params().nu.unwrap_or(f64::NAN);
                Ok((-0.5 * nu * (x / nu).ln_1p()).exp())
            }
            _ if x < 1.0 => Ok(1.0 - self.head_integral(x)?),
            _ => Ok(integrate_tail(|u| self.pdf_raw(u), x, tight())?.value.min(1.0)),
        }
    }

    fn head_integral(&self, x: f64) -> Result<f64> {
        let pts = [0.0, 1e-8 * x, 1e-4 * x, 1e-2 * x, x];
        Ok(integrate_with_breaks(|u| self.pdf_raw(u), &pts, tight())?.value)
    }

    /// Quantile: closed forms for log-normal and log-Student-t, otherwise a
    /// bracketed Brent solve on the CDF (lower half) or survival function (upper half).
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return domain(format!("probability must lie in (0, 1), got {p}"));
        }
        match self.spec.id() {
            GeneratorId::LogNormal => return Ok(-2.0 * (-p).ln_1p()),
            GeneratorId::LogStudentT => {
                let nu = self.spec.params().nu.unwrap_or(f64::NAN);
                return Ok(nu * (-(2.0 / nu) * (-p).ln_1p()).exp_m1());
            }
            _ => {}
        }
        let lower = p <= 0.5;
        let mut fail = None;
        let mut f = |x: f64| -> f64 {
            let v = if lower {
                self.cdf(x).map(|c| c - p)
            } else {
                self.sf(x).map(|s| (1.0 - p) - s)
            };
            v.unwrap_or_else(|e| {
                fail.get_or_insert(e);
                f64::NAN
            })
        };
        let mut hi = 1.0;
        let mut lo = 0.0;
        while f(hi) < 0.0 {
            lo = hi;
            hi *= 4.0;
            if hi > 1e300 {
                return Err(Error::RootFinding(format!("no bracket for quantile {p}")));
            }
        }
        let root = brent(&mut f, lo, hi, 1e-15 * hi, 300);
        if let Some(e) = fail {
            return Err(e);
        }
        root
    }

    /// Precomputed inverse-CDF table for repeated draws.
    pub fn sampler(&self) -> Result<RadialSampler> {
        RadialSampler::new(*self)
    }
}

/// Inverse-transform sampler for `d²`. For generators without a closed
/// quantile it keeps a monotone table of the CDF on 2048 nodes
/// `x = c·z/(1 − z)` and refines each draw by safeguarded Newton steps on the
/// exact integral; draws beyond the last node solve the survival function.
#[derive(Debug, Clone)]
pub struct RadialSampler {
    law: RadialLaw,
    xs: Vec<f64>,
    cum: Vec<f64>,
}

impl RadialSampler {
    fn new(law: RadialLaw) -> Result<Self> {
        if law.spec.has_closed_radial_law() {
            return Ok(Self {
                law,
                xs: Vec::new(),
                cum: Vec::new(),
            });
        }
        let c = law.quantile(0.5)?;
        let xs: Vec<f64> = (0..TABLE_NODES)
            .map(|k| {
                let z = k as f64 / TABLE_NODES as f64;
                c * z / (1.0 - z)
            })
            .collect();
        let mut cum = Vec::with_capacity(TABLE_NODES);
        cum.push(0.0);
        for w in xs.windows(2) {
            let piece = integrate(|u| law.pdf_raw(u), w[0], w[1], tight())?.value;
            cum.push(cum.last().unwrap() + piece);
        }
        Ok(Self { law, xs, cum })
    }

    pub fn law(&self) -> &RadialLaw {
        &self.law
    }

    /// The `u`-quantile of `d²` for `u ∈ [0, 1)`.
    pub fn invert(&self, u: f64) -> Result<f64> {
        if !(0.0..1.0).contains(&u) {
            return domain(format!("uniform variate must lie in [0, 1), got {u}"));
        }
        if u == 0.0 {
            return Ok(0.0);
        }
        if self.xs.is_empty() {
            return self.law.quantile(u);
        }
        let last = *self.cum.last().unwrap();
        if u >= last {
            return self.invert_tail(u);
        }
        let k = self.cum.partition_point(|&c| c <= u) - 1;
        let (mut lo, mut hi) = (self.xs[k], self.xs[k + 1]);
        let (x0, f0) = (self.xs[k], self.cum[k]);
        let frac = (u - f0) / (self.cum[k + 1] - f0);
        let mut x = lo + frac * (hi - lo);
        for _ in 0..60 {
            let fx = f0 + integrate(|t| self.law.pdf_raw(t), x0, x, tight())?.value;
            let diff = fx - u;
            if diff.abs() < 1e-14 {
                break;
            }
            if diff > 0.0 {
                hi = x;
            } else {
                lo = x;
            }
            let step = diff / self.law.pdf_raw(x);
            let mut next = x - step;
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            if (next - x).abs() <= 1e-15 * x.max(1e-300) {
                x = next;
                break;
            }
            x = next;
        }
        Ok(x)
    }

    fn invert_tail(&self, u: f64) -> Result<f64> {
        let target = (1.0 - u).ln();
        let mut lo = *self.xs.last().unwrap();
        let mut hi = 2.0 * lo;
        let f = |x: f64| -> f64 {
            match self.law.sf(x) {
                Ok(s) if s > 0.0 => target - s.ln(),
                Ok(_) => 1.0,
                Err(_) => f64::NAN,
            }
        };
        while f(hi) < 0.0 {
            lo = hi;
            hi *= 2.0;
            if hi > 1e300 {
                return Err(Error::RootFinding(format!("no bracket for radial tail at u={u}")));
            }
        }
        brent(f, lo, hi, 1e-14 * hi, 300)
    }
}
