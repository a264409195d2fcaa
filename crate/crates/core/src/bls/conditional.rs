use super::marginal::{z_pdf, z_sf};
use super::{Bls, Component, Interval};
use crate::error::{domain, Error, Result};
use crate::generators::GeneratorId;
use crate::quad::{integrate_with_breaks, origin_breaks, QuadOptions};
use crate::specfun::{std_normal_cdf, student_t_cdf, student_t_pdf};

/// Below this, `P(T₂ ∈ B)` is treated as zero.
const MIN_CONDITIONING_MASS: f64 = 1e-300;

impl Bls {
    /// Density of `T₂ | T₁ = t₁` at `t₂`, the joint density over the marginal of `T₁`.
    pub fn conditional_pdf_t2_given_t1(&self, t1: f64, t2: f64) -> Result<f64> {
        let joint = self.ln_pdf([t1, t2])?;
        let marginal = self.marginal_pdf(Component::First, t1)?;
        if marginal <= 0.0 {
            return Err(Error::ZeroProbability(marginal));
        }
        Ok((joint - marginal.ln()).exp())
    }

    /// Density of `T₁ | T₂ ∈ B` at `t₁` for an interval `B`.
    ///
    /// Closed forms for the log-normal (Φ ratio) and log-Student-t (ratio of
    /// t CDFs with `ν+1` and `ν` degrees of freedom); quadrature otherwise.
    pub fn conditional_pdf_t1_given_t2_in(&self, t1: f64, b: Interval) -> Result<f64> {
        if !(t1 > 0.0) {
            return domain(format!("t1 must be positive, got {t1}"));
        }
        let th = self.theta;
        let s = (1.0 - th.rho * th.rho).sqrt();
        let z1 = (t1.ln() - th.eta1.ln()) / th.sigma1;
        let b0 = |v: f64| (v.ln() - th.eta2.ln()) / th.sigma2;
        let (lo0, hi0) = (b0(b.lo), b0(b.hi));
        let a = (lo0 - th.rho * z1) / s;
        let bb = (hi0 - th.rho * z1) / s;

        let spec = self.spec;
        let prob_b = z_sf(&spec, lo0)? - z_sf(&spec, hi0)?;
        if !(prob_b > MIN_CONDITIONING_MASS) {
            return Err(Error::ZeroProbability(prob_b));
        }
        let jac = 1.0 / (t1 * th.sigma1);
        let numerator = match spec.id() {
            GeneratorId::LogNormal => {
                let phi = (-0.5 * z1 * z1).exp() / (2.0 * std::f64::consts::PI).sqrt();
                phi * (std_normal_cdf(-a) - std_normal_cdf(-bb))
            }
            GeneratorId::LogStudentT => {
                let nu = spec.params().nu.unwrap_or(f64::NAN);
                let k = ((nu + 1.0) / (nu + z1 * z1)).sqrt();
                let upper = student_t_cdf(-k * a, nu + 1.0)? - student_t_cdf(-k * bb, nu + 1.0)?;
                student_t_pdf(z1, nu)? * upper
            }
            _ => {
                if a == f64::NEG_INFINITY && bb == f64::INFINITY {
                    z_pdf(&spec, z1)?
                } else {
                    let pts = origin_breaks(a, bb, 0.5);
                    let z12 = z1 * z1;
                    let v = integrate_with_breaks(
                        |w| spec.ln_g_raw(z12 + w * w).exp(),
                        &pts,
                        QuadOptions::tol(1e-14, 1e-11),
                    )?;
                    v.value / spec.partition_closed()
                }
            }
        };
        Ok(jac * numerator / prob_b)
    }
}
