use super::{Bls, Pair};
use crate::bls::radial::RadialLaw;
use crate::error::{domain, Result};
use crate::quad::{integrate_with_breaks, origin_breaks, QuadOptions};

/// Mass left outside the truncation disk.
const TRUNCATION_MASS: f64 = 1e-10;

impl Bls {
    /// Joint CDF `P(T₁ ≤ t₁, T₂ ≤ t₂)`.
    ///
    /// With `X̃₁ = Z₁`, `X̃₂ = ρZ₁ + √(1−ρ²)Z₂` the event becomes a half-plane
    /// cut of the spherical density; the double integral runs over the disk
    /// whose radius leaves `1e-10` of radial mass outside.
    pub fn cdf(&self, t: Pair) -> Result<f64> {
        if !(t[0] >= 0.0 && t[1] >= 0.0) {
            return domain(format!("CDF arguments must be nonnegative, got ({}, {})", t[0], t[1]));
        }
        if t[0] == 0.0 || t[1] == 0.0 {
            return Ok(0.0);
        }
        let z = self.standardize_raw(t);
        let rho = self.theta.rho;
        let s = (1.0 - rho * rho).sqrt();
        let r2 = RadialLaw::new(self.spec).quantile(1.0 - TRUNCATION_MASS)?;
        let r = r2.sqrt();
        let upper1 = z[0].min(r);
        if upper1 <= -r {
            return Ok(0.0);
        }
        let spec = self.spec;
        let inv_z = 1.0 / spec.partition_closed();
        let inner_opts = QuadOptions::tol(1e-12, 1e-10);
        let mut fail = None;
        let outer = |z1: f64| -> f64 {
            let half = (r2 - z1 * z1).max(0.0).sqrt();
            let hi = if z[1].is_infinite() {
                half
            } else {
                ((z[1] - rho * z1) / s).min(half)
            };
            if hi <= -half {
                return 0.0;
            }
            let pts = origin_breaks(-half, hi, 0.5);
            match integrate_with_breaks(|z2| spec.ln_g_raw(z1 * z1 + z2 * z2).exp(), &pts, inner_opts) {
                Ok(v) => v.value * inv_z,
                Err(e) => {
                    fail.get_or_insert(e);
                    0.0
                }
            }
        };
        let pts = origin_breaks(-r, upper1, 0.5);
        let total = integrate_with_breaks(outer, &pts, QuadOptions::tol(1e-9, 1e-9));
        if let Some(e) = fail {
            return Err(e);
        }
        Ok(total?.value.clamp(0.0, 1.0))
    }
}
