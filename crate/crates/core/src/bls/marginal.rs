//! Marginal law of `Z₁` for the spherical base vector `(Z₁, Z₂)`.
//!
//! Every margin of a BLS vector is a log-location-scale transform of this law.

use crate::error::{domain, Error, Result};
use crate::generators::{GeneratorId, GeneratorSpec};
use crate::quad::{brent, integrate_tail, integrate_with_breaks, QuadOptions};
use crate::specfun::{std_normal_cdf, std_normal_pdf, student_t_cdf, student_t_pdf};

fn opts() -> QuadOptions {
    QuadOptions::tol(1e-14, 1e-11)
}

fn nu(spec: &GeneratorSpec) -> f64 {
    spec.params().nu.unwrap_or(f64::NAN)
}

/// `f_{Z₁}(z) = (2/Z_g) ∫₀^∞ g(z² + v²) dv`.
pub fn z_pdf(spec: &GeneratorSpec, z: f64) -> Result<f64> {
    if !z.is_finite() {
        return if z.is_nan() { domain("z is NaN") } else { Ok(0.0) };
    }
    match spec.id() {
        GeneratorId::LogNormal => return Ok(std_normal_pdf(z)),
        GeneratorId::LogStudentT => return student_t_pdf(z, nu(spec)),
        _ => {}
    }
    let z2 = z * z;
    let f = |v: f64| spec.ln_g_raw(z2 + v * v).exp();
    let head = integrate_with_breaks(f, &[0.0, 1e-6, 1e-3, 0.1, 1.0], opts())?.value;
    let tail = integrate_tail(f, 1.0, opts())?.value;
    Ok(2.0 * (head + tail) / spec.partition_closed())
}

/// `P(Z₁ > z)`. For `z ≥ 0` this is `(1/Z_g) ∫_{z²}^∞ g(x) arccos(z/√x) dx`.
pub fn z_sf(spec: &GeneratorSpec, z: f64) -> Result<f64> {
    if z.is_nan() {
        return domain("z is NaN");
    }
    if z < 0.0 {
        return Ok(1.0 - z_sf(spec, -z)?);
    }
    if z == f64::INFINITY {
        return Ok(0.0);
    }
    match spec.id() {
        GeneratorId::LogNormal => return Ok(std_normal_cdf(-z)),
        GeneratorId::LogStudentT => return student_t_cdf(-z, nu(spec)),
        _ => {}
    }
    if z == 0.0 {
        return Ok(0.5);
    }
    let z2 = z * z;
    // arccos(z/√x) written as atan2 keeps precision near x = z²
    let f = |x: f64| spec.ln_g_raw(x).exp() * (x - z2).max(0.0).sqrt().atan2(z);
    let total = if z2 < 1.0 {
        integrate_with_breaks(f, &[z2, 0.5 * (z2 + 1.0), 1.0], opts())?.value
            + integrate_tail(f, 1.0, opts())?.value
    } else {
        integrate_tail(f, z2, opts())?.value
    };
    Ok((total / spec.partition_closed()).clamp(0.0, 0.5))
}

/// `P(Z₁ ≤ z)`.
pub fn z_cdf(spec: &GeneratorSpec, z: f64) -> Result<f64> {
    z_sf(spec, -z)
}

/// Quantile of `Z₁`; odd about `p = 1/2`.
pub fn z_quantile(spec: &GeneratorSpec, p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return domain(format!("probability must lie in (0, 1), got {p}"));
    }
    if p == 0.5 {
        return Ok(0.0);
    }
    if p < 0.5 {
        return Ok(-z_quantile(spec, 1.0 - p)?);
    }
    let target = 1.0 - p;
    let mut fail = None;
    let mut f = |z: f64| match z_sf(spec, z) {
        Ok(s) => target - s,
        Err(e) => {
            fail.get_or_insert(e);
            f64::NAN
        }
    };
    let (mut lo, mut hi) = (0.0, 1.0);
    while f(hi) < 0.0 {
        lo = hi;
        hi *= 2.0;
        if hi > 1e300 {
            return Err(Error::RootFinding(format!("no bracket for marginal quantile {p}")));
        }
    }
    let root = brent(&mut f, lo, hi, 1e-14 * hi, 300);
    if let Some(e) = fail {
        return Err(e);
    }
    root
}
