//! Density generators for the eight bivariate log-symmetric families.
//!
//! Each [`GeneratorSpec`] carries its family tag and frozen extra parameters
//! and exposes the generator `g`, the score ratio `r = g'/g`, the partition
//! function (closed form and by quadrature) and, where it exists, the
//! characteristic generator.

use std::f64::consts::{LN_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::quad::{integrate_tail, integrate_with_breaks, QuadOptions};
use crate::specfun::{
    bessel_k01_scaled, gamma_series_sum, gamma_series_sum_deriv, ln_bessel_k0, ln_gamma_pos,
    ln_lower_incomplete_gamma,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GeneratorId {
    #[serde(rename = "lognormal")]
    LogNormal,
    #[serde(rename = "logt")]
    LogStudentT,
    #[serde(rename = "logpvii")]
    LogPearsonVII,
    #[serde(rename = "loghyperbolic")]
    LogHyperbolic,
    #[serde(rename = "loglaplace")]
    LogLaplace,
    #[serde(rename = "logslash")]
    LogSlash,
    #[serde(rename = "logpexp")]
    LogPowerExponential,
    #[serde(rename = "loglogistic")]
    LogLogistic,
}

impl GeneratorId {
    pub const ALL: [GeneratorId; 8] = [
        GeneratorId::LogNormal,
        GeneratorId::LogStudentT,
        GeneratorId::LogPearsonVII,
        GeneratorId::LogHyperbolic,
        GeneratorId::LogLaplace,
        GeneratorId::LogSlash,
        GeneratorId::LogPowerExponential,
        GeneratorId::LogLogistic,
    ];

    /// Identifier used on the command line and in serialized output.
    pub fn cli_name(self) -> &'static str {
        match self {
            GeneratorId::LogNormal => "lognormal",
            GeneratorId::LogStudentT => "logt",
            GeneratorId::LogPearsonVII => "logpvii",
            GeneratorId::LogHyperbolic => "loghyperbolic",
            GeneratorId::LogLaplace => "loglaplace",
            GeneratorId::LogSlash => "logslash",
            GeneratorId::LogPowerExponential => "logpexp",
            GeneratorId::LogLogistic => "loglogistic",
        }
    }

    pub fn display_name(self) -> &'static str {
        match self {
            GeneratorId::LogNormal => "Log-normal",
            GeneratorId::LogStudentT => "Log-Student-t",
            GeneratorId::LogPearsonVII => "Log-Pearson Type VII",
            GeneratorId::LogHyperbolic => "Log-hyperbolic",
            GeneratorId::LogLaplace => "Log-Laplace",
            GeneratorId::LogSlash => "Log-slash",
            GeneratorId::LogPowerExponential => "Log-power-exponential",
            GeneratorId::LogLogistic => "Log-logistic",
        }
    }

    /// Whether the family has extra shape parameters that must be supplied.
    pub fn has_extra_params(self) -> bool {
        !matches!(
            self,
            GeneratorId::LogNormal | GeneratorId::LogLaplace | GeneratorId::LogLogistic
        )
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.cli_name())
    }
}

impl FromStr for GeneratorId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GeneratorId::ALL
            .into_iter()
            .find(|id| id.cli_name() == s)
            .ok_or_else(|| {
                Error::Usage(format!(
                    "unknown model '{s}' (expected one of: {})",
                    GeneratorId::ALL.map(|g| g.cli_name()).join(", ")
                ))
            })
    }
}

/// Extra shape parameters. Only the fields used by the family may be set.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct GeneratorParams {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub nu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub xi: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub theta: Option<f64>,
}

impl GeneratorParams {
    pub fn none() -> Self {
        Self::default()
    }
    pub fn nu(nu: f64) -> Self {
        Self {
            nu: Some(nu),
            ..Self::default()
        }
    }
    pub fn xi(xi: f64) -> Self {
        Self {
            xi: Some(xi),
            ..Self::default()
        }
    }
    pub fn xi_theta(xi: f64, theta: f64) -> Self {
        Self {
            xi: Some(xi),
            theta: Some(theta),
            nu: None,
        }
    }
}

impl fmt::Display for GeneratorParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(v) = self.nu {
            parts.push(format!("nu={v}"));
        }
        if let Some(v) = self.xi {
            parts.push(format!("xi={v}"));
        }
        if let Some(v) = self.theta {
            parts.push(format!("theta={v}"));
        }
        if parts.is_empty() {
            f.write_str("-")
        } else {
            f.write_str(&parts.join(";"))
        }
    }
}

/// A validated generator family with frozen extra parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpecRepr", into = "SpecRepr")]
pub struct GeneratorSpec {
    id: GeneratorId,
    params: GeneratorParams,
    ln_partition: f64,
}

#[derive(Serialize, Deserialize)]
struct SpecRepr {
    family: GeneratorId,
    #[serde(flatten)]
    params: GeneratorParams,
}

impl TryFrom<SpecRepr> for GeneratorSpec {
    type Error = Error;
    fn try_from(r: SpecRepr) -> Result<Self> {
        GeneratorSpec::new(r.family, r.params)
    }
}

impl From<GeneratorSpec> for SpecRepr {
    fn from(s: GeneratorSpec) -> Self {
        SpecRepr {
            family: s.id,
            params: s.params,
        }
    }
}

fn require(name: &str, v: Option<f64>, id: GeneratorId) -> Result<f64> {
    match v {
        Some(x) if x.is_finite() => Ok(x),
        _ => domain(format!("{} requires a finite --{name}", id.cli_name())),
    }
}

impl GeneratorSpec {
    pub fn new(id: GeneratorId, params: GeneratorParams) -> Result<Self> {
        use GeneratorId::*;
        let allowed: (bool, bool, bool) = match id {
            LogNormal | LogLaplace | LogLogistic => (false, false, false),
            LogStudentT | LogHyperbolic | LogSlash => (true, false, false),
            LogPearsonVII => (false, true, true),
            LogPowerExponential => (false, true, false),
        };
        for (set, ok, name) in [
            (params.nu.is_some(), allowed.0, "nu"),
            (params.xi.is_some(), allowed.1, "xi"),
            (params.theta.is_some(), allowed.2, "theta"),
        ] {
            if set && !ok {
                return domain(format!("{} does not take parameter {name}", id.cli_name()));
            }
        }
        match id {
            LogStudentT | LogHyperbolic => {
                let nu = require("nu", params.nu, id)?;
                if nu <= 0.0 {
                    return domain(format!("{} requires nu > 0, got {nu}", id.cli_name()));
                }
            }
            LogSlash => {
                let nu = require("nu", params.nu, id)?;
                if nu <= 1.0 {
                    return domain(format!("logslash requires nu > 1, got {nu}"));
                }
            }
            LogPearsonVII => {
                let xi = require("xi", params.xi, id)?;
                let theta = require("theta", params.theta, id)?;
                if xi <= 1.0 || theta <= 0.0 {
                    return domain(format!(
                        "logpvii requires xi > 1 and theta > 0, got xi={xi}, theta={theta}"
                    ));
                }
            }
            LogPowerExponential => {
                let xi = require("xi", params.xi, id)?;
                if !(xi > -1.0 && xi <= 1.0) {
                    return domain(format!("logpexp requires -1 < xi <= 1, got {xi}"));
                }
            }
            LogNormal | LogLaplace | LogLogistic => {}
        }
        let mut spec = Self {
            id,
            params,
            ln_partition: 0.0,
        };
        spec.ln_partition = spec.ln_partition_closed();
        Ok(spec)
    }

    pub fn log_normal() -> Self {
        Self::new(GeneratorId::LogNormal, GeneratorParams::none()).expect("valid")
    }
    pub fn log_student_t(nu: f64) -> Result<Self> {
        Self::new(GeneratorId::LogStudentT, GeneratorParams::nu(nu))
    }
    pub fn log_pearson_vii(xi: f64, theta: f64) -> Result<Self> {
        Self::new(GeneratorId::LogPearsonVII, GeneratorParams::xi_theta(xi, theta))
    }
    pub fn log_hyperbolic(nu: f64) -> Result<Self> {
        Self::new(GeneratorId::LogHyperbolic, GeneratorParams::nu(nu))
    }
    pub fn log_laplace() -> Self {
        Self::new(GeneratorId::LogLaplace, GeneratorParams::none()).expect("valid")
    }
    pub fn log_slash(nu: f64) -> Result<Self> {
        Self::new(GeneratorId::LogSlash, GeneratorParams::nu(nu))
    }
    pub fn log_power_exponential(xi: f64) -> Result<Self> {
        Self::new(GeneratorId::LogPowerExponential, GeneratorParams::xi(xi))
    }
    pub fn log_logistic() -> Self {
        Self::new(GeneratorId::LogLogistic, GeneratorParams::none()).expect("valid")
    }

    pub fn id(&self) -> GeneratorId {
        self.id
    }

    pub fn params(&self) -> GeneratorParams {
        self.params
    }

    fn nu(&self) -> f64 {
        self.params.nu.unwrap_or(f64::NAN)
    }
    fn xi(&self) -> f64 {
        self.params.xi.unwrap_or(f64::NAN)
    }
    fn theta(&self) -> f64 {
        self.params.theta.unwrap_or(f64::NAN)
    }

    /// True only for the log-normal family, whose ϑ(x) = e^{x/2}.
    pub fn has_characteristic_generator(&self) -> bool {
        self.id == GeneratorId::LogNormal
    }

    /// True for the families whose squared Mahalanobis distance follows a
    /// named reference law (χ²₂ and 2·F(2, ν)).
    pub fn has_closed_radial_law(&self) -> bool {
        matches!(self.id, GeneratorId::LogNormal | GeneratorId::LogStudentT)
    }

    /// Whether r(x) is singular at the origin.
    pub fn score_singular_at_zero(&self) -> bool {
        match self.id {
            GeneratorId::LogLaplace | GeneratorId::LogSlash => true,
            GeneratorId::LogPowerExponential => self.xi() > 0.0,
            _ => false,
        }
    }

    /// log g(x) without argument checks. Log-Laplace returns +∞ at x = 0.
    pub(crate) fn ln_g_raw(&self, x: f64) -> f64 {
        use GeneratorId::*;
        match self.id {
            LogNormal => -0.5 * x,
            LogStudentT => {
                let nu = self.nu();
                -0.5 * (nu + 2.0) * (x / nu).ln_1p()
            }
            LogPearsonVII => -self.xi() * (x / self.theta()).ln_1p(),
            LogHyperbolic => -self.nu() * (1.0 + x).sqrt(),
            LogLaplace => {
                if x == 0.0 {
                    f64::INFINITY
                } else {
                    ln_bessel_k0((2.0 * x).sqrt()).unwrap_or(f64::NEG_INFINITY)
                }
            }
            LogSlash => {
                let s = 0.5 * (self.nu() + 1.0);
                let y = 0.5 * x;
                if y < s + 1.0 {
                    -s * LN_2 - y + gamma_series_sum(s, y).ln()
                } else {
                    -s * x.ln() + ln_lower_incomplete_gamma(s, y)
                }
            }
            LogPowerExponential => -0.5 * x.powf(1.0 / (1.0 + self.xi())),
            LogLogistic => -x - 2.0 * (-x).exp().ln_1p(),
        }
    }

    fn check_x(x: f64) -> Result<()> {
        if !(x >= 0.0) {
            return domain(format!("generator argument must be >= 0, got {x}"));
        }
        Ok(())
    }

    /// The density generator g(x), x ≥ 0.
    pub fn g(&self, x: f64) -> Result<f64> {
        Self::check_x(x)?;
        Ok(self.ln_g_raw(x).exp())
    }

    /// log g(x), x ≥ 0.
    pub fn ln_g(&self, x: f64) -> Result<f64> {
        Self::check_x(x)?;
        Ok(self.ln_g_raw(x))
    }

    /// r(x) = g'(x)/g(x) without argument checks; singular families return
    /// a non-finite value at 0.
    pub(crate) fn r_raw(&self, x: f64) -> f64 {
        use GeneratorId::*;
        match self.id {
            LogNormal => -0.5,
            LogStudentT => {
                let nu = self.nu();
                -0.5 * (nu + 2.0) / (nu + x)
            }
            LogPearsonVII => -self.xi() / (self.theta() + x),
            LogHyperbolic => -0.5 * self.nu() / (1.0 + x).sqrt(),
            LogLaplace => {
                let u = (2.0 * x).sqrt();
                match bessel_k01_scaled(u) {
                    Ok((k0e, k1e)) => -k1e / (u * k0e),
                    Err(_) => f64::NEG_INFINITY,
                }
            }
            LogSlash => {
                let s = 0.5 * (self.nu() + 1.0);
                let y = 0.5 * x;
                if x == 0.0 {
                    f64::NAN
                } else if y < s + 1.0 {
                    -0.5 + 0.5 * gamma_series_sum_deriv(s, y) / gamma_series_sum(s, y)
                } else {
                    let ln_low = ln_lower_incomplete_gamma(s, y);
                    -s / x + 0.5 * ((s - 1.0) * y.ln() - y - ln_low).exp()
                }
            }
            LogPowerExponential => {
                let xi = self.xi();
                if x == 0.0 {
                    if xi > 0.0 {
                        return f64::NEG_INFINITY;
                    } else if xi < 0.0 {
                        return 0.0;
                    }
                }
                -x.powf(-xi / (xi + 1.0)) / (2.0 * (xi + 1.0))
            }
            LogLogistic => -(0.5 * x).tanh(),
        }
    }

    /// The score ratio r(x) = g'(x)/g(x).
    pub fn r(&self, x: f64) -> Result<f64> {
        Self::check_x(x)?;
        if x == 0.0 && self.score_singular_at_zero() {
            return Err(Error::Singular(self.id.cli_name().to_string()));
        }
        Ok(self.r_raw(x))
    }

    fn ln_partition_closed(&self) -> f64 {
        use GeneratorId::*;
        let ln_pi = PI.ln();
        match self.id {
            LogNormal => (2.0 * PI).ln(),
            LogStudentT => {
                let nu = self.nu();
                ln_gamma_pos(0.5 * nu) + nu.ln() + ln_pi - ln_gamma_pos(0.5 * (nu + 2.0))
            }
            LogPearsonVII => {
                let (xi, theta) = (self.xi(), self.theta());
                ln_gamma_pos(xi - 1.0) + theta.ln() + ln_pi - ln_gamma_pos(xi)
            }
            LogHyperbolic => {
                let nu = self.nu();
                (2.0 * PI).ln() + (nu + 1.0).ln() - nu - 2.0 * nu.ln()
            }
            LogLaplace => ln_pi,
            LogSlash => {
                let nu = self.nu();
                ln_pi - (nu - 1.0).ln() + 0.5 * (3.0 - nu) * LN_2
            }
            LogPowerExponential => {
                let xi = self.xi();
                (xi + 1.0) * LN_2 + (1.0 + xi).ln() + ln_gamma_pos(1.0 + xi) + ln_pi
            }
            LogLogistic => (0.5 * PI).ln(),
        }
    }

    /// Closed-form partition function Z_g.
    pub fn partition_closed(&self) -> f64 {
        self.ln_partition.exp()
    }

    /// log Z_g.
    pub fn ln_partition(&self) -> f64 {
        self.ln_partition
    }

    /// Z_g = π ∫₀^∞ g(u) du by adaptive quadrature.
    pub fn partition_numeric(&self) -> Result<f64> {
        let opts = QuadOptions::tol(1e-14, 1e-11);
        let head = integrate_with_breaks(|u| self.ln_g_raw(u).exp(), &[0.0, 0.1, 1.0], opts)?;
        let tail = integrate_tail(|u| self.ln_g_raw(u).exp(), 1.0, opts)?;
        Ok(PI * (head.value + tail.value))
    }

    /// ϑ(x) when the characteristic generator exists; `None` otherwise.
    pub fn characteristic_generator(&self, x: f64) -> Option<f64> {
        match self.id {
            GeneratorId::LogNormal => Some((0.5 * x).exp()),
            _ => None,
        }
    }

    /// The parameter set used in the default test/benchmark grids.
    pub fn defaults() -> Vec<GeneratorSpec> {
        vec![
            Self::log_normal(),
            Self::log_student_t(3.0).unwrap(),
            Self::log_student_t(7.0).unwrap(),
            Self::log_pearson_vii(5.0, 22.0).unwrap(),
            Self::log_hyperbolic(2.0).unwrap(),
            Self::log_laplace(),
            Self::log_slash(4.0).unwrap(),
            Self::log_slash(5.0).unwrap(),
            Self::log_power_exponential(0.3).unwrap(),
            Self::log_power_exponential(0.5).unwrap(),
            Self::log_logistic(),
        ]
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.id.has_extra_params() {
            f.pad(&format!("{}({})", self.id.cli_name(), self.params))
        } else {
            f.pad(self.id.cli_name())
        }
    }
}
