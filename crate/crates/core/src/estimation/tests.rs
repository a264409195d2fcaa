use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::bls::Bls;

fn theta(v: [f64; 5]) -> BlsParams {
    BlsParams::from_slice(&v).unwrap()
}

fn simulate(spec: GeneratorSpec, th: [f64; 5], n: usize, seed: u64) -> Vec<Pair> {
    Bls::new(theta(th), spec).unwrap().sample(n, seed).unwrap()
}

/// Bivariate-normal MLE of the log-data: means, 1/n standard deviations, correlation.
pub(crate) fn normal_mle(data: &[Pair]) -> [f64; 5] {
    let n = data.len() as f64;
    let (l1, l2): (Vec<f64>, Vec<f64>) = data.iter().map(|p| (p[0].ln(), p[1].ln())).unzip();
    let m1 = l1.iter().sum::<f64>() / n;
    let m2 = l2.iter().sum::<f64>() / n;
    let v1 = l1.iter().map(|x| (x - m1).powi(2)).sum::<f64>() / n;
    let v2 = l2.iter().map(|x| (x - m2).powi(2)).sum::<f64>() / n;
    let c = l1.iter().zip(&l2).map(|(a, b)| (a - m1) * (b - m2)).sum::<f64>() / n;
    [m1.exp(), m2.exp(), v1.sqrt(), v2.sqrt(), c / (v1 * v2).sqrt()]
}

#[test]
fn log_likelihood_at_the_medians() {
    let th = theta([1.5, 0.5, 0.3, 0.7, 0.0]);
    let data = vec![[1.5, 0.5]; 5];
    let want = 5.0 * (1.0 / (2.0 * PI * 1.5 * 0.5 * 0.3 * 0.7)).ln();
    let got = log_likelihood(&th, &GeneratorSpec::log_normal(), &data).unwrap();
    assert!((got - want).abs() < 1e-12);
    assert!(log_likelihood(&th, &GeneratorSpec::log_normal(), &data[..4]).is_err());
}

#[test]
fn log_likelihood_matches_bivariate_normal_oracle() {
    let th = theta([1.2, 0.8, 0.4, 0.6, -0.3]);
    let data = simulate(GeneratorSpec::log_normal(), th.to_array(), 30, 1);
    let (m1, m2) = (th.eta1.ln(), th.eta2.ln());
    let (s1, s2, r) = (th.sigma1, th.sigma2, th.rho);
    let oracle: f64 = data
        .iter()
        .map(|p| {
            let (x, y) = (p[0].ln(), p[1].ln());
            let (u, v) = ((x - m1) / s1, (y - m2) / s2);
            let q = (u * u - 2.0 * r * u * v + v * v) / (1.0 - r * r);
            // bivariate normal log-density of (ln t₁, ln t₂) plus the log Jacobian
            -(2.0 * PI * s1 * s2 * (1.0 - r * r).sqrt()).ln() - 0.5 * q - x - y
        })
        .sum();
    let got = log_likelihood(&th, &GeneratorSpec::log_normal(), &data).unwrap();
    assert!((got - oracle).abs() < 1e-10);
}

#[test]
fn kernel_and_full_likelihood_differ_by_constants() {
    let spec = GeneratorSpec::log_slash(4.0).unwrap();
    let th = theta([1.0, 1.0, 0.5, 0.5, 0.5]);
    let data = simulate(spec, th.to_array(), 25, 2);
    let full = log_likelihood(&th, &spec, &data).unwrap();
    let kernel = log_likelihood_kernel(&th, &spec, &data).unwrap();
    let jac: f64 = data.iter().map(|p| (p[0] * p[1]).ln()).sum();
    assert!((full - (kernel - 25.0 * spec.ln_partition() - jac)).abs() < 1e-10);
}

#[test]
fn scale_changes_likelihood_by_the_jacobian() {
    let spec = GeneratorSpec::log_logistic();
    let th = theta([1.0, 2.0, 0.5, 0.4, 0.2]);
    let data = simulate(spec, th.to_array(), 20, 3);
    let (c1, c2) = (3.0, 0.25);
    let scaled: Vec<Pair> = data.iter().map(|p| [c1 * p[0], c2 * p[1]]).collect();
    let a = log_likelihood(&th, &spec, &data).unwrap();
    let b = log_likelihood(&th.scale(c1, c2).unwrap(), &spec, &scaled).unwrap();
    assert!((b - a + 20.0 * (c1 * c2).ln()).abs() < 1e-10);
}

fn fd_score(th: &BlsParams, spec: &GeneratorSpec, data: &[Pair]) -> [f64; 5] {
    let base = th.to_array();
    std::array::from_fn(|j| {
        let h = 1e-6 * base[j].abs().max(0.1);
        let mut p = base;
        let mut m = base;
        p[j] += h;
        m[j] -= h;
        let lp = log_likelihood(&BlsParams::from_slice(&p).unwrap(), spec, data).unwrap();
        let lm = log_likelihood(&BlsParams::from_slice(&m).unwrap(), spec, data).unwrap();
        (lp - lm) / (2.0 * h)
    })
}

#[test]
fn score_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for spec in GeneratorSpec::defaults() {
        for _ in 0..2 {
            let th = [
                rng.gen_range(0.5..2.0),
                rng.gen_range(0.5..2.0),
                rng.gen_range(0.3..1.0),
                rng.gen_range(0.3..1.0),
                rng.gen_range(-0.8..0.8),
            ];
            let data = simulate(spec, th, 40, rng.gen());
            // evaluate away from the truth so the score is not near zero
            let at = theta([th[0] * 1.1, th[1] * 0.9, th[2] * 1.2, th[3] * 0.85, th[4] * 0.7]);
            let s = score(&at, &spec, &data).unwrap();
            let fd = fd_score(&at, &spec, &data);
            for j in 0..5 {
                let scale = s[j].abs().max(1.0);
                assert!((s[j] - fd[j]).abs() / scale < 1e-5, "{spec} j={j}: {} vs {}", s[j], fd[j]);
            }
        }
    }
}

#[test]
fn score_vanishes_at_normal_mle() {
    let data = simulate(GeneratorSpec::log_normal(), [1.0, 1.0, 0.5, 0.5, 0.4], 200, 4);
    let mle = theta(normal_mle(&data));
    let s = score(&mle, &GeneratorSpec::log_normal(), &data).unwrap();
    for v in s {
        assert!(v.abs() / 200.0 < 1e-8, "{s:?}");
    }
}

#[test]
fn likelihood_equations_rewritten_form_at_root() {
    let spec = GeneratorSpec::log_hyperbolic(2.0).unwrap();
    let data = simulate(spec, [1.0, 1.0, 0.5, 0.5, 0.5], 150, 5);
    let fit = fit_mle(&data, &spec).unwrap();
    assert!(fit.converged);
    let th = fit.theta_hat;
    let n = data.len() as f64;
    let (mut a, mut b) = (0.0, 0.0);
    for p in &data {
        let z = standardized(&th, p);
        let g = spec.r(quad_form(z, th.rho)).unwrap();
        a += z[0] * g;
        b += (z[0] * z[0] - z[1] * z[1]) * g;
    }
    assert!((a / n).abs() < 1e-6 && (b / n).abs() < 1e-6, "{a} {b}");
}

#[test]
fn lognormal_fit_reproduces_closed_form() {
    for seed in 0..5 {
        let data = simulate(GeneratorSpec::log_normal(), [1.0, 2.0, 0.5, 0.3, 0.6], 200, 100 + seed);
        let fit = fit_mle(&data, &GeneratorSpec::log_normal()).unwrap();
        assert!(fit.converged);
        assert!(fit.grad_norm <= 1e-6);
        let want = normal_mle(&data);
        let got = fit.theta_hat.to_array();
        for j in 0..5 {
            assert!((got[j] - want[j]).abs() < 1e-6, "seed {seed} j={j}: {got:?} vs {want:?}");
        }
    }
}

#[test]
fn fit_survives_nearly_collinear_data() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let data: Vec<Pair> = (0..50)
        .map(|_| {
            let t: f64 = rng.gen_range(0.5..3.0);
            [t, t * (1.0 + 1e-7 * rng.gen::<f64>())]
        })
        .collect();
    let fit = fit_from(&data, &GeneratorSpec::log_normal(), Init::Default).unwrap();
    let th = fit.theta_hat;
    assert!(th.rho.abs() < 1.0);
    assert!(th.to_array().iter().all(|v| v.is_finite()));
}

#[test]
fn standard_errors_follow_normal_theory() {
    let spec = GeneratorSpec::log_normal();
    let data = simulate(spec, [1.0, 1.0, 0.5, 0.5, 0.3], 5000, 7);
    let fit = fit_mle(&data, &spec).unwrap();
    let se = fit.std_errors.unwrap();
    let delta = fit.theta_hat.eta1 * fit.theta_hat.sigma1 / 5000f64.sqrt();
    assert!((se.eta1 / delta - 1.0).abs() < 0.1, "{} vs {delta}", se.eta1);

    let small = simulate(spec, [1.0, 1.0, 0.5, 0.5, 0.3], 1000, 8);
    let large = simulate(spec, [1.0, 1.0, 0.5, 0.5, 0.3], 4000, 9);
    let a = fit_mle(&small, &spec).unwrap().std_errors.unwrap().to_array();
    let b = fit_mle(&large, &spec).unwrap().std_errors.unwrap().to_array();
    for j in 0..5 {
        assert!(a[j] > 0.0 && b[j] > 0.0);
        assert!((a[j] / b[j] - 2.0).abs() < 0.2, "j={j}: {}", a[j] / b[j]);
    }
    let again = standard_errors(&fit, &data).unwrap();
    assert_eq!(again, se);
}

#[test]
fn standard_errors_positive_for_every_family() {
    for spec in GeneratorSpec::defaults() {
        let data = simulate(spec, [1.0, 1.0, 0.5, 0.5, 0.5], 150, 10);
        let fit = fit_mle(&data, &spec).unwrap();
        assert!(fit.converged, "{spec}: {}", fit.message);
        let se = fit.std_errors.unwrap_or_else(|| panic!("{spec}: no SEs"));
        assert!(se.to_array().iter().all(|v| *v > 0.0));
    }
}

#[test]
fn both_default_starts_agree() {
    for spec in GeneratorSpec::defaults() {
        let data = simulate(spec, [1.0, 1.0, 0.5, 0.5, 0.25], 100, 11);
        let a = fit_from(&data, &spec, Init::Default).unwrap();
        let b = fit_from(&data, &spec, Init::Perturbed).unwrap();
        assert!(a.converged && b.converged, "{spec}");
        assert!((a.log_lik - b.log_lik).abs() < 1e-6, "{spec}: {} vs {}", a.log_lik, b.log_lik);
    }
}

#[test]
fn fits_are_equivariant() {
    let spec = GeneratorSpec::log_hyperbolic(2.0).unwrap();
    let data = simulate(spec, [1.0, 1.0, 0.5, 0.5, 0.4], 120, 12);
    let base = fit_mle(&data, &spec).unwrap().theta_hat;
    let (c1, c2) = (2.0, 0.5);
    let scaled: Vec<Pair> = data.iter().map(|p| [c1 * p[0], c2 * p[1]]).collect();
    let s = fit_mle(&scaled, &spec).unwrap().theta_hat;
    let want = base.scale(c1, c2).unwrap().to_array();
    for (g, w) in s.to_array().iter().zip(want) {
        assert!((g - w).abs() < 1e-6);
    }
    let c = 1.7;
    let powered: Vec<Pair> = data.iter().map(|p| [p[0].powf(c), p[1].powf(c)]).collect();
    let p = fit_mle(&powered, &spec).unwrap().theta_hat;
    let want = base.power(c, c).unwrap().to_array();
    for (g, w) in p.to_array().iter().zip(want) {
        assert!((g - w).abs() < 1e-6 * w.abs().max(1.0));
    }
}

#[test]
fn rho_score_changes_sign_across_the_interval() {
    let spec = GeneratorSpec::log_normal();
    for seed in 0..20 {
        let data = simulate(spec, [1.0, 1.0, 0.5, 0.5, 0.3], 50, 200 + seed);
        let at = |rho: f64| score(&theta([1.0, 1.0, 0.5, 0.5, rho]), &spec, &data).unwrap()[4];
        let (lo, hi) = (at(-(1.0 - 1e-4)), at(1.0 - 1e-4));
        assert!(lo.signum() != hi.signum(), "seed {seed}: {lo} {hi}");
    }
}

#[test]
fn information_criteria_arithmetic() {
    let (aic, bic) = information_criteria(-58.117, 15);
    assert!((aic - 126.23).abs() < 0.01);
    assert!((bic - 129.78).abs() < 0.01);
}

#[test]
fn profile_with_single_point_equals_direct_fit() {
    let spec = GeneratorSpec::log_student_t(5.0).unwrap();
    let data = simulate(spec, [1.0, 1.0, 0.5, 0.5, 0.3], 80, 13);
    let prof = profile_fit(&data, GeneratorId::LogStudentT, &[GeneratorParams::nu(5.0)]).unwrap();
    let direct = fit_mle(&data, &spec).unwrap();
    assert_eq!(prof.fit, direct);
    assert_eq!(prof.params, GeneratorParams::nu(5.0));
    assert!(profile_fit(&data, GeneratorId::LogStudentT, &[]).is_err());
}

#[test]
fn profile_ties_go_to_smaller_parameter() {
    // duplicated grid values give identical fits; order must not matter
    let data = simulate(GeneratorSpec::log_student_t(4.0).unwrap(), [1.0, 1.0, 0.5, 0.5, 0.0], 60, 14);
    let grid = [GeneratorParams::nu(9.0), GeneratorParams::nu(4.0), GeneratorParams::nu(4.0)];
    let a = profile_fit(&data, GeneratorId::LogStudentT, &grid).unwrap();
    let mut rev = grid;
    rev.reverse();
    let b = profile_fit(&data, GeneratorId::LogStudentT, &rev).unwrap();
    assert_eq!(a.params, b.params);
    assert_eq!(a.fit, b.fit);
}

#[test]
fn fit_result_json_layout() {
    let spec = GeneratorSpec::log_normal();
    let data = simulate(spec, [1.0, 1.0, 0.5, 0.5, 0.3], 50, 15);
    let fit = fit_mle(&data, &spec).unwrap();
    let v: serde_json::Value = serde_json::to_value(&fit).unwrap();
    for key in ["theta_hat", "std_errors", "log_lik", "aic", "bic", "converged", "spec", "n_obs"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert!(v["theta_hat"]["rho"].is_number());
    assert_eq!(v["spec"]["family"], "lognormal");
    let back: FitResult = serde_json::from_value(v).unwrap();
    assert_eq!(back, fit);
}

#[test]
fn wald_significance() {
    let spec = GeneratorSpec::log_normal();
    let data = simulate(spec, [1.0, 1.0, 0.5, 0.5, 0.0], 400, 16);
    let fit = fit_mle(&data, &spec).unwrap();
    let sig = fit.significant().unwrap();
    assert!(sig[0] && sig[2]);
    let z = fit.z_scores().unwrap();
    assert_eq!(sig[4], z[4].abs() > WALD_CRITICAL);
}

#[test]
fn laplace_fit_is_a_stationary_point() {
    let spec = GeneratorSpec::log_laplace();
    for seed in [5, 11, 20, 21] {
        let data = simulate(spec, [1.0, 1.0, 0.5, 0.5, 0.5], 150, seed);
        let fit = fit_mle(&data, &spec).unwrap();
        assert!(fit.converged, "seed {seed}: {}", fit.message);
        assert!(fit.log_lik.is_finite());
    }
}
