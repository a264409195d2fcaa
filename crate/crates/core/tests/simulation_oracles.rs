//! Checks whose oracle is a simulation: sampler against density, profile
//! likelihood recovery, model ranking and QQ self-consistency.

use blslab::bls::{Bls, BlsParams, Component};
use blslab::datakit::{compare_models, default_grid, qq_mahalanobis, Candidate, Dataset};
use blslab::estimation::{fit_mle, profile_fit};
use blslab::generators::{GeneratorId, GeneratorSpec};
use blslab::specfun::gamma_q;

/// Pearson χ² of a 6×6 histogram of `n` draws against cell probabilities
/// from the joint CDF, with cell edges at the marginal sextiles.
fn histogram_p_value(bls: &Bls, n: usize, seed: u64) -> f64 {
    const K: usize = 6;
    let edges = |c: Component| -> Vec<f64> {
        (1..K).map(|i| bls.marginal_quantile(c, i as f64 / K as f64).unwrap()).collect()
    };
    let (e1, e2) = (edges(Component::First), edges(Component::Second));
    // corner values of the CDF; index 0 is the origin side, K is +∞
    let corner = |i: usize, j: usize| -> f64 {
        match (i, j) {
            (0, _) | (_, 0) => 0.0,
            (K, K) => 1.0,
            (K, j) => j as f64 / K as f64,
            (i, K) => i as f64 / K as f64,
            (i, j) => bls.cdf([e1[i - 1], e2[j - 1]]).unwrap(),
        }
    };
    let mut c = vec![vec![0.0; K + 1]; K + 1];
    for (i, row) in c.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = corner(i, j);
        }
    }
    let cell = |t: f64, e: &[f64]| e.iter().take_while(|&&x| x <= t).count();
    let mut counts = [[0usize; K]; K];
    for t in bls.sample(n, seed).unwrap() {
        counts[cell(t[0], &e1)][cell(t[1], &e2)] += 1;
    }
    let mut chi2 = 0.0;
    for i in 0..K {
        for j in 0..K {
            let p = c[i + 1][j + 1] - c[i][j + 1] - c[i + 1][j] + c[i][j];
            let expected = p * n as f64;
            assert!(expected > 5.0, "cell ({i},{j}) too sparse: {expected}");
            chi2 += (counts[i][j] as f64 - expected).powi(2) / expected;
        }
    }
    let df = (K * K - 1) as f64;
    gamma_q(0.5 * df, 0.5 * chi2).unwrap()
}

#[test]
fn sampler_matches_density_on_a_histogram() {
    let th = BlsParams::new(1.5, 0.7, 0.4, 0.9, 0.55).unwrap();
    for spec in [
        GeneratorSpec::log_student_t(5.0).unwrap(),
        GeneratorSpec::log_laplace(),
        GeneratorSpec::log_power_exponential(0.3).unwrap(),
    ] {
        let bls = Bls::new(th, spec).unwrap();
        let p = histogram_p_value(&bls, 100_000, 31);
        assert!(p > 0.001, "{spec}: chi-square p-value {p}");
    }
}

#[test]
fn profile_recovers_student_degrees_of_freedom() {
    let spec = GeneratorSpec::log_student_t(7.0).unwrap();
    let bls = Bls::new(BlsParams::new(1.0, 1.0, 0.5, 0.5, 0.5).unwrap(), spec).unwrap();
    let grid = default_grid(GeneratorId::LogStudentT);
    let reps: u64 = 50;
    let hits = (0..reps)
        .filter(|&seed| {
            let data = bls.sample(500, 1000 + seed).unwrap();
            let nu = profile_fit(&data, GeneratorId::LogStudentT, &grid).unwrap().params.nu.unwrap();
            (5.0..=10.0).contains(&nu)
        })
        .count();
    assert!(hits as u64 * 5 >= reps * 4, "profiled nu in 5..=10 for {hits}/{reps}");
}

#[test]
fn laplace_data_selects_laplace_by_aic() {
    let bls = Bls::new(BlsParams::new(1.0, 1.0, 0.5, 0.5, 0.5).unwrap(), GeneratorSpec::log_laplace()).unwrap();
    let seeds: u64 = 25;
    let wins = (0..seeds)
        .filter(|&seed| {
            let ds = Dataset::synthetic(bls.sample(200, 500 + seed).unwrap()).unwrap();
            let cmp = compare_models(&ds, &Candidate::all()).unwrap();
            cmp.best_by_aic().map(|r| r.family) == Some(GeneratorId::LogLaplace)
        })
        .count();
    assert!(wins as u64 * 5 >= seeds * 4, "loglaplace best by AIC for {wins}/{seeds}");
}

#[test]
fn lognormal_qq_slope_is_near_one() {
    let spec = GeneratorSpec::log_normal();
    let bls = Bls::new(BlsParams::new(2.0, 0.5, 0.3, 0.8, -0.4).unwrap(), spec).unwrap();
    let ds = Dataset::synthetic(bls.sample(1000, 77).unwrap()).unwrap();
    let fit = fit_mle(&ds.pairs, &spec).unwrap();
    let qq = qq_mahalanobis(&ds, &fit).unwrap();
    assert_eq!(qq.pairs.len(), 1000);
    let slope = qq.slope();
    assert!((0.9..=1.1).contains(&slope), "slope {slope}");
}
