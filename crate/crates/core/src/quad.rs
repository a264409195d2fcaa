//! Adaptive Gauss–Kronrod quadrature (21-point rule, global subdivision)
//! and bracketed root finding.

use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_745_244_204,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for XGK[1], XGK[3], ..., XGK[9]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Tolerances for [`integrate`].
#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_intervals: 2000,
        }
    }
}

impl QuadOptions {
    pub fn tol(abs_tol: f64, rel_tol: f64) -> Self {
        Self {
            abs_tol,
            rel_tol,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod21<F: FnMut(f64) -> f64 + ?Sized>(f: &mut F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut res_k = fc * WGK[10];
    let mut res_g = 0.0;
    let mut res_abs = (fc * WGK[10]).abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_k * half;
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();
    let mut error = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    if !value.is_finite() {
        error = f64::INFINITY;
    }
    Segment { a, b, value, error }
}

fn adapt<F: FnMut(f64) -> f64 + ?Sized>(
    f: &mut F,
    initial: &[f64],
    opts: QuadOptions,
) -> Result<QuadResult> {
    let mut heap = BinaryHeap::new();
    let mut total = 0.0;
    let mut total_err = 0.0;
    for w in initial.windows(2) {
        if w[1] > w[0] {
            let seg = kronrod21(f, w[0], w[1]);
            total += seg.value;
            total_err += seg.error;
            heap.push(seg);
        }
    }
    let lo = initial[0];
    let hi = initial[initial.len() - 1];
    let mut count = heap.len();
    loop {
        let tol = opts.abs_tol.max(opts.rel_tol * total.abs());
        if total_err <= tol {
            return Ok(QuadResult {
                value: total,
                error: total_err,
            });
        }
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        if count >= opts.max_intervals || !(mid > worst.a && mid < worst.b) {
            heap.push(worst);
            break;
        }
        let left = kronrod21(f, worst.a, mid);
        let right = kronrod21(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        count += 1;
        // periodic re-sum keeps the running totals from drifting
        if count % 64 == 0 {
            total = heap.iter().map(|s| s.value).sum();
            total_err = heap.iter().map(|s| s.error).sum();
        }
    }
    total = heap.iter().map(|s| s.value).sum();
    total_err = heap.iter().map(|s| s.error).sum();
    let tol = opts.abs_tol.max(opts.rel_tol * total.abs());
    if total_err <= tol && total.is_finite() {
        Ok(QuadResult {
            value: total,
            error: total_err,
        })
    } else {
        Err(Error::Integration {
            lo,
            hi,
            estimate: total_err,
            tolerance: tol,
        })
    }
}

/// Integrate `f` over `[a, b]`. Either bound may be infinite; half-lines are
/// mapped onto `[0, 1)` by `x = a + t/(1 − t)`.
pub fn integrate<F: FnMut(f64) -> f64>(f: F, a: f64, b: f64, opts: QuadOptions) -> Result<QuadResult> {
    integrate_with_breaks(f, &[a, b], opts)
}

/// Integrate over consecutive pieces of `points` (sorted, may start at −∞ and
/// end at +∞). Interior points are where the integrand changes scale.
pub fn integrate_with_breaks<F: FnMut(f64) -> f64>(
    mut f: F,
    points: &[f64],
    opts: QuadOptions,
) -> Result<QuadResult> {
    integrate_dyn(&mut f, points, opts)
}

fn integrate_dyn(f: &mut dyn FnMut(f64) -> f64, points: &[f64], opts: QuadOptions) -> Result<QuadResult> {
    assert!(points.len() >= 2, "need at least two points");
    let a = points[0];
    let b = points[points.len() - 1];
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            error: 0.0,
        });
    }
    if a > b {
        let rev: Vec<f64> = points.iter().rev().copied().collect();
        let r = integrate_dyn(f, &rev, opts)?;
        return Ok(QuadResult {
            value: -r.value,
            error: r.error,
        });
    }
    let finite: Vec<f64> = points[1..points.len() - 1].to_vec();
    match (a.is_finite(), b.is_finite()) {
        (true, true) => adapt(f, points, opts),
        (true, false) => {
            // x = a + t/(1-t), t in [0,1)
            let mut g = |t: f64| {
                if t >= 1.0 {
                    return 0.0;
                }
                let u = 1.0 - t;
                let v = f(a + t / u) / (u * u);
                if v.is_finite() {
                    v
                } else {
                    0.0
                }
            };
            let mut tpts = vec![0.0];
            tpts.extend(finite.iter().map(|&x| (x - a) / (1.0 + x - a)));
            tpts.push(1.0);
            adapt(&mut g, &tpts, opts)
        }
        (false, true) => {
            // x = b - t/(1-t)
            let mut g = |t: f64| {
                if t >= 1.0 {
                    return 0.0;
                }
                let u = 1.0 - t;
                let v = f(b - t / u) / (u * u);
                if v.is_finite() {
                    v
                } else {
                    0.0
                }
            };
            let mut tpts = vec![0.0];
            tpts.extend(finite.iter().rev().map(|&x| (b - x) / (1.0 + b - x)));
            tpts.push(1.0);
            adapt(&mut g, &tpts, opts)
        }
        (false, false) => {
            // split at the first interior point, or 0
            let split = finite.first().copied().unwrap_or(0.0);
            let left_pts: Vec<f64> = std::iter::once(f64::NEG_INFINITY)
                .chain(finite.iter().copied().filter(|&x| x < split))
                .chain(std::iter::once(split))
                .collect();
            let right_pts: Vec<f64> = std::iter::once(split)
                .chain(finite.iter().copied().filter(|&x| x > split))
                .chain(std::iter::once(f64::INFINITY))
                .collect();
            let half = QuadOptions {
                abs_tol: 0.5 * opts.abs_tol,
                ..opts
            };
            let l = integrate_dyn(f, &left_pts, half)?;
            let r = integrate_dyn(f, &right_pts, half)?;
            Ok(QuadResult {
                value: l.value + r.value,
                error: l.error + r.error,
            })
        }
    }
}

/// Integrate `f` over `[a, ∞)` with `u = a + h(e^s − 1)`, `h = max(|a|, 1)`.
/// Polynomially decaying tails become exponentially decaying in `s`.
pub fn integrate_tail<F: FnMut(f64) -> f64>(mut f: F, a: f64, opts: QuadOptions) -> Result<QuadResult> {
    let h = a.abs().max(1.0);
    integrate_with_breaks(
        |s| {
            let e = s.exp();
            let v = f(a + h * (e - 1.0)) * h * e;
            if v.is_finite() {
                v
            } else {
                0.0
            }
        },
        &[0.0, 1.0, 3.0, 10.0, f64::INFINITY],
        opts,
    )
}

/// Geometric break points ±s, ±4s, ±16s, … inside `(a, b)`, plus 0 if interior.
/// Useful for integrands peaked near the origin on wide ranges.
pub fn origin_breaks(a: f64, b: f64, scale: f64) -> Vec<f64> {
    let mut pts = vec![a];
    let mut inner = Vec::new();
    let mut s = scale;
    while s < 1e8 * scale {
        inner.push(s);
        inner.push(-s);
        s *= 4.0;
    }
    inner.push(0.0);
    inner.retain(|&x| x > a && x < b);
    inner.sort_by(f64::total_cmp);
    pts.extend(inner);
    pts.push(b);
    pts
}

/// Brent's method on a sign-changing bracket `[a, b]`.
pub fn brent<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, xtol: f64, max_iter: usize) -> Result<f64> {
    let (mut a, mut b) = (a, b);
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::RootFinding(format!(
            "no sign change on [{a}, {b}] (f = {fa}, {fb})"
        )));
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1 * xm.signum() };
        fb = f(b);
    }
    Err(Error::RootFinding(format!(
        "Brent did not converge in {max_iter} iterations"
    )))
}
