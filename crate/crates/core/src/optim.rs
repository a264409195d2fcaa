//! Quasi-Newton minimization (BFGS with a strong-Wolfe line search).

#[derive(Debug, Clone, Copy)]
pub struct BfgsOptions {
    /// Converged when the infinity norm of the gradient falls below this.
    pub grad_tol: f64,
    /// Early stop once the gradient is below `accept_grad` and the relative
    /// objective change of an iteration is below this.
    pub rel_f_tol: f64,
    /// Gradient level at which a stalled run still counts as converged.
    pub accept_grad: f64,
    pub max_iter: usize,
}

impl Default for BfgsOptions {
    fn default() -> Self {
        Self {
            grad_tol: 1e-9,
            rel_f_tol: 1e-14,
            accept_grad: 1e-6,
            max_iter: 500,
        }
    }
}

#[derive(Debug, Clone)]
pub struct BfgsOutcome {
    pub x: Vec<f64>,
    pub f: f64,
    pub grad: Vec<f64>,
    pub grad_norm: f64,
    pub iterations: usize,
    pub converged: bool,
    pub message: String,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn inf_norm(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |m, v| m.max(v.abs()))
}

struct LinePoint {
    alpha: f64,
    f: f64,
    slope: f64,
    grad: Vec<f64>,
}

/// Minimize `f` from `x0`. The objective returns `None` outside its domain;
/// such points are treated as infinitely bad.
pub fn bfgs<F>(mut f: F, x0: &[f64], opts: BfgsOptions) -> BfgsOutcome
where
    F: FnMut(&[f64]) -> Option<(f64, Vec<f64>)>,
{
    let n = x0.len();
    let mut x = x0.to_vec();
    let Some((mut fx, mut g)) = f(&x).filter(|(v, g)| v.is_finite() && g.iter().all(|d| d.is_finite())) else {
        return BfgsOutcome {
            x,
            f: f64::NAN,
            grad: vec![f64::NAN; n],
            grad_norm: f64::INFINITY,
            iterations: 0,
            converged: false,
            message: "objective undefined at the starting point".into(),
        };
    };
    let mut h = vec![vec![0.0; n]; n];
    for (i, row) in h.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    let mut first = true;
    let mut message = String::from("iteration limit reached");
    let mut iterations = 0;
    while iterations < opts.max_iter {
        let gnorm = inf_norm(&g);
        if gnorm <= opts.grad_tol {
            message = "gradient tolerance reached".into();
            break;
        }
        iterations += 1;
        let mut d: Vec<f64> = (0..n).map(|i| -dot(&h[i], &g)).collect();
        let mut slope0 = dot(&d, &g);
        if !(slope0 < 0.0) {
            // lost descent: reset to steepest descent
            for (i, row) in h.iter_mut().enumerate() {
                row.iter_mut().for_each(|v| *v = 0.0);
                row[i] = 1.0;
            }
            d = g.iter().map(|v| -v).collect();
            slope0 = -dot(&g, &g);
            first = true;
        }
        let alpha0 = if first { (1.0 / inf_norm(&d)).min(1.0) } else { 1.0 };
        let Some(p) = wolfe_search(&mut f, &x, fx, slope0, &d, alpha0) else {
            message = "line search failed".into();
            break;
        };
        let s: Vec<f64> = d.iter().map(|v| p.alpha * v).collect();
        let y: Vec<f64> = p.grad.iter().zip(&g).map(|(a, b)| a - b).collect();
        let f_old = fx;
        x.iter_mut().zip(&s).for_each(|(xi, si)| *xi += si);
        fx = p.f;
        g = p.grad;
        let sy = dot(&s, &y);
        if sy > 1e-300 {
            if first {
                let scale = sy / dot(&y, &y);
                h.iter_mut().enumerate().for_each(|(i, row)| {
                    row.iter_mut().for_each(|v| *v = 0.0);
                    row[i] = scale;
                });
                first = false;
            }
            let hy: Vec<f64> = (0..n).map(|i| dot(&h[i], &y)).collect();
            let yhy = dot(&y, &hy);
            let rho = 1.0 / sy;
            for i in 0..n {
                for j in 0..n {
                    h[i][j] += -rho * (hy[i] * s[j] + s[i] * hy[j]) + (rho * rho * yhy + rho) * s[i] * s[j];
                }
            }
        }
        let rel = (f_old - fx).abs() / fx.abs().max(1e-300);
        if rel <= opts.rel_f_tol && inf_norm(&g) <= opts.accept_grad {
            message = "relative objective change below tolerance".into();
            break;
        }
    }
    let grad_norm = inf_norm(&g);
    BfgsOutcome {
        x,
        f: fx,
        grad: g,
        grad_norm,
        iterations,
        converged: grad_norm <= opts.accept_grad,
        message,
    }
}

fn eval_along<F>(f: &mut F, x: &[f64], d: &[f64], alpha: f64) -> Option<LinePoint>
where
    F: FnMut(&[f64]) -> Option<(f64, Vec<f64>)>,
{
    let xt: Vec<f64> = x.iter().zip(d).map(|(a, b)| a + alpha * b).collect();
    let (v, g) = f(&xt)?;
    if !v.is_finite() || g.iter().any(|v| !v.is_finite()) {
        return None;
    }
    Some(LinePoint {
        alpha,
        f: v,
        slope: dot(&g, d),
        grad: g,
    })
}

/// Minimizer of the cubic through two points with values and slopes,
/// falling back to bisection when it leaves the interval.
fn interpolate(a: &LinePoint, b: &LinePoint) -> f64 {
    let (lo, hi) = if a.alpha < b.alpha { (a.alpha, b.alpha) } else { (b.alpha, a.alpha) };
    let d1 = a.slope + b.slope - 3.0 * (a.f - b.f) / (a.alpha - b.alpha);
    let disc = d1 * d1 - a.slope * b.slope;
    let mid = 0.5 * (lo + hi);
    if disc < 0.0 {
        return mid;
    }
    let d2 = (b.alpha - a.alpha).signum() * disc.sqrt();
    let t = b.alpha - (b.alpha - a.alpha) * (b.slope + d2 - d1) / (b.slope - a.slope + 2.0 * d2);
    let margin = 0.1 * (hi - lo);
    if t.is_finite() && t > lo + margin && t < hi - margin {
        t
    } else {
        mid
    }
}

fn wolfe_search<F>(f: &mut F, x: &[f64], f0: f64, slope0: f64, d: &[f64], alpha0: f64) -> Option<LinePoint>
where
    F: FnMut(&[f64]) -> Option<(f64, Vec<f64>)>,
{
    const C1: f64 = 1e-4;
    const C2: f64 = 0.9;
    let origin = LinePoint {
        alpha: 0.0,
        f: f0,
        slope: slope0,
        grad: Vec::new(),
    };
    let mut prev = origin;
    let mut alpha = alpha0;
    for i in 0..60 {
        let Some(cur) = eval_along(f, x, d, alpha) else {
            // outside the domain: shrink toward the last good point
            alpha = prev.alpha + 0.25 * (alpha - prev.alpha);
            if alpha - prev.alpha < 1e-16 {
                return None;
            }
            continue;
        };
        if cur.f > f0 + C1 * alpha * slope0 || (i > 0 && cur.f >= prev.f) {
            return zoom(f, x, f0, slope0, d, prev, cur);
        }
        if cur.slope.abs() <= -C2 * slope0 {
            return Some(cur);
        }
        if cur.slope >= 0.0 {
            return zoom(f, x, f0, slope0, d, cur, prev);
        }
        alpha = 2.0 * cur.alpha;
        prev = cur;
    }
    None
}

fn zoom<F>(
    f: &mut F,
    x: &[f64],
    f0: f64,
    slope0: f64,
    d: &[f64],
    mut lo: LinePoint,
    mut hi: LinePoint,
) -> Option<LinePoint>
where
    F: FnMut(&[f64]) -> Option<(f64, Vec<f64>)>,
{
    const C1: f64 = 1e-4;
    const C2: f64 = 0.9;
    for _ in 0..60 {
        let alpha = interpolate(&lo, &hi);
        if (hi.alpha - lo.alpha).abs() < 1e-16 * lo.alpha.abs().max(1.0) {
            break;
        }
        let Some(cur) = eval_along(f, x, d, alpha) else {
            hi = LinePoint {
                alpha,
                f: f64::INFINITY,
                slope: f64::NAN,
                grad: Vec::new(),
            };
            continue;
        };
        if cur.f > f0 + C1 * alpha * slope0 || cur.f >= lo.f {
            hi = cur;
        } else {
            if cur.slope.abs() <= -C2 * slope0 {
                return Some(cur);
            }
            if cur.slope * (hi.alpha - lo.alpha) >= 0.0 {
                hi = lo;
            }
            lo = cur;
        }
    }
    // accept the best sufficient-decrease point found, if any
    (lo.alpha > 0.0 && lo.f < f0).then_some(lo)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimizes_rosenbrock() {
        let out = bfgs(
            |x| {
                let (a, b) = (x[0], x[1]);
                let f = (1.0 - a).powi(2) + 100.0 * (b - a * a).powi(2);
                let g = vec![-2.0 * (1.0 - a) - 400.0 * a * (b - a * a), 200.0 * (b - a * a)];
                Some((f, g))
            },
            &[-1.2, 1.0],
            BfgsOptions::default(),
        );
        assert!(out.converged, "{}", out.message);
        assert!((out.x[0] - 1.0).abs() < 1e-7 && (out.x[1] - 1.0).abs() < 1e-7);
    }

    #[test]
    fn respects_domain_holes() {
        // minimum of x - ln x at 1; undefined for x <= 0
        let out = bfgs(
            |x| (x[0] > 0.0).then(|| (x[0] - x[0].ln(), vec![1.0 - 1.0 / x[0]])),
            &[40.0],
            BfgsOptions::default(),
        );
        assert!(out.converged);
        assert!((out.x[0] - 1.0).abs() < 1e-8);
    }

    #[test]
    fn reports_nonconvergence() {
        let out = bfgs(|x| Some((-x[0], vec![-1.0])), &[0.0], BfgsOptions { max_iter: 5, ..Default::default() });
        assert!(!out.converged);
    }
}
