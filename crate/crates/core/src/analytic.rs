//! Closed-form and numeric reference quantities: Irwin–Hall distribution,
//! the extreme-value constants `c_d`, plane minima and the row lower bound,
//! the exact mean of row greedy under exponential weights, log-log power-law
//! fits and the two-sample Kolmogorov–Smirnov statistic.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{check_box, BoxMin, CostTensor};

fn factorial(d: u32) -> f64 {
    (1..=d).map(f64::from).product()
}

fn binomial(d: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * f64::from(d - i) / f64::from(i + 1))
}

/// CDF of the sum of `d` independent uniforms on `[0, 1]`:
/// `F_d(u) = (1/d!) * sum_{k=0}^{floor(u)} (-1)^k C(d,k) (u-k)^d` on `[0, d]`.
pub fn irwin_hall_cdf(d: u32, u: f64) -> Result<f64> {
    if d < 1 {
        return Err(Error::domain("Irwin-Hall order must be at least 1"));
    }
    if u.is_nan() {
        return Err(Error::domain("Irwin-Hall argument is NaN"));
    }
    if u <= 0.0 {
        return Ok(0.0);
    }
    if u >= f64::from(d) {
        return Ok(1.0);
    }
    // The alternating sum cancels badly in the upper half; reflect.
    if 2.0 * u > f64::from(d) {
        return irwin_hall_cdf(d, f64::from(d) - u).map(|q| 1.0 - q);
    }
    let top = u.floor() as u32;
    let mut sum = 0.0;
    for k in 0..=top {
        let term = binomial(d, k) * (u - f64::from(k)).powi(d as i32);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(sum / factorial(d))
}

/// `1 - F_d(u)`.
pub fn irwin_hall_survival(d: u32, u: f64) -> Result<f64> {
    irwin_hall_cdf(d, u).map(|p| 1.0 - p)
}

/// Euler's Gamma function for positive arguments.
///
/// Backed by `statrs` (Lanczos approximation, relative error well below
/// `1e-10` on `[0.5, 10]`).
pub fn gamma_fn(x: f64) -> Result<f64> {
    if x <= 0.0 || !x.is_finite() {
        return Err(Error::domain(format!("Gamma needs a finite positive argument, got {x}")));
    }
    Ok(statrs::function::gamma::gamma(x))
}

/// `c_d = (d!)^(1/d) * Gamma(1 + 1/d)`, which equals `∫_0^∞ exp(-x^d/d!) dx`.
pub fn constant_cd(d: u32) -> Result<f64> {
    if d < 2 {
        return Err(Error::domain(format!("c_d needs d >= 2, got {d}")));
    }
    let inv = 1.0 / f64::from(d);
    Ok(factorial(d).powf(inv) * gamma_fn(1.0 + inv)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quadrature {
    pub value: f64,
    /// Upper integration limit `X`; the integrand is truncated beyond it.
    pub upper_limit: f64,
    /// Analytic bound on the discarded tail `∫_X^∞`.
    pub tail_bound: f64,
}

/// Adaptive Simpson quadrature of `∫_0^∞ exp(-x^d/d!) dx`, truncated where
/// `X^d/d! = 45`. The tail is bounded by `d!/(d X^(d-1)) * exp(-X^d/d!)`.
pub fn cd_quadrature(d: u32) -> Result<Quadrature> {
    if d < 2 {
        return Err(Error::domain(format!("c_d needs d >= 2, got {d}")));
    }
    let fact = factorial(d);
    let cut = 45.0;
    let upper = (cut * fact).powf(1.0 / f64::from(d));
    let f = |x: f64| (-x.powi(d as i32) / fact).exp();
    let value = adaptive_simpson(&f, 0.0, upper, 1e-14, 60);
    let tail_bound = fact / (f64::from(d) * upper.powi(d as i32 - 1)) * (-cut).exp();
    Ok(Quadrature {
        value,
        upper_limit: upper,
        tail_bound,
    })
}

/// Adaptive Simpson's rule with Richardson correction on each accepted panel.
pub fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, max_depth: u32) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

/// Closed form next to its quadrature check, as printed by the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstantReport {
    pub d: u32,
    pub c_d: f64,
    pub gamma_1_plus_1_over_d: f64,
    pub quadrature: f64,
    /// `|quadrature - c_d| / c_d`.
    pub quadrature_residual: f64,
}

pub fn constant_report(d: u32) -> Result<ConstantReport> {
    let c_d = constant_cd(d)?;
    let quad = cd_quadrature(d)?;
    Ok(ConstantReport {
        d,
        c_d,
        gamma_1_plus_1_over_d: gamma_fn(1.0 + 1.0 / f64::from(d))?,
        quadrature: quad.value,
        quadrature_residual: ((quad.value - c_d) / c_d).abs(),
    })
}

/// Minimum weight over `{row} x sets[0] x ... x sets[d-2]`, ties broken
/// lexicographically.
pub fn plane_min<W: CostTensor + ?Sized>(instance: &W, row: usize, sets: &[Vec<usize>]) -> Result<BoxMin> {
    check_box(instance.dim(), instance.side(), row, sets)?;
    Ok(instance.box_min(row, sets))
}

/// Minimum over the whole plane of `row`.
pub fn full_plane_min<W: CostTensor + ?Sized>(instance: &W, row: usize) -> Result<BoxMin> {
    let full: Vec<Vec<usize>> = vec![(0..instance.side()).collect(); instance.dim() - 1];
    plane_min(instance, row, &full)
}

/// Sum over rows of the plane minima. Every assignment pays at least the
/// plane minimum in each row, so this bounds the optimum from below.
pub fn lower_bound<W: CostTensor + ?Sized>(instance: &W) -> f64 {
    let full: Vec<Vec<usize>> = vec![(0..instance.side()).collect(); instance.dim() - 1];
    (0..instance.side())
        .map(|row| instance.box_min(row, &full).weight)
        .fold(0.0, |acc, w| acc + w)
}

/// Mean of the row-greedy total on i.i.d. Exp(1) weights:
/// `sum_{k=1}^n k^-(d-1)`, since the step with `k` free values per
/// coordinate takes the minimum of `k^(d-1)` fresh exponentials.
pub fn expected_rowgreedy_exp(d: u32, n: usize) -> Result<f64> {
    if d < 2 {
        return Err(Error::domain(format!("dimension must be at least 2, got {d}")));
    }
    if n < 1 {
        return Err(Error::domain("side length must be at least 1"));
    }
    // Smallest terms first.
    Ok((1..=n)
        .rev()
        .map(|k| (k as f64).powi(-(d as i32 - 1)))
        .sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerFit {
    pub exponent: f64,
    /// Intercept of the log-log line, `ln` of the prefactor.
    pub log_coefficient: f64,
    /// Root-mean-square of the log residuals.
    pub residual: f64,
    pub points: usize,
}

impl PowerFit {
    pub fn coefficient(&self) -> f64 {
        self.log_coefficient.exp()
    }

    pub fn predict(&self, x: f64) -> f64 {
        (self.log_coefficient + self.exponent * x.ln()).exp()
    }
}

/// Least-squares line through `(ln x, ln y)`; the slope is the exponent.
pub fn fit_power_law(points: &[(f64, f64)]) -> Result<PowerFit> {
    if points.len() < 2 {
        return Err(Error::domain(format!(
            "power-law fit needs at least 2 points, got {}",
            points.len()
        )));
    }
    if let Some(&(x, y)) = points
        .iter()
        .find(|(x, y)| !(*x > 0.0 && *y > 0.0 && x.is_finite() && y.is_finite()))
    {
        return Err(Error::domain(format!(
            "power-law fit needs finite positive values, got ({x}, {y})"
        )));
    }
    let mut xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    xs.sort_by(f64::total_cmp);
    if xs.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::domain("power-law fit needs distinct x values"));
    }
    let count = points.len() as f64;
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / count;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / count;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let exponent = sxy / sxx;
    let log_coefficient = my - exponent * mx;
    let ss: f64 = logs
        .iter()
        .map(|p| (p.1 - log_coefficient - exponent * p.0).powi(2))
        .sum();
    Ok(PowerFit {
        exponent,
        log_coefficient,
        residual: (ss / count).sqrt(),
        points: points.len(),
    })
}

/// Supremum distance between the empirical CDFs of two samples.
pub fn ks_statistic(sample_a: &[f64], sample_b: &[f64]) -> Result<f64> {
    if sample_a.is_empty() || sample_b.is_empty() {
        return Err(Error::domain("KS statistic needs two nonempty samples"));
    }
    if sample_a.iter().chain(sample_b).any(|v| v.is_nan()) {
        return Err(Error::domain("KS statistic got a NaN sample value"));
    }
    let mut a = sample_a.to_vec();
    let mut b = sample_b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut sup = 0.0f64;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        sup = sup.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(sup)
}
