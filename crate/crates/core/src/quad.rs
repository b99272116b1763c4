//! Adaptive Gauss-Kronrod (7/15) quadrature on finite intervals.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Tolerances and subdivision budget for adaptive quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadPolicy {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadPolicy {
    fn default() -> Self {
        QuadPolicy { abs_tol: 1e-10, rel_tol: 1e-12, max_subdivisions: 2000 }
    }
}

impl QuadPolicy {
    pub fn with_abs_tol(mut self, tol: f64) -> Self {
        self.abs_tol = tol;
        self
    }
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub abs_err: f64,
    /// Integral of |f|, used to judge cancellation.
    pub abs_integral: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
    abs: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

fn kronrod15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut res_g = fc * WG[3];
    let mut res_k = fc * WGK[7];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
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
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_k * half;
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();
    let mut err = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    Panel { a, b, value, err, abs: res_abs }
}

/// Integrate `f` over `[a, b]`, split first at the given interior breakpoints.
///
/// Converges when the summed error estimate is below
/// `max(abs_tol, rel_tol * |I|)` or hits the rounding floor `~eps * ∫|f|`.
pub fn integrate<F: FnMut(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    policy: &QuadPolicy,
) -> Result<QuadResult> {
    let (r, converged) = integrate_best_effort(f, a, b, breakpoints, policy)?;
    if !converged {
        let target = policy.abs_tol.max(policy.rel_tol * r.value.abs());
        return Err(Error::QuadratureFailure(format!(
            "error estimate {:.3e} above tolerance {target:.3e} after {} subdivisions",
            r.abs_err, policy.max_subdivisions
        )));
    }
    Ok(r)
}

/// Like [`integrate`], but returns the best estimate together with a
/// convergence flag when the subdivision budget runs out.
pub fn integrate_best_effort<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    policy: &QuadPolicy,
) -> Result<(QuadResult, bool)> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::QuadratureFailure(format!("non-finite limits [{a}, {b}]")));
    }
    if a == b {
        return Ok((QuadResult { value: 0.0, abs_err: 0.0, abs_integral: 0.0, evaluations: 0 }, true));
    }
    let mut pts = vec![a];
    pts.extend(breakpoints.iter().copied().filter(|p| *p > a.min(b) && *p < a.max(b)));
    pts.push(b);
    if b < a {
        pts[1..].sort_by(|x, y| y.total_cmp(x));
    } else {
        pts.sort_by(|x, y| x.total_cmp(y));
    }
    pts.dedup();

    let mut heap = BinaryHeap::new();
    let mut evaluations = 0;
    for w in pts.windows(2) {
        heap.push(kronrod15(&mut f, w[0], w[1]));
        evaluations += 15;
    }
    let mut subdivisions = heap.len();
    loop {
        let (value, err, abs) = heap
            .iter()
            .fold((0.0, 0.0, 0.0), |(v, e, s), p| (v + p.value, e + p.err, s + p.abs));
        if !value.is_finite() || !err.is_finite() {
            return Err(Error::QuadratureFailure("integrand produced non-finite values".into()));
        }
        let target = policy.abs_tol.max(policy.rel_tol * value.abs());
        let floor = 100.0 * f64::EPSILON * abs;
        let result = QuadResult { value, abs_err: err, abs_integral: abs, evaluations };
        if err <= target || err <= floor {
            return Ok((result, true));
        }
        if subdivisions >= policy.max_subdivisions {
            return Ok((result, false));
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid == worst.a || mid == worst.b {
            // interval cannot be split further; accept what we have
            heap.push(worst);
            let (value, err, abs) = heap
                .iter()
                .fold((0.0, 0.0, 0.0), |(v, e, s), p| (v + p.value, e + p.err, s + p.abs));
            return Ok((QuadResult { value, abs_err: err, abs_integral: abs, evaluations }, true));
        }
        heap.push(kronrod15(&mut f, worst.a, mid));
        heap.push(kronrod15(&mut f, mid, worst.b));
        evaluations += 30;
        subdivisions += 1;
    }
}

/// Integrate `g` over `[0, t1]` where `g(t) ~ t^(c-1)` near the origin (`c > 0`).
///
/// Substitutes `t = t1 u^(1/c)` so the transformed integrand is bounded.
pub fn integrate_power_origin<F: FnMut(f64) -> f64>(
    mut g: F,
    c: f64,
    t1: f64,
    policy: &QuadPolicy,
) -> Result<QuadResult> {
    if c <= 0.0 {
        return Err(Error::InvalidParam(format!("origin exponent must be positive, got {c}")));
    }
    let q = 1.0 / c;
    let h = move |u: f64| {
        if u <= 0.0 {
            return 0.0;
        }
        let t = t1 * u.powf(q);
        g(t) * t1 * q * u.powf(q - 1.0)
    };
    integrate(h, 0.0, 1.0, &[], policy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn kronrod_exact_for_degree_22() {
        let mut f = |x: f64| x.powi(22) + 3.0 * x.powi(13) - x.powi(4);
        let p = kronrod15(&mut f, -1.0, 2.0);
        let exact = (2f64.powi(23) + 1.0) / 23.0 + 3.0 * (2f64.powi(14) - 1.0) / 14.0
            - (2f64.powi(5) + 1.0) / 5.0;
        assert_relative_eq!(p.value, exact, max_relative = 1e-14);
    }

    #[test]
    fn gauss_part_exact_for_degree_13() {
        // weights sum to 2 and integrate x^12 exactly
        let sum_g: f64 = 2.0 * (WG[0] + WG[1] + WG[2]) + WG[3];
        assert_relative_eq!(sum_g, 2.0, max_relative = 1e-15);
        let m12: f64 = (0..3).map(|j| 2.0 * WG[j] * XGK[2 * j + 1].powi(12)).sum();
        assert_relative_eq!(m12, 2.0 / 13.0, max_relative = 1e-14);
    }

    #[test]
    fn adaptive_handles_peaks() {
        let r = integrate(|x| 1.0 / (1e-4 + x * x), -1.0, 1.0, &[], &QuadPolicy::default()).unwrap();
        let exact = 2.0 * (1.0f64 / 1e-2).atan() / 1e-2;
        assert_relative_eq!(r.value, exact, max_relative = 1e-11);
    }

    #[test]
    fn power_singularity_substitution() {
        // ∫_0^1 t^(-0.7) cos t dt
        let r = integrate_power_origin(|t| t.powf(-0.7) * t.cos(), 0.3, 1.0, &QuadPolicy::default())
            .unwrap();
        assert_relative_eq!(r.value, 3.1254144544696355, max_relative = 1e-11);
    }

    #[test]
    fn reversed_limits() {
        let r = integrate(|x| x * x, 1.0, 0.0, &[0.5], &QuadPolicy::default()).unwrap();
        assert_relative_eq!(r.value, -1.0 / 3.0, max_relative = 1e-14);
    }
}
