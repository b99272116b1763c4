//! Real-line integral representations of `E_{ν,β}(-t^ν)` and `W_{ν,β}(-t^ν)`
//! for `0 < ν < 1`, together with their large-`t` approximations.

use std::f64::consts::PI;

use super::gamma::{cos_pi, gamma, sin_pi};
use crate::error::{invalid, Result};
use crate::quad::{integrate, QuadPolicy};

fn check_nu(nu: f64) -> Result<()> {
    if !(nu > 0.0 && nu < 1.0) {
        return Err(invalid(format!("integral representation needs 0 < nu < 1, got {nu}")));
    }
    Ok(())
}

fn check_t(t: f64) -> Result<()> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(invalid(format!("t must be positive and finite, got {t}")));
    }
    Ok(())
}

/// Cutoff `R` with `e^{-R t} < abs_tol / 10`.
fn cutoff(t: f64, policy: &QuadPolicy) -> f64 {
    (10.0 / policy.abs_tol.max(1e-300)).ln() / t
}

fn inner(policy: &QuadPolicy) -> QuadPolicy {
    // pieces are summed, so give each a share of the budget
    QuadPolicy { abs_tol: policy.abs_tol / 10.0, ..*policy }
}

/// `∫_0^∞ g(r) dr` where `g(r) ~ r^{e}` (e > -1) near zero and the rest of
/// the integrand is smooth in `r^ν`. Substitutes on `[0, 1]` and integrates
/// `[1, R]` directly with breakpoints.
fn integrate_half_line<F: Fn(f64) -> f64>(
    g: F,
    lead: f64,
    nu: f64,
    end: f64,
    breakpoints: &[f64],
    policy: &QuadPolicy,
) -> Result<f64> {
    let pol = inner(policy);
    let q = if lead + 1.0 >= nu { 1.0 / nu } else { 1.0 / (lead + 1.0) };
    let c = end.min(1.0);
    let near = integrate(
        |u: f64| {
            if u <= 0.0 {
                return 0.0;
            }
            let r = c * u.powf(q);
            g(r) * c * q * u.powf(q - 1.0)
        },
        0.0,
        1.0,
        &[],
        &pol,
    )?;
    let mut total = near.value;
    if end > c {
        let far = integrate(&g, c, end, breakpoints, &pol)?;
        total += far.value;
    }
    Ok(total)
}

/// `E_{ν,1}(-t^ν) = (sin νπ / π) ∫_0^∞ r^{ν-1} e^{-rt} / (r^{2ν} + 2 r^ν cos νπ + 1) dr`.
pub fn ml_neg_integral(nu: f64, t: f64, policy: &QuadPolicy) -> Result<f64> {
    check_nu(nu)?;
    check_t(t)?;
    let (s, c) = (sin_pi(nu), cos_pi(nu));
    let g = |r: f64| {
        let rn = r.powf(nu);
        r.powf(nu - 1.0) * (-r * t).exp() / (rn * rn + 2.0 * rn * c + 1.0)
    };
    let end = cutoff(t, policy).max(2.0);
    let v = integrate_half_line(g, nu - 1.0, nu, end, &[1.0, 2.0], policy)?;
    Ok(s / PI * v)
}

/// Same function as [`ml_neg_integral`], written as the mean of
/// `e^{-X^{1/ν} t}` over a Cauchy law centred at `-cos νπ` with scale `sin νπ`:
/// `(1/(πν)) ∫_0^∞ sin νπ / ((r + cos νπ)² + sin² νπ) · e^{-r^{1/ν} t} dr`.
pub fn ml_cauchy_integral(nu: f64, t: f64, policy: &QuadPolicy) -> Result<f64> {
    check_nu(nu)?;
    check_t(t)?;
    let (s, c) = (sin_pi(nu), cos_pi(nu));
    let g = |r: f64| s / ((r + c).powi(2) + s * s) * (-r.powf(1.0 / nu) * t).exp();
    let end = ((10.0 / policy.abs_tol.max(1e-300)).ln() / t).powf(nu).max(2.0);
    let mut bps = vec![1.0];
    if c < 0.0 {
        bps.extend([-c - s, -c, -c + s]);
    }
    bps.retain(|b| *b > 0.0 && *b < end);
    let r = integrate(g, 0.0, end, &bps, &inner(policy))?;
    // Cauchy tail beyond the cutoff is bounded by e^{-end^{1/ν} t}; ignored
    Ok(r.value / (PI * nu))
}

/// `E_{ν,β}(-t^ν)` for `0 < β < ν + 1`:
/// `(t^{1-β}/π) ∫_0^∞ e^{-rt} r^{ν-β} (r^ν sin πβ + sin π(β-ν)) / (r^{2ν} + 2 r^ν cos πν + 1) dr`.
pub fn ml2_neg_integral(nu: f64, beta: f64, t: f64, policy: &QuadPolicy) -> Result<f64> {
    check_nu(nu)?;
    check_t(t)?;
    if !(beta > 0.0 && beta < nu + 1.0) {
        return Err(invalid(format!(
            "two-parameter representation needs 0 < beta < nu + 1, got beta={beta}, nu={nu}"
        )));
    }
    let (sb, sbn, c) = (sin_pi(beta), sin_pi(beta - nu), cos_pi(nu));
    let g = |r: f64| {
        let rn = r.powf(nu);
        (-r * t).exp() * r.powf(nu - beta) * (rn * sb + sbn) / (rn * rn + 2.0 * rn * c + 1.0)
    };
    let end = cutoff(t, policy).max(2.0);
    // leading power near zero is r^{ν-β}, or r^{2ν-β} when sin π(β-ν) vanishes
    let lead = if sbn == 0.0 { 2.0 * nu - beta } else { nu - beta };
    let v = integrate_half_line(g, lead, nu, end, &[1.0, 2.0], policy)?;
    Ok(t.powf(1.0 - beta) / PI * v)
}

/// `E_{ν,ν}(-t^ν) = (t^{1-ν}/π) ∫_0^∞ r^ν e^{-rt} sin νπ / (r^{2ν} + 2 r^ν cos νπ + 1) dr`.
pub fn ml_nu_nu_neg_integral(nu: f64, t: f64, policy: &QuadPolicy) -> Result<f64> {
    check_nu(nu)?;
    check_t(t)?;
    let (s, c) = (sin_pi(nu), cos_pi(nu));
    let g = |r: f64| {
        let rn = r.powf(nu);
        rn * (-r * t).exp() * s / (rn * rn + 2.0 * rn * c + 1.0)
    };
    let end = cutoff(t, policy).max(2.0);
    let v = integrate_half_line(g, nu, nu, end, &[1.0, 2.0], policy)?;
    Ok(t.powf(1.0 - nu) / PI * v)
}

/// Leading large-`t` behaviour of `E_{ν,β}(-t^ν)`:
/// `Γ(ν-β+1) sin((β-ν)π) / (π t^ν)` for `β ≠ ν` (which at `β = 1` is
/// `sin(νπ) Γ(ν) / (π t^ν)`), and `Γ(ν+1) sin(νπ) / (π t^{2ν})` for `β = ν`.
pub fn ml_large_t_approx(nu: f64, beta: f64, t: f64) -> f64 {
    if beta == nu {
        gamma(nu + 1.0) * sin_pi(nu) / (PI * t.powf(2.0 * nu))
    } else {
        gamma(nu - beta + 1.0) * sin_pi(beta - nu) / (PI * t.powf(nu))
    }
}

/// Wright function `W_{ν,β}(-t^ν)` (positive first index) by
/// `(t^{1-β}/π) ∫_0^∞ e^{-rt} r^{-β} e^{-cos(πν)/r^ν} sin(πβ - sin(πν)/r^ν) dr`.
///
/// The integrand is only absolutely integrable at the origin when
/// `cos πν ≥ 0`, so `ν` is restricted to `(0, 1/2]`; `β < 1` is also
/// required at `ν = 1/2` for the same reason.
pub fn wright_neg_integral(nu: f64, beta: f64, t: f64, policy: &QuadPolicy) -> Result<f64> {
    check_nu(nu)?;
    check_t(t)?;
    if nu > 0.5 {
        return Err(invalid(format!(
            "Wright integral representation diverges at the origin for nu > 1/2, got {nu}"
        )));
    }
    if beta == 1.0 || !beta.is_finite() {
        return Err(invalid("Wright integral representation excludes beta = 1"));
    }
    let c = cos_pi(nu);
    let s = sin_pi(nu);
    if c == 0.0 && beta >= 1.0 {
        return Err(invalid("at nu = 1/2 the Wright integral needs beta < 1"));
    }
    let pol = inner(policy);
    let sb = PI * beta;

    // r in [1, R]: direct
    let end = cutoff(t, policy).max(2.0);
    let far = integrate(
        |r: f64| (-r * t).exp() * r.powf(-beta) * (-c / r.powf(nu)).exp() * (sb - s / r.powf(nu)).sin(),
        1.0,
        end,
        &[2.0],
        &pol,
    )?;

    // r in (0, 1]: w = r^{-ν}, dr = (1/ν) w^{-1/ν-1} dw, w in [1, ∞)
    let inv = 1.0 / nu;
    let p = beta * inv - inv - 1.0; // power of w in the non-exponential part
    let h = |w: f64| {
        (-t * w.powf(-inv)).exp() * w.powf(p) * (-c * w).exp() * (sb - s * w).sin() * inv
    };
    let near = if c > 0.0 {
        let wend = 1.0 + (10.0 / pol.abs_tol.max(1e-300)).ln() / c;
        let mut bps = Vec::new();
        let mut b = 2.0;
        while b < wend {
            bps.push(b);
            b *= 2.0;
        }
        integrate(h, 1.0, wend, &bps, &pol)?.value
    } else {
        // ν = 1/2: oscillatory algebraic tail w^p sin(πβ - w), p < -1
        let period = 2.0 * PI;
        let cycles = 400.0;
        let wend = 1.0 + cycles * period;
        let bps: Vec<f64> = (1..cycles as usize).map(|i| 1.0 + i as f64 * period).collect();
        let body = integrate(h, 1.0, wend, &bps, &pol)?.value;
        // ∫_W^∞ w^p sin(πβ - w) dw ≈ -W^p cos(πβ - W) - p W^{p-1} sin(πβ - W),
        // with the slowly varying factor e^{-t w^{-2}} / ν evaluated at W
        let damp = (-t * wend.powf(-inv)).exp() * inv;
        let tail = -wend.powf(p) * (sb - wend).cos() - p * wend.powf(p - 1.0) * (sb - wend).sin();
        body + damp * tail
    };
    Ok(t.powf(1.0 - beta) / PI * (far.value + near))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn half_order_erfc() {
        let p = QuadPolicy::default();
        let v = ml_neg_integral(0.5, 1.0, &p).unwrap();
        assert_relative_eq!(v, 0.427_583_576_155_807, max_relative = 1e-9);
        let w = ml_cauchy_integral(0.5, 1.0, &p).unwrap();
        assert_relative_eq!(w, 0.427_583_576_155_807, max_relative = 1e-9);
    }

    #[test]
    fn rejects_outside_domain() {
        let p = QuadPolicy::default();
        assert!(ml_neg_integral(1.0, 1.0, &p).is_err());
        assert!(ml2_neg_integral(0.5, 1.5, 1.0, &p).is_err());
        assert!(wright_neg_integral(0.7, 0.5, 1.0, &p).is_err());
        assert!(wright_neg_integral(0.3, 1.0, 1.0, &p).is_err());
    }

    #[test]
    fn asymptote_branches() {
        assert_relative_eq!(ml_large_t_approx(0.5, 1.0, 100.0), 0.056_418_958_354_775_63, max_relative = 1e-13);
        assert_relative_eq!(ml_large_t_approx(0.5, 0.5, 100.0), 0.002_820_947_917_738_781, max_relative = 1e-13);
    }
}
