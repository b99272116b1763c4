//! Contour-integral evaluation on the negative real axis.
//!
//! For `0 < α < 1` and `x > 0` the Laplace inversion of
//! `s^{αγ-β} / (s^α + x)^γ` along a Hankel contour with rays at angle `±θ`
//! (`π/2 < θ`, `αθ ≤ π/2`) gives a real, exponentially damped integral with
//! no alternating cancellation. It is the large-argument route for the
//! generalized Mittag-Leffler function and for the M-Wright kernel.

use std::f64::consts::{FRAC_PI_2, PI};

use super::gamma::{cos_pi, sin_pi};
use crate::error::{invalid, Error, Result};
use crate::quad::{integrate_best_effort, QuadPolicy, QuadResult};

/// Integral value `J` with `E^γ_{α,β}(-x) = J · x^{-γ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct ContourEval {
    pub j: f64,
    pub err: f64,
    pub abs_integral: f64,
}

fn contour_policy() -> QuadPolicy {
    QuadPolicy { abs_tol: 0.0, rel_tol: 1e-13, max_subdivisions: 600 }
}

fn best(r: Result<(QuadResult, bool)>) -> Result<QuadResult> {
    r.map(|(q, _)| q)
}

fn ray_angle(alpha: f64) -> f64 {
    (FRAC_PI_2 / alpha).clamp(FRAC_PI_2 + 0.35, PI)
}

/// Radius beyond which `r^a e^{r cos θ}` is below `e^{-46}`.
fn tail_radius(a: f64, cos_t: f64, start: f64) -> f64 {
    let c = -cos_t;
    let mut r = (46.0 / c).max(start * 2.0).max(1.0);
    for _ in 0..20 {
        let next = (46.0 + a.max(0.0) * r.ln()) / c;
        if (next - r).abs() < 1e-6 * r {
            break;
        }
        r = next.max(1.0);
    }
    r.max(start * 2.0)
}

/// `(ln ρ - ln x, φ)` for `w = x + r^α e^{iαθ} = ρ e^{iφ}`.
#[inline]
fn w_polar(x: f64, ra: f64, at: f64) -> (f64, f64) {
    let re = x + ra * at.cos();
    let im = ra * at.sin();
    // ln(ρ/x) = ½ ln((re/x)² + (im/x)²)
    let ln_rho_x = 0.5 * ((re / x).powi(2) + (im / x).powi(2)).ln();
    (ln_rho_x, im.atan2(re))
}

/// Evaluate `J` such that `E^γ_{α,β}(-x) = J x^{-γ}`, for `0 < α < 1`, `x > 0`.
pub(crate) fn gml_contour(alpha: f64, beta: f64, gamma: f64, x: f64) -> Result<ContourEval> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(invalid(format!("contour route needs 0 < alpha < 1, got {alpha}")));
    }
    if !(x > 0.0) || !x.is_finite() {
        return Err(invalid(format!("contour route needs a positive finite argument, got {x}")));
    }
    let theta = ray_angle(alpha);
    let exact_pi = theta == PI;
    let (sin_t, cos_t) = if exact_pi { (0.0, -1.0) } else { theta.sin_cos() };
    let at = alpha * theta;
    let a = alpha * gamma - beta;
    // at θ = π the phase is π(1+a) - γφ; expand it so a tiny φ is not lost
    let (sin_base, cos_base) = (sin_pi(1.0 + a), cos_pi(1.0 + a));
    let scale = x.powf(1.0 / alpha);
    let pol = contour_policy();

    // integrand on the upper ray, with the x^{-γ} factor removed
    let ray = |r: f64| -> f64 {
        if r <= 0.0 {
            return 0.0;
        }
        let lr = r.ln();
        let ra = (alpha * lr).exp();
        let (lrx, phi) = w_polar(x, ra, at);
        let mag = (a * lr + r * cos_t - gamma * lrx).exp();
        if exact_pi {
            let (sg, cg) = (gamma * phi).sin_cos();
            mag * (sin_base * cg - cos_base * sg)
        } else {
            mag * (theta + r * sin_t + a * theta - gamma * phi).sin()
        }
    };

    let mut value = 0.0;
    let mut err = 0.0;
    let mut abs_int = 0.0;
    let start = if a > -0.5 {
        // ray from the origin; substitute r = c u^q near 0 to tame r^a
        let c = scale.min(1.0);
        let q = if a + 1.0 >= alpha { 1.0 / alpha } else { 1.0 / (a + 1.0) };
        let near = best(integrate_best_effort(
            |u: f64| {
                if u <= 0.0 {
                    return 0.0;
                }
                let r = c * u.powf(q);
                ray(r) * c * q * u.powf(q - 1.0)
            },
            0.0,
            1.0,
            &[],
            &pol,
        ))?;
        value += near.value;
        err += near.abs_err;
        abs_int += near.abs_integral;
        c
    } else {
        // circle of radius 1 around the origin, then rays from 1
        let eps = 1.0f64;
        let arc = best(integrate_best_effort(
            |psi: f64| {
                // Re[e^s s^{a+1} (s^α + x)^{-γ}] with s = e^{iψ}, x^{-γ} removed
                let (sp, cp) = psi.sin_cos();
                let (lrx, phi) = w_polar(x, eps, alpha * psi);
                let mag = (cp - gamma * lrx).exp();
                mag * (sp + (a + 1.0) * psi - gamma * phi).cos()
            },
            0.0,
            theta,
            &[],
            &pol,
        ))?;
        value += arc.value;
        err += arc.abs_err;
        abs_int += arc.abs_integral;
        eps
    };

    // the envelope r^a e^{r cos θ} bounds the integrand whatever x is
    let end = tail_radius(a, cos_t, start);
    let mut bps = vec![scale, 2.0 * scale];
    let mut b = 2.0 * start;
    while b < end {
        bps.push(b);
        b *= 2.0;
    }
    bps.retain(|b| *b > start && *b < end);
    bps.sort_by(f64::total_cmp);
    let far = best(integrate_best_effort(ray, start, end, &bps, &pol))?;
    value += far.value;
    err += far.abs_err;
    abs_int += far.abs_integral;

    // every piece carries a common 1/π
    let (j, err, abs_int) = (value / PI, err / PI, abs_int / PI);
    if !j.is_finite() {
        return Err(Error::QuadratureFailure("contour integral is not finite".into()));
    }
    Ok(ContourEval { j, err: err + 50.0 * f64::EPSILON * abs_int, abs_integral: abs_int })
}

/// M-Wright kernel `M_ν(z) = W_{-ν,1-ν}(-z)` for `0 < ν < 1`, `z ≥ 0`, by
/// quadrature along a rotated Hankel ray. Accuracy is absolute (~1e-14).
pub(crate) fn m_wright_contour(nu: f64, z: f64) -> Result<(f64, f64)> {
    if !(nu > 0.0 && nu < 1.0) {
        return Err(invalid(format!("M-Wright contour needs 0 < nu < 1, got {nu}")));
    }
    if !(z >= 0.0) || !z.is_finite() {
        return Err(invalid(format!("M-Wright argument must be a finite nonnegative number, got {z}")));
    }
    let theta = if nu <= 0.5 { PI } else { 0.5 * (FRAC_PI_2 + FRAC_PI_2 / nu) };
    let (sin_t, cos_t) = theta.sin_cos();
    let (sin_nt, cos_nt) = (nu * theta).sin_cos();
    let inv = 1.0 / nu;
    let f = |u: f64| -> f64 {
        let v = u.powf(inv);
        let e = v * cos_t - z * u * cos_nt;
        e.exp() * (v * sin_t - z * u * sin_nt + nu * theta).sin()
    };
    // envelope e^{u^{1/ν} cos θ - z u cos νθ} below e^{-46}
    let c1 = -cos_t;
    let c2 = z * cos_nt;
    let mut end = (46.0 / c1).powf(nu);
    if c2 > 0.0 {
        end = end.min(46.0 / c2).max(1e-3);
    }
    let mut bps = Vec::new();
    let mut b = end / 64.0;
    while b < end {
        bps.push(b);
        b *= 2.0;
    }
    let r = best(integrate_best_effort(f, 0.0, end, &bps, &QuadPolicy { abs_tol: 1e-15, rel_tol: 1e-13, max_subdivisions: 600 }))?;
    let k = 1.0 / (PI * nu);
    Ok((k * r.value, k * (r.abs_err + 50.0 * f64::EPSILON * r.abs_integral)))
}
