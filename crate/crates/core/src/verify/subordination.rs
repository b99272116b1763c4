//! The first-type pmf as a Poisson law mixed over the random time with
//! density `(1/(λt^ν)) M_ν(y/(λt^ν))`, `M_ν(z) = W_{-ν,1-ν}(-z)`.

use std::cell::RefCell;
use std::f64::consts::PI;

use crate::check::CheckReport;
use crate::error::{invalid, Error, Result};
use crate::quad::{integrate, QuadPolicy};
use crate::special::gamma::ln_gamma;
use crate::special::{gml_scaled, m_wright, SeriesPolicy};

/// `M_ν(z)`; at `ν = 1/2` the closed Gaussian form `e^{-z²/4}/√π`.
fn kernel(nu: f64, z: f64) -> Result<f64> {
    if nu == 0.5 {
        return Ok((-0.25 * z * z).exp() / PI.sqrt());
    }
    Ok(m_wright(nu, z)?.value)
}

/// `∫_0^∞ w(y) dy` split at `scale`, with `y = scale (1 + u/(1-u))` on the tail.
fn split_integral<F: FnMut(f64) -> Result<f64>>(f: F, scale: f64, policy: &QuadPolicy) -> Result<f64> {
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let f = RefCell::new(f);
    let g = |y: f64| -> f64 {
        match (f.borrow_mut())(y) {
            Ok(v) => v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        }
    };
    let pol = QuadPolicy { abs_tol: policy.abs_tol / 4.0, ..*policy };
    let run = || -> Result<f64> {
        let head = integrate(g, 0.0, scale, &[0.25 * scale, 0.5 * scale], &pol)?.value;
        let tail = integrate(
            |u: f64| {
                if u >= 1.0 {
                    return 0.0;
                }
                let w = 1.0 - u;
                g(scale * (1.0 + u / w)) * scale / (w * w)
            },
            0.0,
            1.0,
            &[0.5, 0.75, 0.875, 0.9375],
            &pol,
        )?
        .value;
        Ok(head + tail)
    };
    let r = run();
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    r
}

fn check_args(nu: f64, lambda: f64, t: f64) -> Result<()> {
    if !(nu > 0.0 && nu < 1.0) {
        return Err(invalid(format!("subordination needs 0 < nu < 1, got {nu}")));
    }
    if !(lambda > 0.0) || !(t > 0.0) {
        return Err(invalid("lambda and t must be positive"));
    }
    Ok(())
}

/// `Pr{N(t) = k} = ∫_0^∞ e^{-y} (y^k/k!) (1/(λt^ν)) M_ν(y/(λt^ν)) dy`.
///
/// The kernel decays faster than exponentially beyond its scale `λt^ν`, so
/// the range is split there and the tail mapped onto a finite interval.
pub fn subordination_pmf(k: u64, nu: f64, lambda: f64, t: f64, policy: &QuadPolicy) -> Result<f64> {
    check_args(nu, lambda, t)?;
    let scale = lambda * t.powf(nu);
    let kf = k as f64;
    let lnk = ln_gamma(kf + 1.0);
    split_integral(
        |y| {
            if y <= 0.0 {
                return Ok(if k == 0 { kernel(nu, 0.0)? / scale } else { 0.0 });
            }
            let poisson = (kf * y.ln() - y - lnk).exp();
            Ok(poisson * kernel(nu, y / scale)? / scale)
        },
        scale,
        policy,
    )
}

/// Compare `E^{k+1}_{ν,νk+1}(-λ)` with `(1/k!) ∫_0^∞ e^{-λy} y^k M_ν(y) dy`.
pub fn gml_laplace_identity(k: u64, nu: f64, lambda: f64, tol: f64, policy: &QuadPolicy) -> Result<CheckReport> {
    check_args(nu, lambda, 1.0)?;
    let kf = k as f64;
    let lhs = gml_scaled(nu, nu * kf + 1.0, kf + 1.0, -lambda, &SeriesPolicy::default())?.eval().value;
    let lnk = ln_gamma(kf + 1.0);
    let rhs = split_integral(
        |y| {
            if y <= 0.0 {
                return Ok(if k == 0 { kernel(nu, 0.0)? } else { 0.0 });
            }
            Ok((kf * y.ln() - lambda * y - lnk).exp() * kernel(nu, y)?)
        },
        1.0,
        policy,
    )?;
    Ok(CheckReport::new(format!("gml laplace identity k={k} nu={nu} lambda={lambda}"), lhs, rhs, tol))
}
