//! Mittag-Leffler, generalized (Prabhakar) Mittag-Leffler and Wright functions.
//!
//! Each function has a power-series route. On the negative real axis the
//! series cancels badly once `|x|^{1/α}` grows, so [`gml`] and friends pick
//! between the series, a rotated Hankel contour integral, and the exact
//! Kummer form available at `α = 1`.

pub mod gamma;
mod hankel;
mod integral;
mod series;

use std::sync::atomic::{AtomicUsize, Ordering};

use serde::Serialize;

use crate::error::{invalid, Error, Result};
pub use crate::quad::QuadPolicy;

pub use integral::{
    ml2_neg_integral, ml_cauchy_integral, ml_large_t_approx, ml_neg_integral, ml_nu_nu_neg_integral,
    wright_neg_integral,
};
pub use series::{
    gml_series, gml_series_eval, ml_series, wright_series, wright_series_eval, SeriesEval, CANCELLATION_RATIO,
};

use series::{kummer_neg, scaled_value, series_core, Coef};

/// Parameters `(α, β, γ)` of `E^γ_{α,β}`; `γ = 1` is the two-parameter function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MLSpec {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl MLSpec {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        let s = MLSpec { alpha, beta, gamma };
        s.validate()?;
        Ok(s)
    }

    /// Two-parameter Mittag-Leffler target `E_{α,β}`.
    pub fn ml(alpha: f64, beta: f64) -> Result<Self> {
        Self::new(alpha, beta, 1.0)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("alpha", self.alpha), ("beta", self.beta), ("gamma", self.gamma)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(invalid(format!("{name} must be positive and finite, got {v}")));
            }
        }
        Ok(())
    }
}

/// Series truncation and route-selection settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesPolicy {
    pub rel_tol: f64,
    pub max_terms: usize,
    /// Above this `|x|` a negative-axis evaluation with `α < 1` always takes
    /// the contour route.
    pub integral_switch_threshold: f64,
    /// Estimated relative error at which a negative-axis series result is
    /// accepted without trying the contour route.
    pub accept_rel: f64,
}

static DEFAULT_MAX_TERMS: AtomicUsize = AtomicUsize::new(10_000);

/// Change the `max_terms` used by [`SeriesPolicy::default`] for the rest of
/// the process. Every evaluation that does not take an explicit policy is affected.
pub fn set_default_max_terms(max_terms: usize) -> Result<()> {
    if max_terms == 0 {
        return Err(invalid("max_terms must be at least 1"));
    }
    DEFAULT_MAX_TERMS.store(max_terms, Ordering::Relaxed);
    Ok(())
}

impl Default for SeriesPolicy {
    fn default() -> Self {
        SeriesPolicy {
            rel_tol: 1e-13,
            max_terms: DEFAULT_MAX_TERMS.load(Ordering::Relaxed),
            integral_switch_threshold: 30.0,
            accept_rel: 1e-12,
        }
    }
}

impl SeriesPolicy {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(invalid("rel_tol must be positive"));
        }
        if self.max_terms == 0 {
            return Err(invalid("max_terms must be at least 1"));
        }
        if !(self.accept_rel > 0.0) {
            return Err(invalid("accept_rel must be positive"));
        }
        if !(self.integral_switch_threshold > 0.0) {
            return Err(invalid("integral_switch_threshold must be positive"));
        }
        Ok(())
    }
}

/// How a value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Series,
    /// Rotated Hankel contour quadrature.
    Integral,
    /// Exact reduction (Kummer form at α = 1, exponential or Erlang cases).
    Closed,
}

impl Route {
    pub fn as_str(&self) -> &'static str {
        match self {
            Route::Series => "series",
            Route::Integral => "integral",
            Route::Closed => "closed",
        }
    }
}

/// A value with an estimated absolute error and the route that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Evaluation {
    pub value: f64,
    pub abs_err: f64,
    pub route: Route,
}

/// Internal representation `mant · e^{ln_scale}` that survives under- and
/// overflow of the individual factors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Scaled {
    pub mant: f64,
    pub err: f64,
    pub ln_scale: f64,
    pub route: Route,
}

impl Scaled {
    fn rel_err(&self) -> f64 {
        if self.mant == 0.0 {
            if self.err == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            self.err / self.mant.abs()
        }
    }

    pub fn times_ln(mut self, ln_factor: f64) -> Self {
        self.ln_scale += ln_factor;
        self
    }

    pub fn eval(&self) -> Evaluation {
        Evaluation {
            value: scaled_value(self.mant, self.ln_scale),
            abs_err: scaled_value(self.err, self.ln_scale),
            route: self.route,
        }
    }
}

fn from_series(e: SeriesEval) -> Scaled {
    Scaled { mant: e.sum, err: e.err, ln_scale: e.ln_scale, route: Route::Series }
}

/// `E^γ_{α,β}(-x)` for `x > 0` in scaled form. `β` may be any real number
/// (derivatives of the pmf terms need `β ≤ 0`).
pub(crate) fn gml_neg_scaled(alpha: f64, beta: f64, gamma: f64, x: f64, policy: &SeriesPolicy) -> Result<Scaled> {
    debug_assert!(x > 0.0);
    if alpha == 1.0 && beta > 0.0 {
        let e = kummer_neg(beta, gamma, x, policy)?;
        if e.rel_err() <= policy.accept_rel || e.cancellation_ratio() < 1e3 {
            return Ok(Scaled { route: Route::Closed, ..from_series(e) });
        }
    }
    let contour_ok = alpha < 1.0;
    let forced = contour_ok && x > policy.integral_switch_threshold;
    // the alternating series costs about e^{x^{1/α}} in cancellation
    let predicted_loss = x.powf(1.0 / alpha);
    let mut best: Option<Scaled> = None;
    if !forced && (predicted_loss < 25.0 || !contour_ok) {
        match series_core(alpha, beta, Coef::Pochhammer(gamma), -x, policy) {
            Ok(e) => {
                let s = from_series(e);
                if s.rel_err() <= policy.accept_rel || !contour_ok {
                    return Ok(s);
                }
                best = Some(s);
            }
            Err(err) if !contour_ok => return Err(err),
            Err(_) => {}
        }
    }
    match hankel::gml_contour(alpha, beta, gamma, x) {
        Ok(c) => {
            let s = Scaled { mant: c.j, err: c.err, ln_scale: -gamma * x.ln(), route: Route::Integral };
            match best {
                Some(b) if b.rel_err() < s.rel_err() => Ok(b),
                _ => Ok(s),
            }
        }
        Err(e) => match best {
            Some(b) => Ok(b),
            None => Err(e),
        },
    }
}

/// General real argument, scaled form.
pub(crate) fn gml_scaled(alpha: f64, beta: f64, gamma: f64, x: f64, policy: &SeriesPolicy) -> Result<Scaled> {
    if !x.is_finite() {
        return Err(invalid(format!("argument must be finite, got {x}")));
    }
    if x == 0.0 {
        let r = gamma::rgamma(beta);
        return Ok(Scaled { mant: r, err: 2.0 * f64::EPSILON * r.abs(), ln_scale: 0.0, route: Route::Closed });
    }
    if x < 0.0 {
        return gml_neg_scaled(alpha, beta, gamma, -x, policy);
    }
    series_core(alpha, beta, Coef::Pochhammer(gamma), x, policy).map(from_series)
}

/// `x^p · E^γ_{α,β}(-x)` for `x > 0`, combined in log space.
pub(crate) fn gml_neg_weighted(
    alpha: f64,
    beta: f64,
    gamma: f64,
    x: f64,
    p: f64,
    policy: &SeriesPolicy,
) -> Result<Evaluation> {
    Ok(gml_neg_scaled(alpha, beta, gamma, x, policy)?.times_ln(p * x.ln()).eval())
}

/// `E^γ_{α,β}(x)` with automatic route selection and default policy.
pub fn gml(spec: &MLSpec, x: f64) -> Result<Evaluation> {
    gml_with(spec, x, &SeriesPolicy::default())
}

/// `E^γ_{α,β}(x)` with automatic route selection.
pub fn gml_with(spec: &MLSpec, x: f64, policy: &SeriesPolicy) -> Result<Evaluation> {
    spec.validate()?;
    policy.validate()?;
    Ok(gml_scaled(spec.alpha, spec.beta, spec.gamma, x, policy)?.eval())
}

/// `E_{α,β}(x)` with automatic route selection.
pub fn ml(alpha: f64, beta: f64, x: f64) -> Result<Evaluation> {
    gml(&MLSpec::ml(alpha, beta)?, x)
}

/// M-Wright function `M_ν(z) = W_{-ν,1-ν}(-z)` for `0 < ν < 1`, `z ≥ 0`.
///
/// Uses the series while its cancellation is harmless, otherwise the contour
/// integral. At `ν = 1/2` this is `e^{-z²/4}/√π`.
pub fn m_wright(nu: f64, z: f64) -> Result<Evaluation> {
    if !(nu > 0.0 && nu < 1.0) {
        return Err(invalid(format!("M-Wright order must lie in (0, 1), got {nu}")));
    }
    if !(z >= 0.0) || !z.is_finite() {
        return Err(invalid(format!("M-Wright argument must be finite and nonnegative, got {z}")));
    }
    let policy = SeriesPolicy::default();
    if z.powf(1.0 / (1.0 - nu)) < 20.0 {
        if let Ok(e) = wright_series_eval(-nu, 1.0 - nu, -z, &policy) {
            if e.err <= 1e-15_f64.max(policy.accept_rel * e.sum.abs()) {
                return Ok(Evaluation { value: e.value(), abs_err: e.err, route: Route::Series });
            }
        }
    }
    let (v, err) = hankel::m_wright_contour(nu, z)?;
    Ok(Evaluation { value: v, abs_err: err, route: Route::Integral })
}

/// `W_{λ,β}(x)`: series, except for the M-Wright case `λ = -ν, β = 1-ν,
/// x < 0` where the contour route takes over when the series cancels.
pub fn wright(lam: f64, beta: f64, x: f64) -> Result<Evaluation> {
    let policy = SeriesPolicy::default();
    let e = wright_series_eval(lam, beta, x, &policy)?;
    let ev = Evaluation { value: e.value(), abs_err: e.err, route: Route::Series };
    if e.cancellation_ratio() <= 1e3 {
        return Ok(ev);
    }
    if lam < 0.0 && (beta - (1.0 + lam)).abs() < 1e-15 && x < 0.0 {
        return m_wright(-lam, -x);
    }
    if e.cancellation_ratio() > CANCELLATION_RATIO {
        return Err(Error::Cancellation { value: e.value(), ratio: e.cancellation_ratio() });
    }
    Ok(ev)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn dispatcher_routes() {
        let e = gml(&MLSpec::new(1.0, 3.0, 3.0).unwrap(), -1.0).unwrap();
        assert_eq!(e.route, Route::Closed);
        assert_relative_eq!(e.value, (-1.0f64).exp() / 2.0, max_relative = 1e-15);
        let e = ml(0.5, 1.0, -50.0).unwrap();
        assert_eq!(e.route, Route::Integral);
        let e = ml(0.5, 1.0, -0.1).unwrap();
        assert_eq!(e.route, Route::Series);
    }

    #[test]
    fn m_wright_half_order() {
        for z in [0.0, 0.5, 2.0, 8.0] {
            let m = m_wright(0.5, z).unwrap();
            assert!((m.value - (-z * z / 4.0f64).exp() / std::f64::consts::PI.sqrt()).abs() < 1e-13);
        }
    }
}
