//! Power-series evaluation of Mittag-Leffler type functions.
//!
//! All three families share the term shape `c_r z^r / Γ(αr + β)`, with
//! `c_r = (γ)_r / r!` for the generalized function and `c_r = 1/r!` for the
//! Wright function (where α may be negative).

use super::gamma::{ln_gamma_sign, rgamma};
use super::{MLSpec, SeriesPolicy};
use crate::error::{invalid, Error, Result};

const EPS: f64 = f64::EPSILON;
/// Wright series results whose largest term exceeds the result by this
/// factor are reported as cancelled.
pub const CANCELLATION_RATIO: f64 = 1e10;

/// Coefficient family of the series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Coef {
    /// `(γ)_r / r!`
    Pochhammer(f64),
    /// `1 / r!`
    Factorial,
}

/// Diagnostics of a summed series. The true value is `sum * exp(ln_scale)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesEval {
    pub sum: f64,
    pub abs_sum: f64,
    pub max_abs_term: f64,
    /// Estimated absolute error of `sum` (rounding plus truncation).
    pub err: f64,
    pub ln_scale: f64,
    pub terms: usize,
}

impl SeriesEval {
    pub fn value(&self) -> f64 {
        if self.ln_scale == 0.0 {
            self.sum
        } else {
            scaled_value(self.sum, self.ln_scale)
        }
    }

    /// `max |term| / |sum|`, infinite when the sum is exactly zero.
    pub fn cancellation_ratio(&self) -> f64 {
        if self.sum == 0.0 {
            if self.max_abs_term == 0.0 {
                1.0
            } else {
                f64::INFINITY
            }
        } else {
            self.max_abs_term / self.sum.abs()
        }
    }

    pub fn rel_err(&self) -> f64 {
        if self.sum == 0.0 {
            f64::INFINITY
        } else {
            self.err / self.sum.abs()
        }
    }
}

pub(crate) fn scaled_value(m: f64, ln_scale: f64) -> f64 {
    if m == 0.0 {
        return 0.0;
    }
    m.signum() * (m.abs().ln() + ln_scale).exp()
}

/// Neumaier-compensated accumulator.
#[derive(Default)]
struct Compensated {
    sum: f64,
    comp: f64,
}

impl Compensated {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }
    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Sum `Σ c_r z^r / Γ(αr + β)`. α may be negative (Wright), β any real.
pub(crate) fn series_core(
    alpha: f64,
    beta: f64,
    coef: Coef,
    z: f64,
    policy: &SeriesPolicy,
) -> Result<SeriesEval> {
    // For large β the first term underflows; factor out 1/Γ(β).
    let shift = if beta > 150.0 && alpha >= 0.0 { ln_gamma_sign(beta).0 } else { 0.0 };
    let scaled = shift != 0.0;

    let mut p = 1.0f64;
    let mut log_mode = false;
    let mut lnp = 0.0f64;
    let mut psign = 1.0f64;

    let mut acc = Compensated::default();
    let mut abs_sum = 0.0f64;
    let mut max_abs = 0.0f64;
    let mut err = 0.0f64;
    let mut small = 0usize;
    let mut last;

    for r in 0..policy.max_terms {
        if r > 0 {
            let rf = r as f64;
            let f = match coef {
                Coef::Pochhammer(g) => (g + rf - 1.0) / rf,
                Coef::Factorial => 1.0 / rf,
            } * z;
            if !log_mode {
                p *= f;
                if p.abs() > 1e250 || (p != 0.0 && p.abs() < 1e-250) {
                    log_mode = true;
                    lnp = p.abs().ln();
                    psign = p.signum();
                }
            } else {
                lnp += f.abs().ln();
                if f < 0.0 {
                    psign = -psign;
                }
            }
        }
        let arg = alpha * r as f64 + beta;
        let (term, rel) = if !log_mode && !scaled && arg < 170.0 && arg > -150.0 {
            (p * rgamma(arg), EPS * (4.0 + 2.0 * (r as f64).sqrt()))
        } else {
            let (lg, gs) = ln_gamma_sign(arg);
            if lg.is_infinite() {
                (0.0, 0.0)
            } else {
                let (lp, s) = if log_mode { (lnp, psign) } else { (p.abs().ln(), p.signum()) };
                let lt = lp - lg + shift;
                (s * gs * lt.exp(), EPS * (8.0 + lp.abs() + lg.abs() + shift.abs()))
            }
        };
        if !term.is_finite() {
            return Err(Error::NumericalInstability(format!(
                "series term {r} overflowed (alpha={alpha}, beta={beta}, z={z})"
            )));
        }
        acc.add(term);
        let at = term.abs();
        abs_sum += at;
        max_abs = max_abs.max(at);
        err += at * rel;
        last = at;
        let s = acc.value();
        if at <= policy.rel_tol * s.abs() {
            small += 1;
        } else {
            small = 0;
        }
        if small >= 3 {
            let sum = acc.value();
            return Ok(SeriesEval {
                sum,
                abs_sum,
                max_abs_term: max_abs,
                err: err + EPS * sum.abs() + last,
                ln_scale: -shift,
                terms: r + 1,
            });
        }
    }
    Err(Error::NonConvergence { terms: policy.max_terms })
}

/// Generalized (Prabhakar) Mittag-Leffler series with diagnostics.
pub fn gml_series_eval(spec: &MLSpec, x: f64, policy: &SeriesPolicy) -> Result<SeriesEval> {
    spec.validate()?;
    policy.validate()?;
    if !x.is_finite() {
        return Err(invalid(format!("argument must be finite, got {x}")));
    }
    series_core(spec.alpha, spec.beta, Coef::Pochhammer(spec.gamma), x, policy)
}

/// `E^γ_{α,β}(x) = Σ (γ)_r x^r / (r! Γ(αr+β))`, summed until the policy's
/// relative tolerance holds for three consecutive terms.
///
/// Returns [`Error::Cancellation`] (carrying the computed value) when the
/// largest term exceeds the result by more than `1e10`; use
/// [`crate::special::gml`] for large negative arguments.
pub fn gml_series(spec: &MLSpec, x: f64, policy: &SeriesPolicy) -> Result<f64> {
    checked(gml_series_eval(spec, x, policy)?)
}

fn checked(e: SeriesEval) -> Result<f64> {
    let ratio = e.cancellation_ratio();
    if ratio > CANCELLATION_RATIO {
        return Err(Error::Cancellation { value: e.value(), ratio });
    }
    Ok(e.value())
}

/// Two-parameter Mittag-Leffler series `E_{α,β}(x)`.
pub fn ml_series(alpha: f64, beta: f64, x: f64, policy: &SeriesPolicy) -> Result<f64> {
    gml_series(&MLSpec::new(alpha, beta, 1.0)?, x, policy)
}

/// Wright series with diagnostics. Requires `lam > -1`.
pub fn wright_series_eval(lam: f64, beta: f64, x: f64, policy: &SeriesPolicy) -> Result<SeriesEval> {
    if !(lam > -1.0) || !lam.is_finite() {
        return Err(invalid(format!("Wright first parameter must exceed -1, got {lam}")));
    }
    if !beta.is_finite() || !x.is_finite() {
        return Err(invalid("Wright parameters must be finite"));
    }
    policy.validate()?;
    series_core(lam, beta, Coef::Factorial, x, policy)
}

/// Wright function `W_{λ,β}(x) = Σ x^k / (k! Γ(λk+β))`.
///
/// Returns [`Error::Cancellation`] (carrying the computed value) when the
/// largest term exceeds the result by more than `1e10`.
pub fn wright_series(lam: f64, beta: f64, x: f64, policy: &SeriesPolicy) -> Result<f64> {
    checked(wright_series_eval(lam, beta, x, policy)?)
}

/// `e^{-x} / Γ(β) · 1F1(β-γ; β; x)` = `E^γ_{1,β}(-x)` for `x ≥ 0`, `β > 0`.
///
/// After Kummer's transformation the series has no alternating cancellation
/// when `β ≥ γ`, and terminates when `β - γ` is a non-positive integer.
pub(crate) fn kummer_neg(beta: f64, gamma: f64, x: f64, policy: &SeriesPolicy) -> Result<SeriesEval> {
    let a = beta - gamma;
    let mut term = 1.0f64;
    let mut acc = Compensated::default();
    let mut abs_sum = 0.0f64;
    let mut max_abs = 0.0f64;
    let mut ln_extra = 0.0f64;
    let mut small = 0;
    for r in 0..policy.max_terms {
        if r > 0 {
            let rf = r as f64;
            term *= (a + rf - 1.0) * x / (rf * (beta + rf - 1.0));
        }
        acc.add(term);
        abs_sum += term.abs();
        max_abs = max_abs.max(term.abs());
        if term == 0.0 || term.abs() <= policy.rel_tol * acc.value().abs() {
            small += 1;
        } else {
            small = 0;
        }
        if term == 0.0 || small >= 3 {
            let sum = acc.value();
            let (lg, _) = ln_gamma_sign(beta);
            let err = EPS * (4.0 + 2.0 * (r as f64).sqrt()) * abs_sum
                + EPS * (x + lg.abs() + 2.0) * sum.abs();
            return Ok(SeriesEval {
                sum,
                abs_sum,
                max_abs_term: max_abs,
                err,
                ln_scale: -x - lg + ln_extra,
                terms: r + 1,
            });
        }
        if acc.value().abs() > 1e280 {
            let s = 1e-280;
            let v = acc.value() * s;
            acc = Compensated::default();
            acc.add(v);
            term *= s;
            abs_sum *= s;
            max_abs *= s;
            ln_extra += 280.0 * std::f64::consts::LN_10;
        }
    }
    Err(Error::NonConvergence { terms: policy.max_terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn pol() -> SeriesPolicy {
        SeriesPolicy::default()
    }

    #[test]
    fn trivial_values() {
        assert_eq!(ml_series(1.0, 1.0, 0.0, &pol()).unwrap(), 1.0);
        assert_relative_eq!(ml_series(1.0, 1.0, 1.0, &pol()).unwrap(), std::f64::consts::E, max_relative = 1e-15);
        let x = 0.5f64;
        assert_relative_eq!(ml_series(1.0, 2.0, x, &pol()).unwrap(), (x.exp() - 1.0) / x, max_relative = 1e-15);
    }

    #[test]
    fn large_beta_is_scaled() {
        let spec = MLSpec::new(0.9, 181.0, 200.0).unwrap();
        let e = gml_series_eval(&spec, -0.5, &pol()).unwrap();
        assert!(e.ln_scale < -700.0);
        assert!(e.sum > 0.0 && e.sum.is_finite());
    }

    #[test]
    fn kummer_matches_exponential() {
        for k in 0..8 {
            let b = k as f64 + 1.0;
            let e = kummer_neg(b, b, 2.5, &pol()).unwrap();
            let fact: f64 = (1..=k).map(|i| i as f64).product();
            assert_relative_eq!(e.value(), (-2.5f64).exp() / fact, max_relative = 1e-14);
        }
    }

    #[test]
    fn wright_cancellation_is_reported() {
        let r = wright_series(-0.2, 0.8, -40.0, &pol());
        assert!(matches!(r, Err(Error::Cancellation { .. })));
    }
}
