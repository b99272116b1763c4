//! Exact distributions of the first-type (`n = 1`), second-type (`n = 2`)
//! and n-th order fractional Poisson processes.
//!
//! With `x = λ t^ν` every quantity is a finite combination of
//! `x^p E^γ_{ν,β}(-x)`, evaluated through [`crate::special`] with the power
//! folded in on the log scale.

use serde::{Deserialize, Serialize};

use crate::check::CheckReport;
use crate::error::{invalid, Error, Result};
use crate::special::gamma::{binomial, ln_gamma, rgamma};
use crate::special::{gml_neg_weighted, gml_scaled, Evaluation, Route, SeriesPolicy};

/// Model order `n`, fractional order `ν ∈ (0, 1]` and rate `λ > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProcessSpec {
    pub n: u32,
    pub nu: f64,
    pub lambda: f64,
}

impl ProcessSpec {
    pub fn new(n: u32, nu: f64, lambda: f64) -> Result<Self> {
        let s = ProcessSpec { n, nu, lambda };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(invalid("model order n must be at least 1"));
        }
        if !(self.nu > 0.0 && self.nu <= 1.0) {
            return Err(invalid(format!("nu must lie in (0, 1], got {}", self.nu)));
        }
        if !(self.lambda > 0.0) || !self.lambda.is_finite() {
            return Err(invalid(format!("lambda must be positive and finite, got {}", self.lambda)));
        }
        Ok(())
    }

    /// `λ t^ν`, the natural argument of every closed form.
    pub fn scale(&self, t: f64) -> f64 {
        self.lambda * t.powf(self.nu)
    }

    pub(crate) fn with_n(&self, n: u32) -> ProcessSpec {
        ProcessSpec { n, ..*self }
    }
}

/// One row of a pmf table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PmfRow {
    pub k: u64,
    pub t: f64,
    pub p: f64,
}

/// Value of the interarrival tail asymptote and how much to trust it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TailAsymptote {
    pub value: f64,
    /// The `n`-fold factor is stated for `n ≤ 2` only; larger `n` extrapolates.
    pub extrapolated: bool,
    /// False at `ν = 1`, where the density decays exponentially.
    pub applicable: bool,
}

fn check_t(t: f64) -> Result<()> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(invalid(format!("t must be positive and finite, got {t}")));
    }
    Ok(())
}

fn policy() -> SeriesPolicy {
    SeriesPolicy::default()
}

/// `x^p E^γ_{ν,β}(-x)` with an error estimate.
fn term(nu: f64, beta: f64, gamma: f64, x: f64, p: f64) -> Result<Evaluation> {
    gml_neg_weighted(nu, beta, gamma, x, p, &policy())
}

/// Sum of `Σ_j C(n,j) x^{n(k+1)-j} E^{n(k+1)}_{ν, νn(k+1)-νj+1-m}(-x) / t^m`,
/// the `m`-th time derivative of the pmf (m = 0 gives the pmf itself).
fn pmf_terms(spec: &ProcessSpec, k: u64, t: f64, m: u32) -> Result<Evaluation> {
    let n = spec.n as u64;
    let x = spec.scale(t);
    let gamma = (n * (k + 1)) as f64;
    let mut value = 0.0;
    let mut err = 0.0;
    let mut route = Route::Closed;
    for j in 1..=n {
        let p = (n * (k + 1) - j) as f64;
        let beta = spec.nu * p + 1.0 - m as f64;
        let e = term(spec.nu, beta, gamma, x, p)?;
        let c = binomial(n, j);
        value += c * e.value;
        err += c * e.abs_err;
        if e.route != Route::Closed {
            route = e.route;
        }
    }
    let tm = t.powi(m as i32);
    Ok(Evaluation { value: value / tm, abs_err: err / tm, route })
}

/// `Pr{N(t) = k}` with its error estimate and route.
pub fn pmf_eval(spec: &ProcessSpec, k: u64, t: f64) -> Result<Evaluation> {
    spec.validate()?;
    if t == 0.0 {
        let v = if k == 0 { 1.0 } else { 0.0 };
        return Ok(Evaluation { value: v, abs_err: 0.0, route: Route::Closed });
    }
    check_t(t)?;
    let e = pmf_terms(spec, k, t, 0)?;
    if !(e.value >= -1e-10 && e.value <= 1.0 + 1e-10) || e.abs_err > 1e-6 {
        return Err(Error::NumericalInstability(format!(
            "pmf(k={k}, t={t}) evaluated to {} with error estimate {:.2e}",
            e.value, e.abs_err
        )));
    }
    Ok(Evaluation { value: e.value.clamp(0.0, 1.0), ..e })
}

/// `Pr{N(t) = k}`.
///
/// * `n = 1`: `x^k E^{k+1}_{ν,νk+1}(-x)`
/// * `n = 2`: `x^{2k} E^{2k+1}_{ν,2kν+1}(-x) + x^{2k+1} E^{2k+2}_{ν,(2k+1)ν+1}(-x)`
/// * general `n`: `Σ_{j=1}^{n} C(n,j) x^{n(k+1)-j} E^{n(k+1)}_{ν,νn(k+1)-νj+1}(-x)`
///
/// `t = 0` gives the indicator of `k = 0`.
pub fn pmf(spec: &ProcessSpec, k: u64, t: f64) -> Result<f64> {
    Ok(pmf_eval(spec, k, t)?.value)
}

/// Pmf rows for `k = 0..=k_max` at a fixed time.
pub fn pmf_table(spec: &ProcessSpec, k_max: u64, t: f64) -> Result<Vec<PmfRow>> {
    (0..=k_max).map(|k| Ok(PmfRow { k, t, p: pmf(spec, k, t)? })).collect()
}

/// `m`-th time derivative of the pmf, obtained by differentiating each
/// `t^{β-1} E^γ_{ν,β}(-λ t^ν)` term exactly: the derivative lowers `β` by one.
pub fn pmf_derivative(spec: &ProcessSpec, k: u64, t: f64, m: u32) -> Result<f64> {
    spec.validate()?;
    check_t(t)?;
    Ok(pmf_terms(spec, k, t, m)?.value)
}

/// Compare `pmf(n, k, t)` with `Σ_{j=0}^{n-1} pmf(1, nk + j, t)`.
pub fn pmf_decomposition_check(spec: &ProcessSpec, k: u64, t: f64) -> Result<CheckReport> {
    spec.validate()?;
    if spec.n < 2 {
        return Err(invalid("decomposition check needs n >= 2"));
    }
    let lhs = pmf(spec, k, t)?;
    let one = spec.with_n(1);
    let n = spec.n as u64;
    let mut rhs = 0.0;
    for j in 0..n {
        rhs += pmf(&one, n * k + j, t)?;
    }
    Ok(CheckReport::new(format!("decomposition n={} k={k} t={t}", spec.n), lhs, rhs, 1e-10))
}

fn check_k(k: u64) -> Result<()> {
    if k < 1 {
        return Err(invalid("event index k must be at least 1"));
    }
    Ok(())
}

/// Density of the time of the `k`-th event: `λ^{nk} t^{nνk-1} E^{nk}_{ν,nνk}(-λt^ν)`.
pub fn waiting_time_pdf(spec: &ProcessSpec, k: u64, t: f64) -> Result<f64> {
    Ok(waiting_time_pdf_eval(spec, k, t)?.value)
}

/// [`waiting_time_pdf`] with its error estimate and route.
pub fn waiting_time_pdf_eval(spec: &ProcessSpec, k: u64, t: f64) -> Result<Evaluation> {
    spec.validate()?;
    check_k(k)?;
    check_t(t)?;
    let x = spec.scale(t);
    let nk = (spec.n as u64 * k) as f64;
    let e = term(spec.nu, spec.nu * nk, nk, x, nk)?;
    Ok(Evaluation { value: (e.value / t).max(0.0), abs_err: e.abs_err / t, route: e.route })
}

/// `Pr{T_k ≤ t} = (λt^ν)^{nk} E^{nk}_{ν,nνk+1}(-λt^ν)`; zero at `t = 0`.
pub fn waiting_time_cdf(spec: &ProcessSpec, k: u64, t: f64) -> Result<f64> {
    Ok(waiting_time_cdf_eval(spec, k, t)?.value)
}

/// [`waiting_time_cdf`] with its error estimate and route.
pub fn waiting_time_cdf_eval(spec: &ProcessSpec, k: u64, t: f64) -> Result<Evaluation> {
    spec.validate()?;
    check_k(k)?;
    if t == 0.0 {
        return Ok(Evaluation { value: 0.0, abs_err: 0.0, route: Route::Closed });
    }
    check_t(t)?;
    let x = spec.scale(t);
    let nk = (spec.n as u64 * k) as f64;
    let e = term(spec.nu, spec.nu * nk + 1.0, nk, x, nk)?;
    Ok(Evaluation { value: e.value.clamp(0.0, 1.0), ..e })
}

/// Interarrival density `λ^n t^{nν-1} E^n_{ν,nν}(-λt^ν)`.
pub fn interarrival_pdf(spec: &ProcessSpec, t: f64) -> Result<f64> {
    waiting_time_pdf(spec, 1, t)
}

/// Power-law tail `nν / (λ Γ(1-ν) t^{ν+1})` of the interarrival density.
pub fn interarrival_tail_asymptote(spec: &ProcessSpec, t: f64) -> Result<TailAsymptote> {
    spec.validate()?;
    check_t(t)?;
    let extrapolated = spec.n > 2;
    if spec.nu == 1.0 {
        return Ok(TailAsymptote { value: 0.0, extrapolated, applicable: false });
    }
    let nu = spec.nu;
    let ln_v = (spec.n as f64 * nu).ln() - spec.lambda.ln() - ln_gamma(1.0 - nu) - (nu + 1.0) * t.ln();
    Ok(TailAsymptote { value: ln_v.exp(), extrapolated, applicable: true })
}

fn ml_at(nu: f64, beta: f64, z: f64) -> Result<Evaluation> {
    Ok(gml_scaled(nu, beta, 1.0, z, &policy())?.eval())
}

/// Probability generating function `Σ_k u^k Pr{N(t) = k}` for `n ∈ {1, 2}`.
///
/// `n = 1`: `E_{ν,1}(λ(u-1)t^ν)`. `n = 2`:
/// `((√u+1)/(2√u)) E_{ν,1}(-λ(1-√u)t^ν) + ((√u-1)/(2√u)) E_{ν,1}(-λ(1+√u)t^ν)`.
/// The second form is singular at `u = 0`, so `u ≥ 1e-12` is required.
pub fn pgf(spec: &ProcessSpec, u: f64, t: f64) -> Result<f64> {
    Ok(pgf_eval(spec, u, t)?.value)
}

/// [`pgf`] with its error estimate and route.
pub fn pgf_eval(spec: &ProcessSpec, u: f64, t: f64) -> Result<Evaluation> {
    spec.validate()?;
    if !(u > 0.0 && u <= 1.0) {
        return Err(invalid(format!("u must lie in (0, 1], got {u}")));
    }
    let one = Evaluation { value: 1.0, abs_err: 0.0, route: Route::Closed };
    if t == 0.0 {
        return Ok(one);
    }
    check_t(t)?;
    let x = spec.scale(t);
    match spec.n {
        1 => ml_at(spec.nu, 1.0, x * (u - 1.0)),
        2 => {
            if u < 1e-12 {
                return Err(invalid(format!("second-type pgf needs u >= 1e-12, got {u}")));
            }
            if u == 1.0 {
                return Ok(one);
            }
            let su = u.sqrt();
            let (ca, cb) = ((su + 1.0) / (2.0 * su), (su - 1.0) / (2.0 * su));
            let a = ml_at(spec.nu, 1.0, -x * (1.0 - su))?;
            let b = ml_at(spec.nu, 1.0, -x * (1.0 + su))?;
            let route = if b.route == Route::Integral { b.route } else { a.route };
            Ok(Evaluation {
                value: ca * a.value + cb * b.value,
                abs_err: ca.abs() * a.abs_err + cb.abs() * b.abs_err,
                route,
            })
        }
        n => Err(invalid(format!("pgf is available for n = 1 or 2, got {n}"))),
    }
}

/// Factorial moment `E[N(N-1)...(N-r+1)] = (λt^ν)^r r! / Γ(νr+1)` for `n = 1`.
pub fn factorial_moment(spec: &ProcessSpec, r: u32, t: f64) -> Result<f64> {
    spec.validate()?;
    if spec.n != 1 {
        return Err(invalid("factorial moments are available for n = 1"));
    }
    if r < 1 {
        return Err(invalid("moment order r must be at least 1"));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    check_t(t)?;
    let rf = r as f64;
    let ln_v = rf * spec.scale(t).ln() + ln_gamma(rf + 1.0) - ln_gamma(spec.nu * rf + 1.0);
    Ok(ln_v.exp())
}

/// Expected number of events by time `t` for `n ∈ {1, 2}`.
///
/// `n = 1`: `λt^ν / Γ(ν+1)`. `n = 2`: `(λt^ν)² E_{ν,2ν+1}(-2λt^ν)`.
pub fn renewal_mean(spec: &ProcessSpec, t: f64) -> Result<f64> {
    Ok(renewal_mean_eval(spec, t)?.value)
}

/// [`renewal_mean`] with its error estimate and route.
pub fn renewal_mean_eval(spec: &ProcessSpec, t: f64) -> Result<Evaluation> {
    spec.validate()?;
    let closed = |value: f64| Evaluation { value, abs_err: 0.0, route: Route::Closed };
    if t == 0.0 {
        return Ok(closed(0.0));
    }
    check_t(t)?;
    let x = spec.scale(t);
    match spec.n {
        1 => Ok(closed(x * rgamma(spec.nu + 1.0))),
        2 => {
            // x² E(-2x) = (2x)²/4 · E(-2x)
            let e = term(spec.nu, 2.0 * spec.nu + 1.0, 1.0, 2.0 * x, 2.0)?;
            Ok(Evaluation { value: e.value / 4.0, abs_err: e.abs_err / 4.0, route: e.route })
        }
        n => Err(invalid(format!("renewal mean is available for n = 1 or 2, got {n}"))),
    }
}

/// Second-type renewal mean written through the first-type one:
/// `λt^ν / (2Γ(ν+1)) - (λt^ν/2) E_{ν,ν+1}(-2λt^ν)`.
pub fn renewal_mean_second_type_alt(spec: &ProcessSpec, t: f64) -> Result<f64> {
    spec.validate()?;
    check_t(t)?;
    let first = renewal_mean(&spec.with_n(1), t)?;
    Ok(0.5 * first - odd_probability_sum(&spec.with_n(1), t)? / 2.0)
}

/// `Σ_k Pr{N(t) = 2k+1} = λt^ν E_{ν,ν+1}(-2λt^ν)` for `n = 1`.
pub fn odd_probability_sum(spec: &ProcessSpec, t: f64) -> Result<f64> {
    spec.validate()?;
    if spec.n != 1 {
        return Err(invalid("odd-probability sum is defined for n = 1"));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    check_t(t)?;
    let x = spec.scale(t);
    let e = term(spec.nu, spec.nu + 1.0, 1.0, 2.0 * x, 1.0)?;
    Ok((e.value / 2.0).clamp(0.0, 1.0))
}

/// Smallest `K` with `Pr{T_{K+1} ≤ t} < tail_tol`; the pmf mass beyond `K`
/// is exactly that probability.
pub fn truncation_index(spec: &ProcessSpec, t: f64, tail_tol: f64) -> Result<u64> {
    let mut k = 0u64;
    loop {
        if waiting_time_cdf(spec, k + 1, t)? < tail_tol {
            return Ok(k);
        }
        k += 1;
        if k > 100_000 {
            return Err(Error::NonConvergence { terms: k as usize });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn poisson_values() {
        let s = ProcessSpec::new(1, 1.0, 1.0).unwrap();
        assert_relative_eq!(pmf(&s, 0, 1.0).unwrap(), (-1.0f64).exp(), max_relative = 1e-15);
        let s2 = ProcessSpec::new(2, 1.0, 1.0).unwrap();
        assert_relative_eq!(pmf(&s2, 1, 1.0).unwrap(), 0.245_252_960_780_961_7, max_relative = 1e-14);
    }

    #[test]
    fn origin_conventions() {
        let s = ProcessSpec::new(1, 0.5, 1.0).unwrap();
        assert_eq!(pmf(&s, 0, 0.0).unwrap(), 1.0);
        assert_eq!(pmf(&s, 3, 0.0).unwrap(), 0.0);
        assert_eq!(waiting_time_cdf(&s, 2, 0.0).unwrap(), 0.0);
        assert!(waiting_time_pdf(&s, 1, 0.0).is_err());
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(ProcessSpec::new(0, 0.5, 1.0).is_err());
        assert!(ProcessSpec::new(1, 1.2, 1.0).is_err());
        assert!(ProcessSpec::new(1, 0.5, -1.0).is_err());
        let s = ProcessSpec::new(3, 0.5, 1.0).unwrap();
        assert!(pgf(&s, 0.5, 1.0).is_err());
    }

    #[test]
    fn tail_flags() {
        let s = ProcessSpec::new(3, 0.5, 1.0).unwrap();
        assert!(interarrival_tail_asymptote(&s, 10.0).unwrap().extrapolated);
        let s = ProcessSpec::new(1, 1.0, 1.0).unwrap();
        let a = interarrival_tail_asymptote(&s, 10.0).unwrap();
        assert!(!a.applicable && a.value == 0.0);
    }
}
