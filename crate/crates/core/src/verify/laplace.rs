//! Forward numerical Laplace transforms and the closed-form transform pairs.

use std::cell::RefCell;

use crate::check::CheckReport;
use crate::error::{invalid, Error, Result};
use crate::models::{self, ProcessSpec};
use crate::quad::{integrate, integrate_power_origin, QuadPolicy};
use crate::special::gamma::binomial;
use crate::special::{gml_scaled, SeriesPolicy};

/// `∫_0^∞ e^{-st} f(t) dt` for bounded, smooth `f`.
pub fn laplace_forward<F: FnMut(f64) -> f64>(mut f: F, s: f64, policy: &QuadPolicy) -> Result<f64> {
    try_laplace_forward(|t| Ok(f(t)), s, None, policy)
}

/// `∫_0^∞ e^{-st} f(t) dt` where `f` may be fallible and may behave like a
/// series in `t^c` near the origin (`c > 0`), including an integrable
/// `t^{c-1}` singularity. The substitution `t = t_1 u^{1/c}` on `[0, t_1]`
/// turns such behaviour into a smooth integrand.
pub fn try_laplace_forward<F: FnMut(f64) -> Result<f64>>(
    f: F,
    s: f64,
    origin_exponent: Option<f64>,
    policy: &QuadPolicy,
) -> Result<f64> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(invalid(format!("Laplace variable must be positive, got {s}")));
    }
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let f = RefCell::new(f);
    let g = |t: f64| -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        match (f.borrow_mut())(t) {
            Ok(v) => (-s * t).exp() * v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        }
    };
    let pieces = policy.abs_tol / 4.0;
    let pol = QuadPolicy { abs_tol: pieces, ..*policy };
    let t1 = (1.0 / s).min(1.0);

    let run = || -> Result<f64> {
        let head = match origin_exponent {
            Some(c) => integrate_power_origin(g, c, t1, &pol)?.value,
            None => integrate(g, 0.0, t1, &[], &pol)?.value,
        };
        // tail cutoff: e^{-sR} below abs_tol/10, pushed out further while
        // the integrand itself is still above that level
        let mut end = ((10.0 / pieces).ln() / s).max(2.0 * t1);
        for _ in 0..60 {
            let v = g(end).abs() * end;
            if !(v > pieces / 10.0) {
                break;
            }
            end *= 1.5;
        }
        let mut bps = Vec::new();
        let mut b = 2.0 * t1;
        while b < end {
            bps.push(b);
            b *= 2.0;
        }
        let body = integrate(g, t1, end, &bps, &pol)?.value;
        Ok(head + body)
    };
    let r = run();
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    r
}

/// Transform of the pmf: `Σ_j C(n,j) s^{νj-1} λ^{(k+1)n-j} / (s^ν + λ)^{(k+1)n}`.
pub fn pmf_transform(spec: &ProcessSpec, k: u64, s: f64) -> f64 {
    let n = spec.n as u64;
    let (nu, lam) = (spec.nu, spec.lambda);
    let denom_ln = ((k + 1) * n) as f64 * (s.powf(nu) + lam).ln();
    (1..=n)
        .map(|j| {
            let ln = (nu * j as f64 - 1.0) * s.ln() + ((k + 1) * n - j) as f64 * lam.ln() - denom_ln;
            binomial(n, j) * ln.exp()
        })
        .sum()
}

/// Transform of the waiting-time density: `(λ / (s^ν + λ))^{nk}`.
pub fn waiting_time_pdf_transform(spec: &ProcessSpec, k: u64, s: f64) -> f64 {
    (spec.lambda / (s.powf(spec.nu) + spec.lambda)).powf((spec.n as u64 * k) as f64)
}

/// Transform of the waiting-time distribution function: density transform over `s`.
pub fn waiting_time_cdf_transform(spec: &ProcessSpec, k: u64, s: f64) -> f64 {
    waiting_time_pdf_transform(spec, k, s) / s
}

/// Transform of the renewal function: `λ s^{-ν-1}` (n = 1), `λ² s^{-ν-1} / (s^ν + 2λ)` (n = 2).
pub fn renewal_transform(spec: &ProcessSpec, s: f64) -> Result<f64> {
    let (nu, lam) = (spec.nu, spec.lambda);
    match spec.n {
        1 => Ok(lam * s.powf(-nu - 1.0)),
        2 => Ok(lam * lam * s.powf(-nu - 1.0) / (s.powf(nu) + 2.0 * lam)),
        n => Err(invalid(format!("renewal transform is available for n = 1 or 2, got {n}"))),
    }
}

/// Compare forward quadrature with the closed-form transforms for the pmf
/// at `k`, the waiting-time density and distribution at `k + 1`, the
/// interarrival density and (for `n ≤ 2`) the renewal function.
pub fn verify_transform_pairs(spec: &ProcessSpec, k: u64, s_grid: &[f64], tol: f64) -> Result<Vec<CheckReport>> {
    spec.validate()?;
    let policy = QuadPolicy::default();
    let c = Some(spec.nu);
    let mut out = Vec::new();
    let tag = format!("n={} nu={} lambda={}", spec.n, spec.nu, spec.lambda);
    for &s in s_grid {
        let q = try_laplace_forward(|t| models::pmf(spec, k, t), s, c, &policy)?;
        out.push(CheckReport::new(format!("laplace pmf k={k} {tag} s={s}"), q, pmf_transform(spec, k, s), tol));

        let kk = k + 1;
        let q = try_laplace_forward(|t| models::waiting_time_pdf(spec, kk, t), s, c, &policy)?;
        out.push(CheckReport::new(
            format!("laplace waiting-time density k={kk} {tag} s={s}"),
            q,
            waiting_time_pdf_transform(spec, kk, s),
            tol,
        ));

        let q = try_laplace_forward(|t| models::waiting_time_cdf(spec, kk, t), s, c, &policy)?;
        out.push(CheckReport::new(
            format!("laplace waiting-time distribution k={kk} {tag} s={s}"),
            q,
            waiting_time_cdf_transform(spec, kk, s),
            tol,
        ));

        let q = try_laplace_forward(|t| models::interarrival_pdf(spec, t), s, c, &policy)?;
        out.push(CheckReport::new(
            format!("laplace interarrival density {tag} s={s}"),
            q,
            waiting_time_pdf_transform(spec, 1, s),
            tol,
        ));

        if spec.n <= 2 {
            let q = try_laplace_forward(|t| models::renewal_mean(spec, t), s, c, &policy)?;
            out.push(CheckReport::new(
                format!("laplace renewal function {tag} s={s}"),
                q,
                renewal_transform(spec, s)?,
                tol,
            ));
        }
    }
    Ok(out)
}

/// The generic pair `∫_0^∞ e^{-st} t^{β-1} E^γ_{α,β}(ω t^α) dt = s^{αγ-β} / (s^α - ω)^γ`,
/// valid for `s > |ω|^{1/α}`.
pub fn gml_transform_pair(alpha: f64, beta: f64, gamma: f64, omega: f64, s: f64, tol: f64) -> Result<CheckReport> {
    if !(s.powf(alpha) > omega.abs()) {
        return Err(invalid(format!("need s^alpha > |omega|, got s={s}, alpha={alpha}, omega={omega}")));
    }
    let policy = QuadPolicy::default();
    let sp = SeriesPolicy::default();
    let q = try_laplace_forward(
        |t| {
            let e = gml_scaled(alpha, beta, gamma, omega * t.powf(alpha), &sp)?;
            Ok(e.times_ln((beta - 1.0) * t.ln()).eval().value)
        },
        s,
        Some(alpha.min(beta)),
        &policy,
    )?;
    let rhs = (s.powf(alpha) - omega).powf(-gamma) * s.powf(alpha * gamma - beta);
    Ok(CheckReport::new(
        format!("laplace gml alpha={alpha} beta={beta} gamma={gamma} omega={omega} s={s}"),
        q,
        rhs,
        tol,
    ))
}
