//! The named verification suite behind `fracpois verify`.
//!
//! Every check returns one or more [`CheckReport`]s comparing two
//! independently computed values. Checks are side-effect free and can be run
//! in any order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{caputo_residual, gml_laplace_identity, gml_transform_pair, subordination_pmf, verify_transform_pairs, GridSpec};
use crate::check::CheckReport;
use crate::error::{invalid, Result};
use crate::models::{self, ProcessSpec};
use crate::quad::QuadPolicy;
use crate::special::gamma::{binomial, gamma, ln_gamma};
use crate::special::{
    gml_scaled, ml_cauchy_integral, ml_large_t_approx, ml_neg_integral, ml_nu_nu_neg_integral, ml_series,
    ml2_neg_integral, wright_neg_integral, wright_series, SeriesPolicy,
};

/// A named entry of the suite.
pub struct Check {
    pub name: &'static str,
    pub aliases: &'static [&'static str],
    pub summary: &'static str,
    pub run: fn() -> Result<Vec<CheckReport>>,
}

pub const CHECKS: &[Check] = &[
    Check {
        name: "closed-form",
        aliases: &[],
        summary: "E^{k+1}_{1,k+1}(-x) = e^{-x}/k!",
        run: closed_form,
    },
    Check {
        name: "gen-identity",
        aliases: &["gen"],
        summary: "x^n E^m_{ν,nν+z}(-x) + x^{n+1} E^m_{ν,(n+1)ν+z}(-x) = x^n E^{m-1}_{ν,nν+z}(-x)",
        run: gen_identity,
    },
    Check {
        name: "normalization",
        aliases: &[],
        summary: "pmf sums to one",
        run: normalization,
    },
    Check {
        name: "telescoping",
        aliases: &["fk8"],
        summary: "Pr{T_k ≤ t} - Pr{T_{k+1} ≤ t} = Pr{N(t) = k}",
        run: telescoping,
    },
    Check {
        name: "decomposition",
        aliases: &[],
        summary: "order-n pmf equals a block of n first-type pmfs",
        run: decomposition,
    },
    Check {
        name: "laplace-pairs",
        aliases: &[],
        summary: "forward quadrature against closed-form transforms",
        run: laplace_pairs,
    },
    Check {
        name: "gml-laplace-pair",
        aliases: &[],
        summary: "transform of t^{β-1} E^γ_{α,β}(ω t^α)",
        run: gml_laplace_pair,
    },
    Check {
        name: "subordination",
        aliases: &[],
        summary: "pmf as a Poisson law mixed over the M-Wright time",
        run: subordination,
    },
    Check {
        name: "gml-laplace",
        aliases: &[],
        summary: "E^{k+1}_{ν,νk+1}(-λ) as a transform of y^k M_ν(y)",
        run: gml_laplace,
    },
    Check {
        name: "caputo",
        aliases: &[],
        summary: "residual of the governing equations shrinks under refinement",
        run: caputo,
    },
    Check {
        name: "route-agreement",
        aliases: &[],
        summary: "series against the real-line integral representations",
        run: route_agreement,
    },
    Check {
        name: "cauchy-form",
        aliases: &[],
        summary: "two integral forms of E_{ν,1}(-t^ν)",
        run: cauchy_form,
    },
    Check {
        name: "asymptotics",
        aliases: &[],
        summary: "large-t approximations of E_{ν,β}(-t^ν) and interarrival tails",
        run: asymptotics,
    },
    Check {
        name: "near-origin",
        aliases: &[],
        summary: "interarrival densities as t → 0",
        run: near_origin,
    },
    Check {
        name: "pgf",
        aliases: &[],
        summary: "generating functions against pmf sums",
        run: pgf_identities,
    },
    Check {
        name: "factorial-moments",
        aliases: &[],
        summary: "closed-form factorial moments against pmf sums",
        run: factorial_moments,
    },
    Check {
        name: "combinatorial",
        aliases: &[],
        summary: "C(j-1,k-1)(-1)^k = Σ_{m=k}^{j} C(j,m)(-1)^m in integers",
        run: combinatorial,
    },
    Check {
        name: "odd-probability",
        aliases: &[],
        summary: "mass on odd counts",
        run: odd_probability,
    },
    Check {
        name: "renewal-forms",
        aliases: &[],
        summary: "two forms of the second-type renewal function",
        run: renewal_forms,
    },
    Check {
        name: "nu1-collapse",
        aliases: &[],
        summary: "ν = 1 reduces to Poisson and Gamma laws",
        run: nu1_collapse,
    },
];

/// Canonical check names in suite order.
pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.name).collect()
}

fn lookup(name: &str) -> Option<&'static Check> {
    CHECKS.iter().find(|c| c.name == name || c.aliases.contains(&name))
}

/// Run one check by name or alias. `tol` replaces every default tolerance.
pub fn run_check(name: &str, tol: Option<f64>) -> Result<Vec<CheckReport>> {
    let check = lookup(name).ok_or_else(|| {
        invalid(format!("unknown check '{name}'; available: {}", check_names().join(", ")))
    })?;
    if let Some(t) = tol {
        if !(t >= 0.0) {
            return Err(invalid(format!("tolerance must be nonnegative, got {t}")));
        }
    }
    let reports = (check.run)()?;
    Ok(match tol {
        Some(t) => reports.into_iter().map(|r| CheckReport::new(r.name, r.lhs, r.rhs, t)).collect(),
        None => reports,
    })
}

/// Run the named checks, or the whole suite when `only` is empty.
pub fn run_suite(only: &[String], tol: Option<f64>) -> Result<Vec<CheckReport>> {
    let names: Vec<String> = if only.is_empty() {
        check_names().into_iter().map(String::from).collect()
    } else {
        for n in only {
            if lookup(n).is_none() {
                return Err(invalid(format!("unknown check '{n}'; available: {}", check_names().join(", "))));
            }
        }
        only.to_vec()
    };
    let mut out = Vec::new();
    for n in &names {
        out.extend(run_check(n, tol)?);
    }
    Ok(out)
}

fn sp() -> SeriesPolicy {
    SeriesPolicy::default()
}

fn spec(n: u32, nu: f64, lambda: f64) -> ProcessSpec {
    ProcessSpec { n, nu, lambda }
}

/// `x^p E^γ_{α,β}(-x)` through the production dispatcher.
fn weighted(alpha: f64, beta: f64, gamma: f64, x: f64, p: f64) -> Result<f64> {
    if gamma == 0.0 {
        return Ok(x.powf(p) / self::gamma(beta));
    }
    Ok(gml_scaled(alpha, beta, gamma, -x, &sp())?.times_ln(p * x.ln()).eval().value)
}

pub fn closed_form() -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for k in 0..=10u64 {
        let kf = k as f64;
        for x in [0.01, 0.1, 0.5, 1.0, 2.5, 5.0, 7.5, 10.0] {
            let v = gml_scaled(1.0, kf + 1.0, kf + 1.0, -x, &sp())?.eval().value;
            let exact = (-x - ln_gamma(kf + 1.0)).exp();
            out.push(CheckReport::new(format!("closed form k={k} x={x}"), v, exact, 1e-12));
        }
    }
    Ok(out)
}

/// 100 parameter sets drawn from a fixed seed.
pub fn gen_identity() -> Result<Vec<CheckReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0067_656e);
    let mut out = Vec::new();
    for _ in 0..100 {
        let nu: f64 = rng.random_range(0.2..=1.0);
        let n = rng.random_range(0..4u32) as f64;
        let m = rng.random_range(1..6u32) as f64;
        let z: f64 = rng.random_range(0.1..2.0);
        let x: f64 = rng.random_range(0.05..5.0);
        let lhs = weighted(nu, n * nu + z, m, x, n)? + weighted(nu, (n + 1.0) * nu + z, m, x, n + 1.0)?;
        let rhs = weighted(nu, n * nu + z, m - 1.0, x, n)?;
        out.push(CheckReport::new(
            format!("gen identity nu={nu:.6} n={n} m={m} z={z:.6} x={x:.6}"),
            lhs,
            rhs,
            1e-10,
        ));
    }
    Ok(out)
}

pub fn normalization() -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for n in 1..=3 {
        for nu in [0.3, 0.5, 0.7, 1.0] {
            for x in [0.5f64, 2.0, 5.0] {
                let s = spec(n, nu, 1.0);
                let t = x.powf(1.0 / nu);
                let k_max = models::truncation_index(&s, t, 1e-10)?;
                let mut total = 0.0;
                for k in 0..=k_max {
                    total += models::pmf(&s, k, t)?;
                }
                out.push(CheckReport::new(
                    format!("normalization n={n} nu={nu} lambda*t^nu={x} K={k_max}"),
                    total,
                    1.0,
                    1e-8,
                ));
            }
        }
    }
    Ok(out)
}

pub fn telescoping() -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for n in 1..=3 {
        for nu in [0.5, 0.8, 1.0] {
            let s = spec(n, nu, 1.0);
            for t in [0.5, 1.0, 2.0] {
                for k in 0..=4u64 {
                    let upper = if k == 0 { 1.0 } else { models::waiting_time_cdf(&s, k, t)? };
                    let lhs = upper - models::waiting_time_cdf(&s, k + 1, t)?;
                    let rhs = models::pmf(&s, k, t)?;
                    out.push(CheckReport::new(format!("telescoping n={n} nu={nu} t={t} k={k}"), lhs, rhs, 1e-10));
                }
            }
        }
    }
    Ok(out)
}

pub fn decomposition() -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for n in 2..=3 {
        for nu in [0.4, 0.6, 1.0] {
            let s = spec(n, nu, 1.0);
            for t in [0.5, 1.0, 2.0] {
                for k in 0..=3u64 {
                    let mut r = models::pmf_decomposition_check(&s, k, t)?;
                    r.name = format!("{} nu={nu}", r.name);
                    out.push(r);
                }
            }
        }
    }
    Ok(out)
}

pub const LAPLACE_S: [f64; 5] = [1.5, 2.0, 3.0, 5.0, 10.0];

pub fn laplace_pairs() -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for (n, nu, lambda, k) in [(1, 0.5, 1.0, 2), (1, 0.8, 0.5, 0), (2, 0.5, 1.0, 1), (2, 0.7, 1.0, 0), (3, 0.6, 1.0, 1)] {
        out.extend(verify_transform_pairs(&spec(n, nu, lambda), k, &LAPLACE_S, 1e-6)?);
    }
    Ok(out)
}

pub fn gml_laplace_pair() -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for (alpha, beta, gamma, omega) in [(0.5, 1.5, 2.0, -1.0f64), (0.7, 0.9, 1.5, 0.5), (0.9, 2.0, 3.0, -2.0), (0.3, 1.0, 1.0, -1.0)] {
        for s in LAPLACE_S {
            if s.powf(alpha) > omega.abs() {
                out.push(gml_transform_pair(alpha, beta, gamma, omega, s, 1e-6)?);
            }
        }
    }
    Ok(out)
}

pub fn subordination() -> Result<Vec<CheckReport>> {
    let policy = QuadPolicy::default().with_abs_tol(1e-11);
    let mut out = Vec::new();
    for nu in [0.3, 0.5, 0.7] {
        let s = spec(1, nu, 1.0);
        for t in [0.5, 1.0, 2.0] {
            for k in 0..=5u64 {
                let q = subordination_pmf(k, nu, 1.0, t, &policy)?;
                let p = models::pmf(&s, k, t)?;
                out.push(CheckReport::new(format!("subordination nu={nu} t={t} k={k}"), q, p, 1e-7));
            }
        }
    }
    Ok(out)
}

pub fn gml_laplace() -> Result<Vec<CheckReport>> {
    let policy = QuadPolicy::default().with_abs_tol(1e-11);
    let mut out = Vec::new();
    for (k, nu, lambda, tol) in [(0, 0.5, 1.0, 1e-7), (2, 0.5, 1.0, 1e-7), (1, 0.3, 0.5, 1e-6), (3, 0.7, 2.0, 1e-7)] {
        out.push(gml_laplace_identity(k, nu, lambda, tol, &policy)?);
    }
    Ok(out)
}

/// Grid used by the refinement check: residual measured on `[0.5, 1]`.
pub fn caputo_grid() -> GridSpec {
    GridSpec::linear(0.5, 1.0, 21).expect("static grid")
}

pub fn caputo() -> Result<Vec<CheckReport>> {
    let grid = caputo_grid();
    let mut out = Vec::new();
    for n in 1..=3 {
        for nu in [0.5, 0.75] {
            for k in 0..=2u64 {
                out.push(caputo_residual(&spec(n, nu, 1.0), k, &grid)?);
            }
        }
    }
    Ok(out)
}

pub fn route_agreement() -> Result<Vec<CheckReport>> {
    let policy = QuadPolicy::default().with_abs_tol(1e-12);
    let mut out = Vec::new();
    for nu in [0.3, 0.5, 0.7, 0.9] {
        for t in [0.1f64, 1.0, 5.0] {
            let x = t.powf(nu);
            let series = ml_series(nu, 1.0, -x, &sp())?;
            out.push(CheckReport::new(
                format!("E_(nu,1) integral nu={nu} t={t}"),
                ml_neg_integral(nu, t, &policy)?,
                series,
                1e-8,
            ));
            for beta in [0.5 * nu, nu, 1.0, 0.5 * (1.0 + nu) + 0.25] {
                let series = ml_series(nu, beta, -x, &sp())?;
                out.push(CheckReport::new(
                    format!("E_(nu,beta) integral nu={nu} beta={beta} t={t}"),
                    ml2_neg_integral(nu, beta, t, &policy)?,
                    series,
                    1e-8,
                ));
            }
            out.push(CheckReport::new(
                format!("E_(nu,nu) integral nu={nu} t={t}"),
                ml_nu_nu_neg_integral(nu, t, &policy)?,
                ml_series(nu, nu, -x, &sp())?,
                1e-8,
            ));
        }
    }
    for (nu, beta, t) in [(0.5, 0.5, 1.0), (0.3, 0.7, 2.0), (0.4, 1.5, 1.0), (0.2, 0.3, 3.0)] {
        out.push(CheckReport::new(
            format!("Wright integral nu={nu} beta={beta} t={t}"),
            wright_neg_integral(nu, beta, t, &policy)?,
            wright_series(nu, beta, -t.powf(nu), &sp())?,
            1e-6,
        ));
    }
    Ok(out)
}

pub fn cauchy_form() -> Result<Vec<CheckReport>> {
    let policy = QuadPolicy::default().with_abs_tol(1e-12);
    let mut out = Vec::new();
    for nu in [0.4, 0.6] {
        for t in [0.1, 1.0, 5.0, 20.0] {
            out.push(CheckReport::new(
                format!("cauchy form nu={nu} t={t}"),
                ml_cauchy_integral(nu, t, &policy)?,
                ml_neg_integral(nu, t, &policy)?,
                1e-8,
            ));
        }
    }
    Ok(out)
}

/// Ratio check: passes when `|ratio - 1| ≤ tol`.
fn ratio(name: String, value: f64, reference: f64, tol: f64) -> CheckReport {
    CheckReport::new(name, value / reference, 1.0, tol)
}

pub fn asymptotics() -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for (nu, beta) in [(0.5, 1.0), (0.7, 1.0), (0.5, 0.5), (0.7, 0.7), (0.5, 0.8)] {
        for (t, tol) in [(100.0, 0.10), (1000.0, 0.03)] {
            let exact = gml_scaled(nu, beta, 1.0, -f64::powf(t, nu), &sp())?.eval().value;
            out.push(ratio(
                format!("large-t ratio nu={nu} beta={beta} t={t}"),
                exact,
                ml_large_t_approx(nu, beta, t),
                tol,
            ));
        }
    }
    for n in 1..=2 {
        let s = spec(n, 0.5, 1.0);
        let t = 200.0;
        out.push(ratio(
            format!("interarrival tail ratio n={n} nu=0.5 t={t}"),
            models::interarrival_pdf(&s, t)?,
            models::interarrival_tail_asymptote(&s, t)?.value,
            0.05,
        ));
    }
    Ok(out)
}

pub fn near_origin() -> Result<Vec<CheckReport>> {
    let t: f64 = 1e-6;
    let lambda = 1.0;
    let mut out = Vec::new();
    for nu in [0.3, 0.5, 0.7] {
        let one = spec(1, nu, lambda);
        let lead = lambda * t.powf(nu - 1.0) / gamma(nu);
        out.push(ratio(
            format!("first-type density near origin nu={nu} t={t}"),
            models::interarrival_pdf(&one, t)?,
            lead,
            0.05,
        ));
        let two = spec(2, nu, lambda);
        let f = models::interarrival_pdf(&two, t)?;
        let lead = lambda * lambda * t.powf(2.0 * nu - 1.0) / gamma(2.0 * nu);
        out.push(ratio(format!("second-type density near origin nu={nu} t={t}"), f, lead, 0.05));
        if nu < 0.5 {
            // divergent: the density keeps growing toward the origin
            let f_later = models::interarrival_pdf(&two, 1e3 * t)?;
            out.push(CheckReport::new(
                format!("second-type density diverges nu={nu}: f(1e-3)/f(1e-6)"),
                f_later / f,
                0.0,
                0.5,
            ));
        } else if nu == 0.5 {
            out.push(CheckReport::new(format!("second-type density tends to lambda^2 nu={nu}"), f, lambda * lambda, 1e-2));
        } else {
            out.push(CheckReport::new(format!("second-type density vanishes nu={nu}"), f, 0.0, 1e-2));
        }
    }
    Ok(out)
}

pub fn pgf_identities() -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for nu in [0.5, 0.8] {
        for x in [0.5f64, 2.0, 5.0, 10.0] {
            for n in 1..=2 {
                let s = spec(n, nu, 1.0);
                let t = x.powf(1.0 / nu);
                let k_max = models::truncation_index(&s, t, 1e-15)?;
                for u in [0.1, 0.5, 0.9] {
                    let mut sum = 0.0;
                    let mut w = 1.0;
                    for k in 0..=k_max {
                        sum += w * models::pmf(&s, k, t)?;
                        w *= u;
                    }
                    out.push(CheckReport::new(
                        format!("pgf series n={n} nu={nu} x={x} u={u}"),
                        models::pgf(&s, u, t)?,
                        sum,
                        1e-9,
                    ));
                }
                out.push(CheckReport::new(format!("pgf at u=1 n={n} nu={nu} x={x}"), models::pgf(&s, 1.0, t)?, 1.0, 1e-13));
            }
        }
    }
    Ok(out)
}

pub fn factorial_moments() -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for nu in [0.5, 0.8, 1.0] {
        let s = spec(1, nu, 1.0);
        for t in [0.5, 1.0, 2.0] {
            let k_max = models::truncation_index(&s, t, 1e-16)? + 20;
            let p: Vec<f64> = (0..=k_max).map(|k| models::pmf(&s, k, t)).collect::<Result<_>>()?;
            for r in 1..=3u32 {
                let sum: f64 = p
                    .iter()
                    .enumerate()
                    .map(|(k, pk)| (0..r).map(|i| k as f64 - i as f64).product::<f64>() * pk)
                    .sum();
                out.push(CheckReport::new(
                    format!("factorial moment r={r} nu={nu} t={t}"),
                    models::factorial_moment(&s, r, t)?,
                    sum,
                    1e-7,
                ));
            }
        }
    }
    Ok(out)
}

fn binomial_exact(n: i128, k: i128) -> i128 {
    if k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i128, |acc, i| acc * (n - i) / (i + 1))
}

/// Exact over all `1 ≤ k ≤ j ≤ 30`; reports the number of mismatches.
pub fn combinatorial() -> Result<Vec<CheckReport>> {
    let mut mismatches = 0u32;
    for j in 1..=30i128 {
        for k in 1..=j {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let lhs = binomial_exact(j - 1, k - 1) * sign;
            let rhs: i128 = (k..=j).map(|m| binomial_exact(j, m) * if m % 2 == 0 { 1 } else { -1 }).sum();
            if lhs != rhs {
                mismatches += 1;
            }
        }
    }
    // sanity of the float binomial used elsewhere against the exact one
    let float_ok = (0..=30u64).all(|k| binomial(30, k) == binomial_exact(30, k as i128) as f64);
    Ok(vec![
        CheckReport::new("combinatorial identity mismatches, j,k <= 30", mismatches as f64, 0.0, 0.0),
        CheckReport::new("binomial(30, k) exact in f64", if float_ok { 0.0 } else { 1.0 }, 0.0, 0.0),
    ])
}

pub fn odd_probability() -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for nu in [0.5, 0.8, 1.0] {
        let s = spec(1, nu, 1.0);
        for t in [0.5, 1.0, 2.0] {
            let k_max = models::truncation_index(&s, t, 1e-15)?;
            let mut sum = 0.0;
            let mut k = 1;
            while k <= k_max {
                sum += models::pmf(&s, k, t)?;
                k += 2;
            }
            out.push(CheckReport::new(
                format!("odd probability nu={nu} t={t}"),
                models::odd_probability_sum(&s, t)?,
                sum,
                1e-9,
            ));
        }
    }
    Ok(out)
}

pub fn renewal_forms() -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for nu in [0.5, 0.7, 1.0] {
        let s = spec(2, nu, 1.0);
        for t in [0.5, 1.0, 2.0, 5.0] {
            out.push(CheckReport::new(
                format!("second-type renewal forms nu={nu} t={t}"),
                models::renewal_mean(&s, t)?,
                models::renewal_mean_second_type_alt(&s, t)?,
                1e-10,
            ));
        }
    }
    Ok(out)
}

pub fn nu1_collapse() -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for lambda in [0.5, 1.0, 3.0] {
        for t in [0.5, 1.0, 2.0] {
            let lt: f64 = lambda * t;
            let poisson = |k: u64| (k as f64 * lt.ln() - lt - ln_gamma(k as f64 + 1.0)).exp();
            for k in 0..=6u64 {
                out.push(CheckReport::new(
                    format!("poisson collapse lambda={lambda} t={t} k={k}"),
                    models::pmf(&spec(1, 1.0, lambda), k, t)?,
                    poisson(k),
                    1e-12,
                ));
                out.push(CheckReport::new(
                    format!("second-type collapse lambda={lambda} t={t} k={k}"),
                    models::pmf(&spec(2, 1.0, lambda), k, t)?,
                    poisson(2 * k) + poisson(2 * k + 1),
                    1e-12,
                ));
                if k >= 1 {
                    let a = (2 * k) as f64;
                    let gamma_density = (a * lambda.ln() + (a - 1.0) * t.ln() - lt - ln_gamma(a)).exp();
                    out.push(CheckReport::new(
                        format!("second-type waiting time is Gamma lambda={lambda} t={t} k={k}"),
                        models::waiting_time_pdf(&spec(2, 1.0, lambda), k, t)?,
                        gamma_density,
                        1e-12,
                    ));
                }
            }
        }
    }
    Ok(out)
}
