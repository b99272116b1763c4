//! Renewal simulation of the fractional Poisson processes.
//!
//! Model-1 interarrival times are drawn by inverting the Mittag-Leffler
//! survival function `Pr{U > t} = E_{ν,1}(-λ t^ν)`; a model-`n` interarrival
//! is the sum of `n` independent model-1 draws.
//!
//! Randomness comes from ChaCha8 seeded with `seed`, with path `i` on stream
//! `i`, so paths are reproducible individually and independent of how many
//! other paths are generated.

use std::io::Write;

use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::check::CheckReport;
use crate::error::{invalid, Error, Result};
use crate::models::{pmf, ProcessSpec};
use crate::special::gamma::ln_gamma;
use crate::special::{gml_scaled, SeriesPolicy};

/// Name of the generator recorded in output metadata.
pub const RNG_ALGORITHM: &str = "ChaCha8 (rand_chacha), seed_from_u64(seed), stream = path index";

/// Largest admissible quantile is `T_CAP / λ^{1/ν}`; beyond it the draw fails.
const T_CAP: f64 = 1e300;

/// Event times of one simulated realization on `(0, horizon]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EventPath {
    pub horizon: f64,
    pub events: Vec<f64>,
    /// RNG stream that produced the path.
    pub seed_stream: u64,
}

impl EventPath {
    /// Number of events in `(0, t]`.
    pub fn count_at(&self, t: f64) -> usize {
        self.events.partition_point(|&e| e <= t)
    }
}

/// Seed, number of paths and horizon of a simulation run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub seed: u64,
    pub n_paths: usize,
    pub horizon: f64,
}

impl SimConfig {
    pub fn new(seed: u64, n_paths: usize, horizon: f64) -> Result<Self> {
        let c = SimConfig { seed, n_paths, horizon };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_paths < 1 {
            return Err(invalid("n_paths must be at least 1"));
        }
        if !(self.horizon > 0.0) || !self.horizon.is_finite() {
            return Err(invalid(format!("horizon must be positive and finite, got {}", self.horizon)));
        }
        Ok(())
    }

    /// Generator for path `index`.
    pub fn rng_for_path(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        rng
    }
}

/// The root is only needed to about 1e-10, so series results at that
/// accuracy are accepted without a contour evaluation.
fn policy() -> SeriesPolicy {
    SeriesPolicy { accept_rel: 1e-11, ..SeriesPolicy::default() }
}

/// Distribution function of a model-1 interarrival in terms of `x = λ t^ν`:
/// `F = 1 - E_{ν,1}(-x) = x E_{ν,ν+1}(-x)`, written so that small `x` keeps
/// full relative accuracy.
fn interarrival_cdf_x(nu: f64, x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Ok(0.0);
    }
    if x < 1.0 {
        let e = gml_scaled(nu, nu + 1.0, 1.0, -x, &policy())?.times_ln(x.ln()).eval();
        Ok(e.value)
    } else {
        Ok(1.0 - survival_x(nu, x)?)
    }
}

/// `E_{ν,1}(-x)`.
fn survival_x(nu: f64, x: f64) -> Result<f64> {
    Ok(gml_scaled(nu, 1.0, 1.0, -x, &policy())?.eval().value)
}

/// `E_{ν,ν}(-x)`, so that `dF/dx = E_{ν,ν}(-x)/ν`.
fn density_factor_x(nu: f64, x: f64) -> Result<f64> {
    Ok(gml_scaled(nu, nu, 1.0, -x, &policy())?.eval().value)
}

/// Solve `F(x) = u` for `x = λ t^ν` (`0 < ν < 1`).
///
/// Newton's method on `y = ln x`, safeguarded by a bracket found by
/// stepping outward. Lower quantiles match `ln F`, upper quantiles match
/// `ln(1 - F)`, so both tails are resolved to full relative precision.
fn invert_x(nu: f64, u: f64, x_max: f64) -> Result<f64> {
    let upper = u >= 0.5;
    let target = if upper { (1.0 - u).ln() } else { u.ln() };
    // h(y) is increasing in y in both branches
    let h = |y: f64| -> Result<(f64, f64)> {
        let x = y.exp();
        let d = x * density_factor_x(nu, x)? / nu; // x dF/dx
        if upper {
            let s = survival_x(nu, x)?;
            if !(s > 0.0) {
                return Ok((f64::INFINITY, 1.0));
            }
            Ok((target - s.ln(), d / s))
        } else {
            let f = interarrival_cdf_x(nu, x)?;
            if !(f > 0.0) {
                return Ok((f64::NEG_INFINITY, 1.0));
            }
            Ok((f.ln() - target, d / f))
        }
    };
    let y_max = x_max.ln();
    // initial guess: F ≈ cx/(1+cx) with c = 1/Γ(1+ν) matches small x; in the
    // upper tail the power-law asymptote 1 - F ~ x^{-1}/Γ(1-ν) may lie further out
    let ln_odds = u.ln() - (-u).ln_1p();
    let mut y = ln_odds + ln_gamma(1.0 + nu);
    if upper {
        y = y.max(-target - ln_gamma(1.0 - nu));
    }
    y = y.min(y_max);
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    let (mut hv, mut dv) = h(y)?;
    for _ in 0..200 {
        if hv == 0.0 {
            return Ok(y.exp());
        }
        if hv > 0.0 {
            hi = hi.min(y);
        } else {
            lo = lo.max(y);
        }
        let mut next = if dv.is_finite() && dv > 0.0 && hv.is_finite() { y - hv / dv } else { f64::NAN };
        if !(next > lo && next < hi) {
            next = match (lo.is_finite(), hi.is_finite()) {
                (true, true) => 0.5 * (lo + hi),
                (true, false) => lo + 2.0,
                (false, true) => hi - 2.0,
                (false, false) => y + 1.0,
            };
        }
        if next > y_max {
            if lo >= y_max {
                return Err(Error::RootFindingFailure(format!(
                    "quantile for u={u} exceeds the bracket cap (nu={nu})"
                )));
            }
            next = 0.5 * (lo.max(y) + y_max);
        }
        let step = (next - y).abs();
        if step < 1e-11 * nu || (hi - lo) < 1e-11 * nu {
            // Newton converges quadratically, so this step is already below the tolerance
            return Ok(next.exp());
        }
        y = next;
        (hv, dv) = h(y)?;
    }
    Err(Error::RootFindingFailure(format!("no convergence for u={u} (nu={nu})")))
}

/// Quantile of a model-1 interarrival time at probability `u ∈ (0, 1)`.
pub fn interarrival_quantile(nu: f64, lambda: f64, u: f64) -> Result<f64> {
    ProcessSpec::new(1, nu, lambda)?;
    if !(u > 0.0 && u < 1.0) {
        return Err(invalid(format!("u must lie in (0, 1), got {u}")));
    }
    if nu == 1.0 {
        return Ok(-(-u).ln_1p() / lambda);
    }
    let x_max = T_CAP.powf(nu);
    let x = invert_x(nu, u, x_max)?;
    Ok((x / lambda).powf(1.0 / nu))
}

/// `Pr{U ≤ t}` for a model-1 interarrival time.
pub fn interarrival_cdf(nu: f64, lambda: f64, t: f64) -> Result<f64> {
    ProcessSpec::new(1, nu, lambda)?;
    if t <= 0.0 {
        return Ok(0.0);
    }
    if nu == 1.0 {
        return Ok(-(-lambda * t).exp_m1());
    }
    interarrival_cdf_x(nu, lambda * t.powf(nu))
}

/// Draw one model-1 interarrival time by inversion.
pub fn sample_interarrival_model1<R: Rng + ?Sized>(nu: f64, lambda: f64, rng: &mut R) -> Result<f64> {
    let u: f64 = rng.sample(Open01);
    interarrival_quantile(nu, lambda, u)
}

/// Draw a model-`n` interarrival time (sum of `n` model-1 draws).
pub fn sample_interarrival<R: Rng + ?Sized>(spec: &ProcessSpec, rng: &mut R) -> Result<f64> {
    let mut t = 0.0;
    for _ in 0..spec.n {
        t += sample_interarrival_model1(spec.nu, spec.lambda, rng)?;
    }
    Ok(t)
}

/// Simulate one path on `(0, horizon]`.
///
/// Each uniform is first compared with the interarrival distribution at the
/// remaining horizon; a draw that lands beyond it ends the path without
/// being inverted.
pub fn sample_path<R: Rng + ?Sized>(spec: &ProcessSpec, horizon: f64, stream: u64, rng: &mut R) -> Result<EventPath> {
    spec.validate()?;
    if !(horizon > 0.0) || !horizon.is_finite() {
        return Err(invalid(format!("horizon must be positive and finite, got {horizon}")));
    }
    let mut events = Vec::new();
    let mut t = 0.0;
    'outer: loop {
        for _ in 0..spec.n {
            let u: f64 = rng.sample(Open01);
            let remaining = horizon - t;
            if u >= interarrival_cdf(spec.nu, spec.lambda, remaining)? {
                break 'outer;
            }
            t += interarrival_quantile(spec.nu, spec.lambda, u)?;
        }
        if t > horizon {
            // rounding at the boundary
            break;
        }
        events.push(t);
    }
    Ok(EventPath { horizon, events, seed_stream: stream })
}

/// Simulate `config.n_paths` paths; path `i` uses RNG stream `i`.
///
/// Paths are generated on all available cores. The result does not depend
/// on the number of threads.
pub fn simulate_paths(spec: &ProcessSpec, config: &SimConfig) -> Result<Vec<EventPath>> {
    config.validate()?;
    spec.validate()?;
    let n = config.n_paths;
    let threads = std::thread::available_parallelism().map_or(1, |v| v.get()).min(n.div_ceil(256)).max(1);
    let chunk = n.div_ceil(threads);
    let one = |i: usize| sample_path(spec, config.horizon, i as u64, &mut config.rng_for_path(i as u64));
    if threads == 1 {
        return (0..n).map(one).collect();
    }
    let parts: Vec<Result<Vec<EventPath>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|c| {
                let range = c * chunk..((c + 1) * chunk).min(n);
                scope.spawn(move || range.map(one).collect::<Result<Vec<_>>>())
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("simulation thread panicked")).collect()
    });
    let mut out = Vec::with_capacity(n);
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

/// Fraction of paths with exactly `k` events in `(0, t]`, for `k = 0..=max`.
pub fn empirical_pmf(paths: &[EventPath], t: f64) -> Result<Vec<f64>> {
    if paths.is_empty() {
        return Err(invalid("no paths supplied"));
    }
    if paths.iter().any(|p| t > p.horizon) {
        return Err(invalid(format!("t = {t} exceeds the horizon of a path")));
    }
    let counts: Vec<usize> = paths.iter().map(|p| p.count_at(t)).collect();
    Ok(histogram(&counts))
}

fn histogram(counts: &[usize]) -> Vec<f64> {
    let max = counts.iter().copied().max().unwrap_or(0);
    let mut h = vec![0usize; max + 1];
    for &c in counts {
        h[c] += 1;
    }
    let n = counts.len() as f64;
    h.into_iter().map(|c| c as f64 / n).collect()
}

/// Mean count at `t` and its standard error.
pub fn empirical_mean(paths: &[EventPath], t: f64) -> (f64, f64) {
    let n = paths.len() as f64;
    let c: Vec<f64> = paths.iter().map(|p| p.count_at(t) as f64).collect();
    let mean = c.iter().sum::<f64>() / n;
    let var = c.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0).max(1.0);
    (mean, (var / n).sqrt())
}

/// Per-bin comparison of an empirical histogram from `n_samples` draws with
/// analytic probabilities. Bins with expected count below `min_expected` are
/// skipped. The report carries the largest standardized deviation as `lhs`
/// against `rhs = 0` with tolerance 3, so it passes when every bin lies
/// within three binomial standard errors.
pub fn compare_histogram(name: &str, empirical: &[f64], analytic: &[f64], n_samples: usize, min_expected: f64) -> CheckReport {
    let n = n_samples as f64;
    let mut worst = 0.0f64;
    for (k, &p) in analytic.iter().enumerate() {
        if p * n < min_expected {
            continue;
        }
        let q = empirical.get(k).copied().unwrap_or(0.0);
        let se = (p * (1.0 - p) / n).sqrt();
        worst = worst.max((q - p).abs() / se);
    }
    CheckReport::new(name, worst, 0.0, 3.0)
}

/// Simulate `config.n_paths` standard Poisson paths, relabel the count at
/// `horizon` as `floor(N/2)` and compare with the second-type pmf at `ν = 1`.
pub fn poisson_relabel_check(lambda: f64, config: &SimConfig) -> Result<CheckReport> {
    let one = ProcessSpec::new(1, 1.0, lambda)?;
    let two = ProcessSpec::new(2, 1.0, lambda)?;
    let paths = simulate_paths(&one, config)?;
    let t = config.horizon;
    let relabeled: Vec<usize> = paths.iter().map(|p| p.count_at(t) / 2).collect();
    let emp = histogram(&relabeled);
    let kmax = emp.len() + 5;
    let analytic: Vec<f64> = (0..kmax as u64).map(|k| pmf(&two, k, t)).collect::<Result<_>>()?;
    Ok(compare_histogram("poisson relabel", &emp, &analytic, config.n_paths, 25.0))
}

/// Write paths as JSON lines `{"seed_stream": i, "events": [...]}`.
pub fn write_paths_jsonl<W: Write>(paths: &[EventPath], mut w: W) -> std::io::Result<()> {
    #[derive(Serialize)]
    struct Line<'a> {
        seed_stream: u64,
        events: &'a [f64],
    }
    for p in paths {
        serde_json::to_writer(&mut w, &Line { seed_stream: p.seed_stream, events: &p.events })?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

/// One-sample Kolmogorov-Smirnov distance of `samples` against `cdf`.
pub fn ks_distance<F: FnMut(f64) -> f64>(samples: &[f64], mut cdf: F) -> f64 {
    let mut s = samples.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in s.iter().enumerate() {
        let f = cdf(x);
        d = d.max((f - i as f64 / n).abs()).max(((i + 1) as f64 / n - f).abs());
    }
    d
}

/// Two-sample Kolmogorov-Smirnov distance.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = 0.0f64;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}
