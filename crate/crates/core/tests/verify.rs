//! Cross-checks: forward Laplace transforms, subordination, Caputo residuals.

use approx::assert_relative_eq;
use fracpois::error::Error;
use fracpois::models::{self, ProcessSpec};
use fracpois::quad::QuadPolicy;
use fracpois::special;
use fracpois::verify::*;

fn spec(n: u32, nu: f64, lambda: f64) -> ProcessSpec {
    ProcessSpec::new(n, nu, lambda).unwrap()
}

fn pol() -> QuadPolicy {
    QuadPolicy::default()
}

#[test]
fn forward_transform_examples() {
    assert_relative_eq!(laplace_forward(|_| 1.0, 2.0, &pol()).unwrap(), 0.5, max_relative = 1e-10);
    let s1 = spec(1, 0.5, 1.0);
    let q = try_laplace_forward(|t| models::interarrival_pdf(&s1, t), 1.0, Some(0.5), &pol()).unwrap();
    assert!((q - 0.5).abs() < 1e-6, "{q}");
    let s2 = spec(2, 0.5, 1.0);
    let q = try_laplace_forward(|t| models::waiting_time_pdf(&s2, 1, t), 1.0, Some(0.5), &pol()).unwrap();
    assert!((q - 0.25).abs() < 1e-6, "{q}");
    assert!(laplace_forward(|_| 1.0, 0.0, &pol()).is_err());
}

#[test]
fn rational_transforms() {
    let s = spec(1, 0.5, 1.0);
    // λ^k s^{ν-1} / (s^ν + λ)^{k+1} at k = 2, s = 4
    assert_relative_eq!(pmf_transform(&s, 2, 4.0), 0.5 / 27.0, max_relative = 1e-14);
    let q = try_laplace_forward(|t| models::pmf(&s, 2, t), 4.0, Some(0.5), &pol()).unwrap();
    assert!((q - 0.5 / 27.0).abs() < 1e-6);

    let two = spec(2, 1.0, 1.0);
    assert_relative_eq!(pmf_transform(&two, 0, 1.0), 0.75, max_relative = 1e-14);
    let q = laplace_forward(|t| (1.0 + t) * (-t).exp(), 1.0, &pol()).unwrap();
    assert!((q - 0.75).abs() < 1e-10);
    let q = try_laplace_forward(|t| models::pmf(&two, 0, t), 1.0, Some(1.0), &pol()).unwrap();
    assert!((q - 0.75).abs() < 1e-6);

    let r = spec(2, 0.5, 1.0);
    let want = 2f64.powf(-1.5) / (2f64.sqrt() + 2.0);
    assert_relative_eq!(renewal_transform(&r, 2.0).unwrap(), want, max_relative = 1e-14);
    let q = try_laplace_forward(|t| models::renewal_mean(&r, t), 2.0, Some(0.5), &pol()).unwrap();
    assert!((q - want).abs() < 1e-6);
    assert!(renewal_transform(&spec(3, 0.5, 1.0), 2.0).is_err());
}

#[test]
fn transform_pair_reports() {
    for sp in [spec(1, 0.5, 1.0), spec(2, 0.7, 1.0), spec(3, 0.6, 0.5)] {
        let reports = verify_transform_pairs(&sp, 2, &[1.5, 4.0], 1e-6).unwrap();
        let per_s = if sp.n <= 2 { 5 } else { 4 };
        assert_eq!(reports.len(), 2 * per_s);
        for r in &reports {
            assert!(r.pass, "{r:?}");
        }
    }
    let r = gml_transform_pair(0.6, 1.4, 2.5, -1.0, 2.0, 1e-6).unwrap();
    assert!(r.pass, "{r:?}");
    assert!(gml_transform_pair(0.5, 1.0, 1.0, 4.0, 2.0, 1e-6).is_err());
}

#[test]
fn subordination_examples() {
    let p = pol();
    let a = subordination_pmf(0, 0.5, 1.0, 1.0, &p).unwrap();
    assert!((a - models::pmf(&spec(1, 0.5, 1.0), 0, 1.0).unwrap()).abs() < 1e-7);
    let b = subordination_pmf(3, 0.5, 1.0, 2.0, &p).unwrap();
    assert!((b - models::pmf(&spec(1, 0.5, 1.0), 3, 2.0).unwrap()).abs() < 1e-7);
    for nu in [0.3, 0.7] {
        let total: f64 = (0..60).map(|k| subordination_pmf(k, nu, 1.0, 1.0, &p).unwrap()).sum();
        let tail = 1.0 - models::waiting_time_cdf(&spec(1, nu, 1.0), 60, 1.0).unwrap();
        assert!((total - tail).abs() < 1e-7, "nu={nu}: {total} vs {tail}");
    }
    assert!(subordination_pmf(0, 1.0, 1.0, 1.0, &p).is_err());
    assert!(subordination_pmf(0, 0.5, 1.0, 0.0, &p).is_err());
}

#[test]
fn subordination_agrees_with_series() {
    let p = pol();
    for nu in [0.3, 0.5, 0.7] {
        for t in [0.5, 1.0, 2.0] {
            for k in 0..=5 {
                let q = subordination_pmf(k, nu, 1.0, t, &p).unwrap();
                let g = models::pmf(&spec(1, nu, 1.0), k, t).unwrap();
                assert!((q - g).abs() < 1e-7, "nu={nu} t={t} k={k}: {q} vs {g}");
            }
        }
    }
}

#[test]
fn gml_as_laplace_transform() {
    let p = pol();
    let r = gml_laplace_identity(0, 0.5, 1.0, 1e-7, &p).unwrap();
    assert!(r.pass, "{r:?}");
    assert_relative_eq!(r.rhs, 0.427_583_576_155_807, max_relative = 1e-12);
    assert!(gml_laplace_identity(2, 0.5, 1.0, 1e-7, &p).unwrap().pass);
    let r = gml_laplace_identity(1, 0.3, 0.5, 1e-6, &p).unwrap();
    assert!(r.pass, "{r:?}");
    let direct = special::gml(&special::MLSpec::new(0.3, 1.3, 2.0).unwrap(), -0.5).unwrap().value;
    assert_relative_eq!(r.rhs, direct, max_relative = 1e-12);
}

#[test]
fn poisson_equation_residual() {
    // with ν = 1 the derivative is a central difference
    let r = caputo_refinement(&spec(1, 1.0, 1.0), 1, &GridSpec::linear(0.5, 1.0, 10_001).unwrap()).unwrap();
    assert!(r.residuals[0] < 1e-6, "{:?}", r.residuals);
}

#[test]
fn fractional_residuals_shrink() {
    let grid = GridSpec::linear(0.5, 1.0, 21).unwrap();
    for (n, k) in [(1, 0), (2, 1), (3, 2)] {
        let s = spec(n, 0.5, 1.0);
        let r = caputo_refinement(&s, k, &grid).unwrap();
        assert_eq!(r.residuals.len(), 4);
        assert_eq!(r.ratios.len(), 3);
        for w in r.steps.windows(2) {
            assert_relative_eq!(w[1], w[0] / 2.0, max_relative = 1e-14);
        }
        let rep = caputo_residual(&s, k, &grid).unwrap();
        assert!(rep.pass && rep.lhs <= MAX_RATIO, "n={n} k={k}: {:?}", r);
    }
}

#[test]
fn coarse_grid_is_inconclusive() {
    let grid = GridSpec::linear(0.9, 1.0, 4).unwrap();
    match caputo_residual(&spec(1, 0.5, 1.0), 0, &grid) {
        Err(Error::StepTooCoarse(_)) => {}
        other => panic!("expected StepTooCoarse, got {other:?}"),
    }
}

#[test]
fn grid_nodes() {
    let g = GridSpec::logarithmic(1e-3, 1e3, 7).unwrap();
    let nodes = g.nodes();
    assert_eq!(nodes.len(), 7);
    assert_relative_eq!(nodes[1], 1e-2, max_relative = 1e-12);
    assert_relative_eq!(nodes[6], 1e3, max_relative = 1e-12);
    assert!(GridSpec::linear(0.0, 1.0, 5).is_err());
    assert!(GridSpec::linear(1.0, 1.0, 5).is_err());
    assert!(GridSpec::linear(0.1, 1.0, 1).is_err());
}

#[test]
fn default_suite_passes() {
    let reports = run_suite(&[], None).unwrap();
    assert!(reports.len() > 100);
    let failed: Vec<_> = reports.iter().filter(|r| !r.pass).collect();
    assert!(failed.is_empty(), "{failed:#?}");
    assert!(run_suite(&["no-such-check".to_string()], None).is_err());
    for name in check_names() {
        assert!(!name.is_empty());
    }
}

#[test]
fn tolerance_override() {
    let strict = run_check("gen-identity", Some(0.0)).unwrap();
    assert!(strict.iter().any(|r| !r.pass));
    assert!(strict.iter().all(|r| r.tol == 0.0));
    assert!(run_check("gen", None).unwrap().iter().all(|r| r.pass));
}
