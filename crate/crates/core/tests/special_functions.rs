//! Mittag-Leffler, Prabhakar and Wright functions against high-precision
//! reference values (tests/oracles/oracles.py) and closed forms.

use approx::assert_relative_eq;
use fracpois::quad::QuadPolicy;
use fracpois::special::{
    self, gml_series, gml_series_eval, ml2_neg_integral, ml_cauchy_integral, ml_large_t_approx, ml_neg_integral, ml_nu_nu_neg_integral,
    ml_series, wright_neg_integral, wright_series, MLSpec, Route, SeriesPolicy,
};
use fracpois::Error;
use proptest::prelude::*;

fn sp() -> SeriesPolicy {
    SeriesPolicy::default()
}

fn qp() -> QuadPolicy {
    QuadPolicy::default().with_abs_tol(1e-12)
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    let d = (a - b).abs();
    d <= tol || d <= tol * a.abs().max(b.abs())
}

#[test]
fn series_trivial_values() {
    assert_eq!(gml_series(&MLSpec::new(1.0, 1.0, 1.0).unwrap(), 0.0, &sp()).unwrap(), 1.0);
    assert_relative_eq!(ml_series(1.0, 1.0, 1.0, &sp()).unwrap(), std::f64::consts::E, max_relative = 1e-15);
    let x = 0.5f64;
    assert_relative_eq!(ml_series(1.0, 2.0, x, &sp()).unwrap(), (x.exp() - 1.0) / x, max_relative = 1e-15);
    assert_relative_eq!(
        gml_series(&MLSpec::new(1.0, 3.0, 3.0).unwrap(), -1.0, &sp()).unwrap(),
        0.183_939_720_585_721_16,
        max_relative = 1e-14
    );
    assert_relative_eq!(wright_series(-0.5, 0.5, 0.0, &sp()).unwrap(), 1.0 / std::f64::consts::PI.sqrt(), max_relative = 1e-15);
}

#[test]
fn series_against_reference_values() {
    let cases: [(f64, f64, f64, f64, f64); 8] = [
        (0.7, 1.4, 2.5, -0.8, 0.213_432_653_641_222_96),
        (0.5, 1.0, 1.0, -1.0, 0.427_583_576_155_807),
        (0.5, 0.5, 1.0, -1.0, 0.136_606_007_391_949_28),
        (0.7, 3.1, 4.0, -2.0, 0.018_310_423_123_608_81),
        (0.9, 4.5, 5.0, -4.0, 0.000_615_198_348_946_053),
        (0.6, 2.8, 3.0, -2.5, 0.029_519_584_854_515_396),
        (0.3, 1.3, 2.0, -3.0, 0.057_477_721_405_813_78),
        (0.5, 1.3, 2.0, -3.0, 0.040_630_744_474_651_11),
    ];
    for (a, b, g, x, want) in cases {
        let spec = MLSpec::new(a, b, g).unwrap();
        match gml_series(&spec, x, &sp()) {
            Ok(s) => {
                // the series is only as good as its own error estimate says
                let est = gml_series_eval(&spec, x, &sp()).unwrap().err;
                assert!((s - want).abs() <= 1e-12f64.max(10.0 * est), "series E^{g}_({a},{b})({x}) = {s}, want {want}");
            }
            // x^{1/α} ≈ 39 at α = 0.3: the raw series cannot be trusted and says so
            Err(Error::Cancellation { ratio, .. }) => assert!(a < 0.5 && ratio > 1e10),
            Err(e) => panic!("{e}"),
        }
        let d = special::gml(&spec, x).unwrap();
        assert!(close(d.value, want, 1e-12), "dispatcher E^{g}_({a},{b})({x}) = {}, want {want}", d.value);
    }
}

#[test]
fn large_negative_arguments() {
    // E_{1/2,1}(-z) = e^{z²} erfc(z) at z = 10 and z = 100
    let cases: [(f64, f64, f64, f64); 4] = [
        (0.5, 1.0, -10.0, 0.056_140_992_743_822_59),
        (0.5, 1.0, -100.0, 0.005_641_613_782_989_433),
        (0.7, 1.0, -f64::powf(2.0, 0.7), 0.263_190_006_799_092_44),
        (0.5, 0.9, -f64::sqrt(0.3), 0.534_770_563_148_471_3),
    ];
    let mut cases = cases.to_vec();
    cases.extend([(0.3, 1.0, -5.0, 0.137_080_869_020_270_64), (0.3, 1.0, -10.0, 0.072_649_729_072_772_09)]);
    for (a, b, x, want) in cases {
        let e = special::ml(a, b, x).unwrap();
        assert!(close(e.value, want, 1e-12), "E_({a},{b})({x}) = {}, want {want}", e.value);
    }
    let three: [(f64, f64, f64, f64, f64); 3] = [
        (0.5, 2.5, 1.0, -40.0, 0.024_310_167_702_815_564),
        (0.8, 0.4, 3.0, -50.0, 5.085_855_434_497_664e-7),
        (0.4, 5.0, 1.0, -20.0, 0.003_438_937_509_166_291_4),
    ];
    for (a, b, g, x, want) in three {
        let v = special::gml(&MLSpec::new(a, b, g).unwrap(), x).unwrap().value;
        assert!(close(v, want, 1e-12), "E^{g}_({a},{b})({x}) = {v}, want {want}");
    }
    // far into the cancellation regime only the contour route is accurate
    let e = special::ml(0.5, 1.0, -1e4).unwrap();
    assert_eq!(e.route, Route::Integral);
    assert_relative_eq!(e.value, 1.0 / (1e4 * std::f64::consts::PI.sqrt()) * (1.0 - 0.5e-8), max_relative = 1e-10);
}

#[test]
fn exponential_collapse() {
    for k in 0..=10u32 {
        let kf = k as f64;
        let fact: f64 = (1..=k).map(|i| i as f64).product();
        for i in 0..=20 {
            let x = -0.25 * i as f64;
            let v = special::gml(&MLSpec::new(1.0, kf + 1.0, kf + 1.0).unwrap(), x).unwrap().value;
            assert!(close(v, x.exp() / fact, 1e-12), "k={k} x={x}: {v}");
        }
    }
}

#[test]
fn wright_reference_values() {
    assert_relative_eq!(special::wright(-0.5, 0.5, -1.0).unwrap().value, 0.439_391_289_467_722_4, max_relative = 1e-13);
    assert_relative_eq!(special::wright(-0.3, 0.7, -2.0).unwrap().value, 0.168_400_306_226_783_12, max_relative = 1e-12);
    assert_relative_eq!(special::wright(0.5, 0.5, -1.0).unwrap().value, -0.010_723_428_581_552_187, max_relative = 1e-11);
    assert_relative_eq!(special::m_wright(0.3, 0.5).unwrap().value, 0.561_001_648_731_664_2, max_relative = 1e-13);
    assert_relative_eq!(special::m_wright(0.7, 0.5).unwrap().value, 0.471_850_995_007_771_1, max_relative = 1e-13);
    assert_relative_eq!(special::m_wright(0.3, 2.0).unwrap().value, 0.168_400_306_226_783_12, max_relative = 1e-12);
    // the kernel values below sit where the series has lost most of its digits
    assert_relative_eq!(special::m_wright(0.7, 3.0).unwrap().value, 0.007_451_474_682_640_953, max_relative = 1e-10);
    assert_relative_eq!(special::m_wright(0.25, 6.0).unwrap().value, 0.002_271_391_588_427_374_9, max_relative = 1e-10);
    assert!(special::m_wright(0.8, 5.0).unwrap().value.abs() < 1e-14);
    for z in [0.0, 0.3, 1.0, 4.0, 9.0] {
        let gauss = (-z * z / 4.0f64).exp() / std::f64::consts::PI.sqrt();
        assert_relative_eq!(special::m_wright(0.5, z).unwrap().value, gauss, max_relative = 1e-12);
    }
}

#[test]
fn wright_cancellation_is_flagged() {
    match wright_series(-0.5, 0.5, -20.0, &sp()) {
        Err(Error::Cancellation { ratio, .. }) => assert!(ratio > 1e10),
        other => panic!("expected a cancellation error, got {other:?}"),
    }
}

#[test]
fn series_term_cap() {
    let p = SeriesPolicy { max_terms: 3, ..sp() };
    assert!(matches!(ml_series(0.5, 1.0, 2.0, &p), Err(Error::NonConvergence { .. })));
    assert!(MLSpec::new(0.0, 1.0, 1.0).is_err());
    assert!(MLSpec::new(1.0, -1.0, 1.0).is_err());
    assert!(MLSpec::new(1.0, 1.0, 0.0).is_err());
}

#[test]
fn integral_representations() {
    let p = qp();
    assert_relative_eq!(ml_neg_integral(0.5, 1.0, &p).unwrap(), 0.427_583_576_155_807, max_relative = 1e-10);
    assert!((ml_neg_integral(0.999, 1.0, &p).unwrap() - (-1.0f64).exp()).abs() < 1e-2);
    let v = ml_neg_integral(0.7, 2.0, &p).unwrap();
    assert!(close(v, ml_series(0.7, 1.0, -f64::powf(2.0, 0.7), &sp()).unwrap(), 1e-8));

    assert!(close(ml2_neg_integral(0.5, 0.5, 1.0, &p).unwrap(), 0.136_606_007_391_949_28, 1e-8));
    assert!(close(ml2_neg_integral(0.6, 1.0, 1.5, &p).unwrap(), ml_neg_integral(0.6, 1.5, &p).unwrap(), 1e-8));
    assert!(close(ml2_neg_integral(0.5, 0.9, 0.3, &p).unwrap(), 0.534_770_563_148_471_3, 1e-8));
    assert!(close(ml2_neg_integral(0.4, 0.4, 2.0, &p).unwrap(), ml_nu_nu_neg_integral(0.4, 2.0, &p).unwrap(), 1e-8));
    assert!(ml2_neg_integral(0.5, 1.5, 1.0, &p).is_err());
    assert!(ml_neg_integral(1.0, 1.0, &p).is_err());

    assert!(close(ml_cauchy_integral(0.4, 1.0, &p).unwrap(), ml_neg_integral(0.4, 1.0, &p).unwrap(), 1e-8));
    assert!(close(ml_cauchy_integral(0.6, 3.0, &p).unwrap(), ml_neg_integral(0.6, 3.0, &p).unwrap(), 1e-8));
}

#[test]
fn wright_integral_representation() {
    let p = qp();
    assert!(close(wright_neg_integral(0.5, 0.5, 1.0, &p).unwrap(), -0.010_723_428_581_552_187, 1e-6));
    assert!(close(wright_neg_integral(0.3, 0.7, 2.0, &p).unwrap(), 0.116_923_726_072_337_98, 1e-6));
    // slow decay along the axis: W_{1/2,1/2}(-√50) is about 0.0192
    assert!(close(wright_neg_integral(0.5, 0.5, 50.0, &p).unwrap(), 0.019_232_951_556_873_24, 1e-6));
    assert!(wright_neg_integral(0.5, 1.0, 1.0, &p).is_err());
}

#[test]
fn large_t_approximations() {
    assert_relative_eq!(ml_large_t_approx(0.5, 1.0, 100.0), 0.056_418_958_354_775_63, max_relative = 1e-14);
    assert_relative_eq!(ml_large_t_approx(0.5, 0.5, 100.0), 0.002_820_947_917_738_781, max_relative = 1e-14);
    let r = special::ml(0.5, 1.0, -10.0).unwrap().value / ml_large_t_approx(0.5, 1.0, 100.0);
    assert!((0.9..=1.1).contains(&r));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn prabhakar_with_unit_gamma_is_two_parameter(alpha in 0.2f64..1.0, beta in 0.2f64..3.0, x in -5.0f64..5.0) {
        // beyond this the positive-axis value overflows and the negative-axis series cancels
        prop_assume!(x.abs().powf(1.0 / alpha) < 20.0);
        let g = gml_series(&MLSpec::new(alpha, beta, 1.0).unwrap(), x, &sp()).unwrap();
        let m = ml_series(alpha, beta, x, &sp()).unwrap();
        prop_assert!(close(g, m, 1e-13));
    }

    #[test]
    fn recurrence_in_beta(nu in 0.2f64..=1.0, n in 0u32..4, m in 1u32..6, z in 0.1f64..2.0, x in 0.05f64..5.0) {
        let (n, m) = (n as f64, m as f64);
        let w = |beta: f64, gamma: f64, p: f64| -> f64 {
            if gamma == 0.0 {
                return x.powf(p) * special::gamma::rgamma(beta);
            }
            x.powf(p) * special::gml(&MLSpec::new(nu, beta, gamma).unwrap(), -x).unwrap().value
        };
        let lhs = w(n * nu + z, m, n) + w((n + 1.0) * nu + z, m, n + 1.0);
        let rhs = w(n * nu + z, m - 1.0, n);
        prop_assert!(close(lhs, rhs, 1e-10), "lhs {lhs} rhs {rhs}");
    }

    #[test]
    fn routes_agree_near_the_switch(nu in 0.3f64..0.95, x in 1.0f64..20.0) {
        let series = ml_series(nu, 1.0, -x, &sp());
        let integral = ml_neg_integral(nu, x.powf(1.0 / nu), &qp()).unwrap();
        if let Ok(s) = series {
            if x.powf(1.0 / nu) < 12.0 {
                prop_assert!(close(s, integral, 1e-8));
            }
        }
        let d = special::ml(nu, 1.0, -x).unwrap().value;
        prop_assert!(close(d, integral, 1e-9));
    }

    #[test]
    fn completely_monotone_decay(nu in 0.2f64..1.0, a in 0.0f64..50.0, b in 0.0f64..50.0) {
        // E_{ν,1}(-x) is positive and decreasing in x for 0 < ν ≤ 1
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let f_lo = special::ml(nu, 1.0, -lo).unwrap().value;
        let f_hi = special::ml(nu, 1.0, -hi).unwrap().value;
        prop_assert!(f_hi > 0.0);
        prop_assert!(f_hi <= f_lo * (1.0 + 1e-12));
    }
}
