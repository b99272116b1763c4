//! Evaluate Mittag-Leffler, Prabhakar and Wright functions and show which
//! route the dispatcher picked.
//!
//! cargo run --example mittag_leffler

use fracpois::special::{self, MLSpec};

fn main() -> fracpois::Result<()> {
    println!("{:>28} {:>10} {:>24} {:>10} {:>9}", "function", "x", "value", "abs_err", "route");
    let show = |label: &str, x: f64, e: special::Evaluation| {
        println!("{label:>28} {x:>10} {:>24.16e} {:>10.1e} {:>9}", e.value, e.abs_err, e.route.as_str());
    };

    for x in [1.0, -1.0, -10.0, -100.0, -1e4] {
        show("E_{1/2,1}", x, special::ml(0.5, 1.0, x)?);
    }
    // e^{x} erfc(-x) closed form at x = -1
    println!("{:>28} {:>10} {:>24.16e}", "e*erfc(1)", -1.0, std::f64::consts::E * 0.157_299_207_050_285_13);

    let spec = MLSpec::new(0.7, 1.4, 2.5)?;
    for x in [-0.8, -5.0, -50.0] {
        show("E^{2.5}_{0.7,1.4}", x, special::gml(&spec, x)?);
    }
    // exponential reduction E^{3}_{1,3}(-1) = e^{-1}/2
    show("E^3_{1,3}", -1.0, special::gml(&MLSpec::new(1.0, 3.0, 3.0)?, -1.0)?);

    for z in [0.5, 2.0, 10.0] {
        show("M_{0.3}", z, special::m_wright(0.3, z)?);
    }
    show("W_{-1/2,1/2}", -1.0, special::wright(-0.5, 0.5, -1.0)?);
    Ok(())
}
