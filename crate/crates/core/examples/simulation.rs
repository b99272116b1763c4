//! Simulate second-type paths and compare the empirical pmf with the exact one.
//!
//! cargo run --release --example simulation

use fracpois::simulate::{self, SimConfig};
use fracpois::{models, ProcessSpec};

fn main() -> fracpois::Result<()> {
    let spec = ProcessSpec::new(2, 0.6, 1.0)?;
    let config = SimConfig::new(2024, 20_000, 5.0)?;
    let paths = simulate::simulate_paths(&spec, &config)?;

    for t in [1.0, 5.0] {
        let emp = simulate::empirical_pmf(&paths, t)?;
        println!("t = {t}");
        println!("{:>3} {:>10} {:>10} {:>8}", "k", "empirical", "exact", "z");
        for (k, &q) in emp.iter().enumerate().take(8) {
            let p = models::pmf(&spec, k as u64, t)?;
            let se = (p * (1.0 - p) / config.n_paths as f64).sqrt();
            println!("{k:>3} {q:>10.5} {p:>10.5} {:>8.2}", (q - p) / se);
        }
        let (mean, se) = simulate::empirical_mean(&paths, t);
        println!("mean count {mean:.4} +- {se:.4}, renewal function {:.4}\n", models::renewal_mean(&spec, t)?);
    }

    let relabel = simulate::poisson_relabel_check(1.0, &SimConfig::new(7, 20_000, 1.0)?)?;
    println!("floor(N/2) of a Poisson process vs second-type pmf: max z = {:.2} (pass: {})", relabel.lhs, relabel.pass);
    Ok(())
}
