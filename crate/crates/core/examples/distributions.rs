//! Exact distributions of the first-type, second-type and third-order processes.
//!
//! cargo run --example distributions

use fracpois::models;
use fracpois::ProcessSpec;

fn main() -> fracpois::Result<()> {
    let t = 1.5;
    let specs = [ProcessSpec::new(1, 0.7, 1.0)?, ProcessSpec::new(2, 0.7, 1.0)?, ProcessSpec::new(3, 0.7, 1.0)?];

    println!("Pr{{N(t) = k}} at t = {t}, nu = 0.7, lambda = 1");
    println!("{:>3} {:>14} {:>14} {:>14}", "k", "n=1", "n=2", "n=3");
    for k in 0..8 {
        let row: Vec<f64> = specs.iter().map(|s| models::pmf(s, k, t)).collect::<fracpois::Result<_>>()?;
        println!("{k:>3} {:>14.10} {:>14.10} {:>14.10}", row[0], row[1], row[2]);
    }

    println!("\ninterarrival density and k=2 waiting time");
    println!("{:>8} {:>14} {:>14} {:>14}", "t", "f(t) n=1", "f(t) n=2", "Pr{T_2<=t} n=2");
    for t in [0.01, 0.1, 1.0, 10.0, 100.0] {
        println!(
            "{t:>8} {:>14.6e} {:>14.6e} {:>14.10}",
            models::interarrival_pdf(&specs[0], t)?,
            models::interarrival_pdf(&specs[1], t)?,
            models::waiting_time_cdf(&specs[1], 2, t)?
        );
    }

    println!("\ngenerating function, renewal function, odd mass");
    for u in [0.25, 0.5, 0.75, 1.0] {
        println!("  G(u={u}, t={t}) n=1: {:.12}  n=2: {:.12}", models::pgf(&specs[0], u, t)?, models::pgf(&specs[1], u, t)?);
    }
    println!("  E N(t) n=1: {:.12}  n=2: {:.12}", models::renewal_mean(&specs[0], t)?, models::renewal_mean(&specs[1], t)?);
    println!("  Pr{{N(t) odd}} n=1: {:.12}", models::odd_probability_sum(&specs[0], t)?);
    for r in 1..=3 {
        println!("  factorial moment r={r}: {:.12}", models::factorial_moment(&specs[0], r, t)?);
    }
    Ok(())
}
