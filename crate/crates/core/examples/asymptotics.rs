//! Large-time approximations of E_{ν,β}(-t^ν) and interarrival tails.
//!
//! cargo run --example asymptotics

use fracpois::special::{self, ml_large_t_approx};
use fracpois::{models, ProcessSpec};

fn main() -> fracpois::Result<()> {
    println!("{:>5} {:>5} {:>8} {:>14} {:>14} {:>8}", "nu", "beta", "t", "E(-t^nu)", "approx", "ratio");
    for (nu, beta) in [(0.5, 1.0), (0.7, 1.0), (0.5, 0.5), (0.7, 0.7), (0.5, 0.8)] {
        for t in [10.0, 100.0, 1000.0, 1e4] {
            let exact = special::ml(nu, beta, -f64::powf(t, nu))?.value;
            let approx = ml_large_t_approx(nu, beta, t);
            println!("{nu:>5} {beta:>5} {t:>8} {exact:>14.6e} {approx:>14.6e} {:>8.4}", exact / approx);
        }
    }

    println!("\ninterarrival density over its power-law tail, nu = 0.5");
    for n in [1, 2] {
        let s = ProcessSpec::new(n, 0.5, 1.0)?;
        for t in [50.0, 200.0, 1000.0] {
            let f = models::interarrival_pdf(&s, t)?;
            let a = models::interarrival_tail_asymptote(&s, t)?;
            println!("  n={n} t={t:>6}: ratio {:.4}", f / a.value);
        }
    }

    println!("\nsecond-type interarrival density near the origin, t = 1e-6");
    for nu in [0.3, 0.5, 0.7] {
        let f = models::interarrival_pdf(&ProcessSpec::new(2, nu, 1.0)?, 1e-6)?;
        println!("  nu={nu}: {f:.6e}");
    }
    Ok(())
}
