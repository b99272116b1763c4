//! Run the full verification suite and summarize it per check.
//!
//! cargo run --release --example verification_suite

use fracpois::verify::suite::CHECKS;

fn main() -> fracpois::Result<()> {
    let mut all = true;
    for check in CHECKS {
        let reports = (check.run)()?;
        let failed = reports.iter().filter(|r| !r.pass).count();
        let worst = reports.iter().map(|r| r.abs_err.min(r.rel_err) / r.tol.max(f64::MIN_POSITIVE)).fold(0.0, f64::max);
        all &= failed == 0;
        println!(
            "{:<18} {:>4} reports  {:>3} failed  worst err/tol {:>9.2e}  {}",
            check.name,
            reports.len(),
            failed,
            worst,
            check.summary
        );
    }
    println!("{}", if all { "all checks pass" } else { "some checks FAILED" });
    Ok(())
}
