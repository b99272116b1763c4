//! Plug the exact pmf into the governing fractional equations and watch the
//! discretization residual shrink as the step is halved.
//!
//! cargo run --release --example caputo_residual

use fracpois::verify::{caputo_refinement, GridSpec};
use fracpois::ProcessSpec;

fn main() -> fracpois::Result<()> {
    let grid = GridSpec::linear(0.5, 1.0, 21)?;
    for (n, nu) in [(1, 0.5), (2, 0.75), (3, 0.5)] {
        for k in 0..=2 {
            let r = caputo_refinement(&ProcessSpec::new(n, nu, 1.0)?, k, &grid)?;
            let res: Vec<String> = r.residuals.iter().map(|v| format!("{v:.2e}")).collect();
            let ratios: Vec<String> = r.ratios.iter().map(|v| format!("{v:.3}")).collect();
            println!("n={n} nu={nu} k={k}  residuals [{}]  ratios [{}]", res.join(", "), ratios.join(", "));
        }
    }
    Ok(())
}
