//! Two independent routes to the same numbers: forward Laplace quadrature
//! against the closed-form transforms, and the pmf as a Poisson law mixed
//! over an M-Wright distributed time.
//!
//! cargo run --release --example laplace_and_subordination

use fracpois::quad::QuadPolicy;
use fracpois::verify::{self, subordination_pmf};
use fracpois::{models, ProcessSpec};

fn main() -> fracpois::Result<()> {
    let spec = ProcessSpec::new(2, 0.5, 1.0)?;
    for r in verify::verify_transform_pairs(&spec, 1, &[2.0, 5.0], 1e-6)? {
        println!("{:<60} quad {:.12} closed {:.12}", r.name, r.lhs, r.rhs);
    }

    println!();
    let policy = QuadPolicy::default();
    let one = ProcessSpec::new(1, 0.3, 1.0)?;
    for k in 0..4 {
        let q = subordination_pmf(k, 0.3, 1.0, 2.0, &policy)?;
        let p = models::pmf(&one, k, 2.0)?;
        println!("nu=0.3 t=2 k={k}: mixture {q:.14} closed form {p:.14}");
    }
    Ok(())
}
