//! Why the forward recurrence alone is not enough: for n beyond |z| it
//! amplifies round-off geometrically, while the stable engine does not.
//!
//! cargo run --release --example instability_demo

use expquad::oracle::phase1_unbounded;
use expquad::weights::{compute_weights, ExpParam, Phase3Params};
use expquad::Complex64;

fn main() -> expquad::Result<()> {
    let z = Complex64::new(-100.0, 0.0);
    let degree = 300;
    let naive = phase1_unbounded(z, degree);
    let stable = compute_weights(&ExpParam::new(z)?, degree, &Phase3Params::default())?;
    println!("{:>5} {:>12} {:>12}", "n", "|rho| naive", "|rho| stable");
    for n in (0..=degree).step_by(25) {
        println!("{n:5} {:12.3e} {:12.3e}", naive[n].norm(), stable.rho[n].norm());
    }
    Ok(())
}
