//! Algebraic endpoint singularity s^{1/2}: convergence slows to an algebraic
//! rate, about L^{-3} once L exceeds |z|.
//!
//! cargo run --release --example singular_integrand

use expquad::quadrature::convergence_table;
use expquad::{Complex64, ExpParam, Integrand};

fn main() -> expquad::Result<()> {
    let f = Integrand::alpha_singular(0.5);
    let z = [ExpParam::new(Complex64::new(0.0, -40.0))?];
    let degrees = [80, 160, 320, 640, 1280];
    let t = convergence_table(&f, &z, &degrees, 10240)?;
    for (i, l) in degrees.iter().enumerate() {
        let order = if i > 0 { format!("{:.2}", (t[i - 1][0] / t[i][0]).log2()) } else { String::new() };
        println!("L = {l:5}  rel err = {:.2e}  order = {order}", t[i][0]);
    }
    Ok(())
}
