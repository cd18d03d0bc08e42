//! Polynomials of degree <= L are integrated exactly (up to round-off),
//! whatever the size of z.
//!
//! cargo run --release --example legendre_exactness

use expquad::integrand::legendre_p;
use expquad::oracle::{integrate_full, PanelRule};
use expquad::{integrate, Complex64, ExpParam, Integrand};

fn main() -> expquad::Result<()> {
    let z = Complex64::new(-250.0, 0.0);
    let p = ExpParam::new(z)?;
    for n in [4, 16, 64, 256] {
        let got = integrate(&Integrand::legendre(n), &p, n)?.value;
        let exact = integrate_full(|s| Complex64::new(legendre_p(n, s - 1.0), 0.0), z, &PanelRule::resolving(n, 250.0).doubled());
        println!("P_{n:<4} I = {:+.15e}  |err| = {:.1e}", got.re, (got - exact).norm());
    }
    Ok(())
}
