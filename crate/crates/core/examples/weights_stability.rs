//! Weights for a large purely imaginary parameter, checked against the
//! panel-quadrature reference.
//!
//! cargo run --release --example weights_stability

use expquad::oracle::{integrate_weights, Kind, PanelRule};
use expquad::weights::{compute_weights, ExpParam, Phase3Params};
use expquad::Complex64;

fn main() -> expquad::Result<()> {
    let z = ExpParam::new(Complex64::new(0.0, 400.0))?;
    let degree = 1000;
    let table = compute_weights(&z, degree, &Phase3Params::default())?;
    println!("z = {}, L = {degree}, n0 = {}, n1 = {:?}", z.z(), table.n0, table.n1);

    let rule = PanelRule::resolving(degree, z.modulus());
    let omega = integrate_weights(degree, z.z(), Kind::T, &rule);
    for n in [0, 100, table.n0, table.n0 + 1, 700, degree] {
        let err = (table.omega[n] - omega[n]).norm();
        println!("n = {n:5}  {:9}  |omega| = {:.3e}  err = {err:.1e}", table.phase_of[n].as_str(), table.omega[n].norm());
    }
    Ok(())
}
