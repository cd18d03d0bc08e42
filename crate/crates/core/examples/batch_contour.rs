//! One integrand, many exponents: the Chebyshev coefficients are computed
//! once and reused across all contour nodes.
//!
//! cargo run --release --example batch_contour

use expquad::laplace::{paper_tuning, ScalarProblem, INNER_MU0};
use expquad::{ExpParam, ProductRule};
use std::f64::consts::PI;
use std::time::Instant;

fn main() -> expquad::Result<()> {
    let t = 4.0 * PI;
    let prob = ScalarProblem::sine_forced(1.0, 0.5)?;
    let contour = paper_tuning(t, 0.5, 52)?;
    let zs: Vec<ExpParam> = contour
        .nodes()
        .iter()
        .map(|(z, _)| ExpParam::with_ceiling(0.5 * t * z, INNER_MU0))
        .collect::<expquad::Result<_>>()?;

    let start = Instant::now();
    let rule = ProductRule::new(&prob.pulled_back(t), 32)?;
    let values = rule.apply_batch(&zs);
    let growing = zs.iter().filter(|z| z.sigma() > 0.0).count();
    println!("{} nodes ({growing} with Re z > 0) in {:?}", zs.len(), start.elapsed());
    for (z, v) in zs.iter().zip(values).step_by(13) {
        println!("z = {:>28}  I = {:.6e}", format!("{:.3}", z.z()), v?.value);
    }
    Ok(())
}
