//! Relative error against a high-degree reference, over a geometric sweep
//! of |z| along the negative real axis.
//!
//! cargo run --release --example convergence_table

use expquad::quadrature::convergence_table;
use expquad::{Complex64, ExpParam, Integrand};

fn main() -> expquad::Result<()> {
    let zs: Vec<ExpParam> = (0..6)
        .map(|r| ExpParam::new(Complex64::new(-40.0 * 4f64.powi(r), 0.0)))
        .collect::<expquad::Result<_>>()?;
    let degrees = [10, 20, 40, 80, 160, 320, 640];
    let table = convergence_table(&Integrand::smooth_j(), &zs, &degrees, 1280)?;

    print!("{:>5}", "L");
    for z in &zs {
        print!("{:>11}", format!("{}", z.z().re));
    }
    println!();
    for (l, row) in degrees.iter().zip(&table) {
        print!("{l:>5}");
        for e in row {
            print!("{e:>11.2e}");
        }
        println!();
    }
    Ok(())
}
