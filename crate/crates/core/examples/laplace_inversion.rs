//! Solve u' + lambda u = sin t (alpha = 0) and a fractional variant by
//! contour inversion of the Laplace transform.
//!
//! cargo run --release --example laplace_inversion

use expquad::laplace::{heat_sine_exact, invert_many, paper_tuning, ScalarProblem};

fn main() -> expquad::Result<()> {
    let times = [0.25, 0.5, 1.0];
    let heat = ScalarProblem::sine_forced(1.0, 0.0)?;
    for n in [12, 24, 36] {
        let contour = paper_tuning(1.0, 0.0, n)?;
        let u = invert_many(&times, &heat, &contour, 32)?;
        let err = times.iter().zip(&u).map(|(t, v)| (v.re - heat_sine_exact(*t, 1.0, 1.0)).abs()).fold(0.0, f64::max);
        println!("heat        N = {n:2}  max err = {err:.2e}");
    }
    let frac = ScalarProblem::sine_forced(1.0, 0.5)?;
    let contour = paper_tuning(1.0, 0.5, 36)?;
    for (t, u) in times.iter().zip(invert_many(&times, &frac, &contour, 32)?) {
        println!("alpha = 1/2 t = {t:4}  U = {:.12}", u.re);
    }
    Ok(())
}
