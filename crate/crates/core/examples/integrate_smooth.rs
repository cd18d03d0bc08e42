//! Integrate a smooth non-polynomial function against e^{zs} on [0, 2].
//!
//! cargo run --release --example integrate_smooth

use expquad::oracle::{integrate_full, PanelRule};
use expquad::{integrate, Complex64, ExpParam, Integrand};

fn main() -> expquad::Result<()> {
    let f = Integrand::smooth_j();
    for z in [Complex64::new(-40.0, 0.0), Complex64::new(-10.0, 300.0), Complex64::new(2.0, -1e4)] {
        let p = ExpParam::new(z)?;
        let r = integrate(&f, &p, 160)?;
        let reference = integrate_full(|s| f.eval(s), z, &PanelRule::resolving(160, z.norm()).doubled());
        println!(
            "z = {z:>14}  I = {:.15e}  tail = {:.1e}  ref err = {:.1e}",
            r.value,
            r.coeff_tail,
            (r.value - reference).norm()
        );
    }
    Ok(())
}
