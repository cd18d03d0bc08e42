#![allow(dead_code)]

use expquad::weights::WeightTable;
use expquad::{Complex64, ExpParam};
use std::f64::consts::PI;

/// `{-40 4^r, -40 4^r e^{i pi/6}, -40 4^r e^{i pi/3}, 40 4^r i}` for `r = 0..5`.
pub fn z_grid() -> Vec<ExpParam> {
    let dirs = [
        Complex64::new(-1.0, 0.0),
        -Complex64::from_polar(1.0, PI / 6.0),
        -Complex64::from_polar(1.0, PI / 3.0),
        Complex64::new(0.0, 1.0),
    ];
    let mut out = Vec::new();
    for d in dirs {
        for r in 0..6 {
            out.push(param(d * 40.0 * 4f64.powi(r)));
        }
    }
    out
}

pub const GRID_DEGREES: [usize; 4] = [8, 64, 256, 1280];

pub fn param(z: Complex64) -> ExpParam {
    ExpParam::new(z).expect("admissible parameter")
}

pub fn max_abs(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

pub fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn gamma(n: usize, z: Complex64) -> Complex64 {
    let e = (2.0 * z).exp();
    if n.is_multiple_of(2) {
        (e - 1.0) / z
    } else {
        (e + 1.0) / z
    }
}

/// Largest `|-rho_{n-1} + (2n+2)/z rho_n + rho_{n+1} - 2 gamma_{n+1}|` over interior `n`.
pub fn recurrence_residual(t: &WeightTable) -> f64 {
    let z = t.z.z();
    (1..t.degree)
        .map(|n| {
            let r = -t.rho[n - 1] + (2 * n + 2) as f64 / z * t.rho[n] + t.rho[n + 1] - 2.0 * gamma(n + 1, z);
            r.norm()
        })
        .fold(0.0, f64::max)
}

/// Largest `|omega_{n+1} - gamma_{n+1} + (n+1)/z rho_n|`.
pub fn coupling_residual(t: &WeightTable) -> f64 {
    let z = t.z.z();
    (0..t.degree)
        .map(|n| (t.omega[n + 1] - gamma(n + 1, z) + (n + 1) as f64 / z * t.rho[n]).norm())
        .fold(0.0, f64::max)
}
