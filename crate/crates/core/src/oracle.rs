//! Slow reference computations used to check the fast paths: composite
//! Gauss-Legendre integration, brute-force weights, the direct DCT-I, a dense
//! pivoted solve of the tridiagonal windows and the raw forward recurrence.
//!
//! Nothing here calls into [`crate::weights`].

use crate::cheb::ChebCoeffs;
use crate::error::{Error, Result};
use crate::weights::TridiagSystem;
use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::OnceLock;

pub const DEFAULT_POINTS: usize = 16;

/// Integration variable used by a [`PanelRule`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variable {
    /// Panels laid directly on `s in [0, 2]`.
    Linear,
    /// Panels on `theta in [0, pi]` with `s = 1 + cos(theta)`. Clusters points
    /// at both endpoints the way Chebyshev polynomials need.
    Angle,
}

/// Composite Gauss-Legendre rule. `grading > 1` shrinks panels towards `s = 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PanelRule {
    panels: usize,
    points: usize,
    grading: f64,
    variable: Variable,
}

impl PanelRule {
    pub fn new(panels: usize, points: usize, grading: f64, variable: Variable) -> Result<Self> {
        if panels == 0 || points == 0 {
            return Err(Error::InvalidParameter("panel rule needs at least one point".into()));
        }
        if !(grading >= 1.0 && grading.is_finite()) {
            return Err(Error::InvalidParameter(format!("grading must be >= 1, got {grading}")));
        }
        Ok(Self {
            panels,
            points,
            grading,
            variable,
        })
    }

    pub fn uniform(panels: usize) -> Self {
        Self::new(panels.max(1), DEFAULT_POINTS, 1.0, Variable::Linear).unwrap()
    }

    pub fn angular(panels: usize) -> Self {
        Self::new(panels.max(1), DEFAULT_POINTS, 1.0, Variable::Angle).unwrap()
    }

    /// Angular rule with enough panels to resolve `exp(z s)` times a degree-`n`
    /// polynomial: about 1.25 panels per unit of `n + |z|`.
    pub fn resolving(n: usize, z_abs: f64) -> Self {
        let panels = (0.8 * (n as f64 + z_abs)).ceil().max(16.0) as usize;
        Self::angular(panels)
    }

    pub fn with_grading(mut self, grading: f64) -> Result<Self> {
        if !(grading >= 1.0 && grading.is_finite()) {
            return Err(Error::InvalidParameter(format!("grading must be >= 1, got {grading}")));
        }
        self.grading = grading;
        Ok(self)
    }

    pub fn doubled(&self) -> Self {
        Self {
            panels: 2 * self.panels,
            ..*self
        }
    }

    pub fn panels(&self) -> usize {
        self.panels
    }

    pub fn points_per_panel(&self) -> usize {
        self.points
    }

    pub fn grading(&self) -> f64 {
        self.grading
    }

    pub fn variable(&self) -> Variable {
        self.variable
    }

    /// Panel endpoints in the rule's own variable, increasing.
    fn native_breaks(&self) -> Vec<f64> {
        let p = self.panels as f64;
        (0..=self.panels)
            .map(|k| {
                let u = k as f64 / p;
                match self.variable {
                    Variable::Linear => {
                        if k == self.panels {
                            2.0
                        } else {
                            2.0 - 2.0 * (1.0 - u).powf(self.grading)
                        }
                    }
                    Variable::Angle => {
                        if k == self.panels {
                            PI
                        } else {
                            PI * u.powf(self.grading)
                        }
                    }
                }
            })
            .collect()
    }

    /// Panel endpoints mapped to `s`, increasing from 0 to 2.
    pub fn breakpoints(&self) -> Vec<f64> {
        match self.variable {
            Variable::Linear => self.native_breaks(),
            Variable::Angle => {
                let mut s: Vec<f64> = self
                    .native_breaks()
                    .iter()
                    .map(|t| if *t == PI { 0.0 } else { 1.0 + t.cos() })
                    .collect();
                s.reverse();
                s
            }
        }
    }

    /// Quadrature nodes and weights in the native variable.
    fn nodes(&self) -> Vec<(f64, f64)> {
        let (x, w) = gauss_legendre(self.points);
        let breaks = self.native_breaks();
        let mut out = Vec::with_capacity(self.panels * self.points);
        for pair in breaks.windows(2) {
            let mid = 0.5 * (pair[0] + pair[1]);
            let half = 0.5 * (pair[1] - pair[0]);
            for (xi, wi) in x.iter().zip(w.iter()) {
                out.push((mid + half * xi, half * wi));
            }
        }
        out
    }
}

static GL16: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();

/// Gauss-Legendre nodes and weights on `[-1, 1]`, by Newton iteration on `P_n`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    if n == DEFAULT_POINTS {
        return GL16.get_or_init(|| gauss_legendre_newton(n)).clone();
    }
    gauss_legendre_newton(n)
}

fn gauss_legendre_newton(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut t = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, t);
            dp = d;
            let dt = p / d;
            t -= dt;
            if dt.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, t);
        dp = if d != 0.0 { d } else { dp };
        let wi = 2.0 / ((1.0 - t * t) * dp * dp);
        x[i] = -t;
        x[n - 1 - i] = t;
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    if n % 2 == 1 {
        x[n / 2] = 0.0;
    }
    (x, w)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 1..n {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// `int_0^2 f(s) exp(zs) ds` by the composite rule.
pub fn integrate_full<F>(f: F, z: Complex64, rule: &PanelRule) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let mut sum = Complex64::new(0.0, 0.0);
    match rule.variable {
        Variable::Linear => {
            for (s, w) in rule.nodes() {
                sum += w * f(s) * (z * s).exp();
            }
        }
        Variable::Angle => {
            for (theta, w) in rule.nodes() {
                let s = 1.0 + theta.cos();
                sum += w * theta.sin() * f(s) * (z * s).exp();
            }
        }
    }
    sum
}

/// First- or second-kind Chebyshev moment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    T,
    U,
}

/// Brute-force `omega_n(z)` (kind `T`) or `rho_n(z)` (kind `U`). Always
/// integrates in the angle variable, where `T_n` and `U_n` become `cos` and `sin`.
pub fn integrate_weight(n: usize, z: Complex64, kind: Kind, rule: &PanelRule) -> Complex64 {
    integrate_weights(n, z, kind, rule).pop().unwrap()
}

/// Brute-force moments of indices `0..=degree`, sharing the node evaluations.
pub fn integrate_weights(degree: usize, z: Complex64, kind: Kind, rule: &PanelRule) -> Vec<Complex64> {
    let angular = PanelRule {
        variable: Variable::Angle,
        ..*rule
    };
    let nodes: Vec<(f64, Complex64)> = angular
        .nodes()
        .into_iter()
        .map(|(theta, w)| {
            let kernel = (z * (1.0 + theta.cos())).exp() * w;
            let jac = match kind {
                Kind::T => theta.sin(),
                Kind::U => 1.0,
            };
            (theta, kernel * jac)
        })
        .collect();
    (0..=degree)
        .map(|n| {
            nodes
                .iter()
                .map(|(theta, k)| {
                    let basis = match kind {
                        Kind::T => (n as f64 * theta).cos(),
                        Kind::U => ((n + 1) as f64 * theta).sin(),
                    };
                    k * basis
                })
                .sum()
        })
        .collect()
}

/// Direct `O(L^2)` evaluation of `alpha_l = (2/L) sum''_j cos(j l pi / L) f_j`.
pub fn naive_dct1(samples: &[Complex64]) -> Result<ChebCoeffs> {
    if samples.len() < 2 {
        return Err(Error::ZeroDegree);
    }
    let degree = samples.len() - 1;
    let alpha = (0..=degree)
        .map(|l| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, f) in samples.iter().enumerate() {
                let w = if j == 0 || j == degree { 0.5 } else { 1.0 };
                let arg = ((j * l) % (2 * degree)) as f64 * PI / degree as f64;
                acc += f * (w * arg.cos());
            }
            acc * (2.0 / degree as f64)
        })
        .collect();
    ChebCoeffs::from_vec(alpha)
}

/// Dense matrix `(2/z) D^{1/2} (I + (z/2) M) D^{1/2}` of a window system, row-major.
pub fn dense_matrix(sys: &TridiagSystem, z: Complex64) -> Vec<Vec<Complex64>> {
    let n = sys.dscale.len();
    let zero = Complex64::new(0.0, 0.0);
    let mut a = vec![vec![zero; n]; n];
    let outer = 2.0 / z;
    for i in 0..n {
        let di = sys.dscale[i].sqrt();
        a[i][i] = outer * di * di;
        if i + 1 < n {
            let dj = sys.dscale[i + 1].sqrt();
            let m = 0.5 * z * sys.offdiag[i];
            a[i][i + 1] = outer * di * m * dj;
            a[i + 1][i] = -(outer * dj * m * di);
        }
    }
    a
}

/// Gaussian elimination with partial pivoting on the window matrix.
///
/// Rows are kept in band form (each row stores four consecutive columns), so
/// the elimination performs exactly the operations of dense GEPP on the
/// nonzero entries without materialising `n^2` storage.
pub fn dense_solve(sys: &TridiagSystem, z: Complex64) -> Result<Vec<Complex64>> {
    let n = sys.size();
    let zero = Complex64::new(0.0, 0.0);
    let outer = 2.0 / z;
    // row i covers columns start[i]..start[i]+4
    let mut start: Vec<usize> = (0..n).map(|i| i.saturating_sub(1)).collect();
    let mut rows: Vec<[Complex64; 4]> = (0..n)
        .map(|i| {
            let mut r = [zero; 4];
            let base = start[i];
            r[i - base] = outer * sys.dscale[i];
            if i + 1 < n {
                r[i + 1 - base] = Complex64::new(1.0, 0.0);
            }
            if i > 0 {
                r[0] = Complex64::new(-1.0, 0.0);
            }
            r
        })
        .collect();
    let mut b = sys.rhs.clone();
    let get = |start: &[usize], rows: &[[Complex64; 4]], i: usize, j: usize| {
        if j >= start[i] && j < start[i] + 4 {
            rows[i][j - start[i]]
        } else {
            zero
        }
    };
    for col in 0..n {
        if col + 1 < n && get(&start, &rows, col + 1, col).norm() > get(&start, &rows, col, col).norm() {
            rows.swap(col, col + 1);
            start.swap(col, col + 1);
            b.swap(col, col + 1);
        }
        let pivot = get(&start, &rows, col, col);
        if pivot.norm() == 0.0 {
            return Err(Error::Singular(col));
        }
        if col + 1 < n {
            let factor = get(&start, &rows, col + 1, col) / pivot;
            let mut next = [zero; 4];
            for (k, v) in next.iter_mut().enumerate() {
                let j = col + 1 + k;
                *v = get(&start, &rows, col + 1, j) - factor * get(&start, &rows, col, j);
            }
            rows[col + 1] = next;
            start[col + 1] = col + 1;
            let v = b[col];
            b[col + 1] -= factor * v;
        }
    }
    let mut x = vec![zero; n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in row + 1..(row + 4).min(n) {
            acc -= get(&start, &rows, row, k) * x[k];
        }
        x[row] = acc / get(&start, &rows, row, row);
    }
    Ok(x)
}

/// `A x` for the window matrix, without materialising it.
pub fn apply_matrix(sys: &TridiagSystem, z: Complex64, x: &[Complex64]) -> Vec<Complex64> {
    let n = sys.size();
    (0..n)
        .map(|i| {
            let mut v = 2.0 / z * sys.dscale[i] * x[i];
            if i + 1 < n {
                v += x[i + 1];
            }
            if i > 0 {
                v -= x[i - 1];
            }
            v
        })
        .collect()
}

/// `rho_0..rho_L` from the forward recurrence with no stability threshold.
/// Entries that overflow are stored as infinities.
pub fn phase1_unbounded(z: Complex64, degree: usize) -> Vec<Complex64> {
    let e2z = (2.0 * z).exp();
    let gamma_even = (e2z - 1.0) / z;
    let gamma_odd = (e2z + 1.0) / z;
    let gamma = |n: usize| if n.is_multiple_of(2) { gamma_even } else { gamma_odd };
    let mut rho = Vec::with_capacity(degree + 1);
    rho.push(gamma_even);
    rho.push(2.0 * (z + e2z * (z - 1.0) + 1.0) / (z * z));
    for n in 1..degree {
        let next = rho[n - 1] - 2.0 * (n + 1) as f64 / z * rho[n] + 2.0 * gamma(n + 1);
        rho.push(next);
    }
    rho.truncate(degree + 1);
    let inf = Complex64::new(f64::INFINITY, f64::INFINITY);
    let mut overflowed = false;
    for v in rho.iter_mut() {
        overflowed |= !(v.re.is_finite() && v.im.is_finite());
        if overflowed {
            *v = inf;
        }
    }
    rho
}
