//! Shifted Chebyshev grids on `[0, 2]`, the DCT-I coefficient transform and
//! evaluation of the resulting interpolant.
//!
//! The grid uses the Chebyshev extrema `s_l = 1 + cos(l pi / L)`, so both
//! endpoints of the interval are nodes. The interpolant is written as
//! `Q_L f(s) = sum'' alpha_l T_l(s - 1)` where `sum''` halves the first and
//! last terms.

use crate::error::{Error, Result};
use crate::fft::fft;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Chebyshev extrema mapped to `[0, 2]`, ordered from `s = 2` down to `s = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebGrid {
    degree: usize,
    nodes: Vec<f64>,
}

impl ChebGrid {
    pub fn new(degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        let mut nodes = vec![0.0; degree + 1];
        nodes[0] = 2.0;
        nodes[degree] = 0.0;
        // 1 + cos(t) = 2 cos^2(t/2) and 1 - cos(t) = 2 sin^2(t/2): both halves
        // keep full relative accuracy, including the nodes next to s = 0.
        for l in 1..=degree / 2 {
            let (sin, cos) = (0.5 * l as f64 * PI / degree as f64).sin_cos();
            nodes[l] = 2.0 * cos * cos;
            nodes[degree - l] = 2.0 * sin * sin;
        }
        if degree.is_multiple_of(2) {
            nodes[degree / 2] = 1.0;
        }
        Ok(Self { degree, nodes })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Samples `f` once per node, in node order.
    pub fn sample<F>(&self, f: F) -> Vec<Complex64>
    where
        F: Fn(f64) -> Complex64,
    {
        self.nodes.iter().map(|&s| f(s)).collect()
    }
}

/// Expansion coefficients `alpha_{l,L}` of the interpolant on a [`ChebGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct ChebCoeffs {
    alpha: Vec<Complex64>,
}

impl ChebCoeffs {
    pub fn from_vec(alpha: Vec<Complex64>) -> Result<Self> {
        if alpha.len() < 2 {
            return Err(Error::ZeroDegree);
        }
        Ok(Self { alpha })
    }

    pub fn degree(&self) -> usize {
        self.alpha.len() - 1
    }

    pub fn alpha(&self) -> &[Complex64] {
        &self.alpha
    }

    /// `|alpha_{L-1}| + |alpha_L|`, a cheap indicator of how well the
    /// expansion has resolved `f`.
    pub fn tail(&self) -> f64 {
        let n = self.alpha.len();
        self.alpha[n - 2].norm() + self.alpha[n - 1].norm()
    }

    /// Evaluates `sum'' alpha_l T_l(s - 1)` by Clenshaw's backward recurrence.
    pub fn eval(&self, s: f64) -> Result<Complex64> {
        if !(0.0..=2.0).contains(&s) {
            return Err(Error::OutsideInterval(s));
        }
        Ok(clenshaw_halved(&self.alpha, s))
    }
}

// Clenshaw in the middle of the interval; near the ends Reinsch's variant,
// which carries differences of consecutive `b_k` and avoids the O(L^2)
// error growth of the plain recurrence at x = +-1.
fn clenshaw_halved(alpha: &[Complex64], s: f64) -> Complex64 {
    let last = alpha.len() - 1;
    let coeff = |k: usize| {
        if k == 0 || k == last {
            alpha[k] * 0.5
        } else {
            alpha[k]
        }
    };
    let x = s - 1.0;
    let zero = Complex64::new(0.0, 0.0);
    if x.abs() < 0.5 {
        let mut b1 = zero;
        let mut b2 = zero;
        for k in (1..=last).rev() {
            let b0 = coeff(k) + b1 * (2.0 * x) - b2;
            b2 = b1;
            b1 = b0;
        }
        return coeff(0) + b1 * x - b2;
    }
    // d_k = b_k - b_{k+1} (x > 0) or b_k + b_{k+1} (x < 0)
    let (shift, sign) = if x > 0.0 { (s - 2.0, 1.0) } else { (s, -1.0) };
    let mut b = zero;
    let mut d = zero;
    for k in (1..=last).rev() {
        d = coeff(k) + b * (2.0 * shift) + d * sign;
        b = d + b * sign;
    }
    coeff(0) + b * shift + d * sign
}

/// DCT-I of samples taken at the nodes of a degree-`L` grid:
/// `alpha_l = (2/L) sum''_j cos(j l pi / L) f_j`.
///
/// Runs in `O(L log L)` through an FFT of the length-`2L` even extension.
pub fn dct1_coeffs(samples: &[Complex64]) -> Result<ChebCoeffs> {
    if samples.len() < 2 {
        return Err(Error::ZeroDegree);
    }
    let degree = samples.len() - 1;
    let mut ext = Vec::with_capacity(2 * degree);
    ext.extend_from_slice(samples);
    ext.extend(samples[1..degree].iter().rev());
    fft(&mut ext);
    let scale = 1.0 / degree as f64;
    let alpha = ext[..=degree].iter().map(|v| v * scale).collect();
    Ok(ChebCoeffs { alpha })
}

/// Same as [`dct1_coeffs`] but checks the sample count against a declared degree.
pub fn dct1_coeffs_for(grid: &ChebGrid, samples: &[Complex64]) -> Result<ChebCoeffs> {
    if samples.len() != grid.degree + 1 {
        return Err(Error::LengthMismatch {
            expected: grid.degree + 1,
            got: samples.len(),
        });
    }
    dct1_coeffs(samples)
}

/// `T_n(x)` by the three-term recurrence.
pub fn eval_cheb_t(n: usize, x: f64) -> Result<f64> {
    if !x.is_finite() || x.abs() > 1.0 + 1e-12 {
        return Err(Error::OutsideReference(x));
    }
    Ok(cheb_t_unchecked(n, x))
}

pub(crate) fn cheb_t_unchecked(n: usize, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let (mut prev, mut cur) = (1.0, x);
    for _ in 1..n {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}
