//! Stable generation of the product-rule weights
//!
//! ```text
//! omega_n(z) = int_0^2 T_n(s - 1) exp(zs) ds,   rho_n(z) = int_0^2 U_n(s - 1) exp(zs) ds
//! ```
//!
//! for any degree `L` and any admissible `z`. The two sequences are tied by
//! `omega_{n+1} = gamma_{n+1} - (n+1)/z rho_n` and `rho` obeys the three-term
//! recurrence
//!
//! ```text
//! -rho_{n-1} + (2n+2)/z rho_n + rho_{n+1} = 2 gamma_{n+1}
//! ```
//!
//! Running that recurrence forward is only stable up to a threshold `n0(z)`.
//! Beyond it the remaining `rho` are obtained from a tridiagonal system whose
//! far boundary value comes from the middle entry of a second, boundary-free
//! system placed past `(1 + r)|z|`.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Default admissibility ceiling on `Re z`.
pub const DEFAULT_MU0: f64 = 4.0;

/// Parameters with smaller modulus are rejected; every formula divides by `z`.
pub const MIN_MODULUS: f64 = 1e-8;

/// Thomas pivots below this magnitude abort the solve.
pub const PIVOT_FLOOR: f64 = 1e-10;

/// How many times `compute_weights` moves `n0` up by two after a small pivot.
pub const MAX_SHIFT_RETRIES: u32 = 3;

/// Validated exponent parameter `z` with `Re z <= mu0` and `|z| >= 1e-8`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpParam {
    z: Complex64,
    mu0: f64,
}

impl ExpParam {
    pub fn new(z: Complex64) -> Result<Self> {
        Self::with_ceiling(z, DEFAULT_MU0)
    }

    /// Real parts tiny relative to `|z|` are snapped to zero so that purely
    /// oscillatory input reliably takes the `Re z = 0` threshold branch.
    pub fn with_ceiling(z: Complex64, mu0: f64) -> Result<Self> {
        if !z.re.is_finite() || !z.im.is_finite() || !mu0.is_finite() {
            return Err(Error::NonFinite);
        }
        let modulus = z.norm();
        if modulus < MIN_MODULUS {
            return Err(Error::BelowFloor(modulus));
        }
        let mut z = z;
        if z.re.abs() < 1e-14 * modulus {
            z.re = 0.0;
        }
        if z.re > mu0 {
            return Err(Error::Inadmissible { sigma: z.re, mu0 });
        }
        if z.re > 0.0 {
            log::debug!("Re z = {} > 0: the integrand grows along [0, 2]", z.re);
        }
        Ok(Self { z, mu0 })
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    pub fn sigma(&self) -> f64 {
        self.z.re
    }

    pub fn eta(&self) -> f64 {
        self.z.im
    }

    pub fn mu0(&self) -> f64 {
        self.mu0
    }

    pub fn modulus(&self) -> f64 {
        self.z.norm()
    }

    pub fn conj(&self) -> Self {
        Self {
            z: self.z.conj(),
            mu0: self.mu0,
        }
    }
}

/// `exp(w) - 1` without cancellation for small `|w|`.
pub fn expm1(w: Complex64) -> Complex64 {
    let (s, c) = w.im.sin_cos();
    let half = (0.5 * w.im).sin();
    let em1 = w.re.exp_m1();
    Complex64::new(em1 * c - 2.0 * half * half, w.re.exp() * s)
}

/// The two values of `gamma_n`: `(e^{2z} - 1)/z` for even `n`, `(e^{2z} + 1)/z` for odd.
#[derive(Debug, Clone, Copy)]
pub struct Gammas {
    even: Complex64,
    odd: Complex64,
}

impl Gammas {
    pub fn new(z: &ExpParam) -> Self {
        let z = z.z();
        let e = expm1(2.0 * z);
        Self {
            even: e / z,
            odd: (e + 2.0) / z,
        }
    }

    #[inline]
    pub fn at(&self, n: usize) -> Complex64 {
        if n.is_multiple_of(2) {
            self.even
        } else {
            self.odd
        }
    }
}

pub fn gamma_n(n: usize, z: &ExpParam) -> Complex64 {
    Gammas::new(z).at(n)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Seeds {
    pub rho0: Complex64,
    pub rho1: Complex64,
    pub omega0: Complex64,
    pub omega1: Complex64,
}

/// Closed forms for the first two weights of each kind.
pub fn seed_weights(z: &ExpParam) -> Seeds {
    let w = z.z();
    let rho0 = expm1(2.0 * w) / w;
    let rho1 = if w.norm() < 1.0 {
        rho1_series(w)
    } else {
        2.0 * (w + (2.0 * w).exp() * (w - 1.0) + 1.0) / (w * w)
    };
    Seeds {
        rho0,
        rho1,
        omega0: rho0,
        omega1: 0.5 * rho1,
    }
}

// rho_1 = 2 sum_{k>=1} z^k 2^{k+1} k / (k! (k+1)(k+2)); the closed form
// cancels to O(z^3) in its numerator near the origin.
fn rho1_series(z: Complex64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut power = Complex64::new(1.0, 0.0); // (2z)^k / k!
    for k in 1..60 {
        power = power * (2.0 * z) / k as f64;
        let kf = k as f64;
        let term = power * (2.0 * kf / ((kf + 1.0) * (kf + 2.0)));
        sum += term;
        if term.norm() <= 1e-18 * sum.norm() {
            break;
        }
    }
    2.0 * sum
}

/// Last index computed by the forward recurrence.
pub fn stability_threshold(z: &ExpParam) -> usize {
    let modulus = z.modulus();
    if z.sigma() == 0.0 {
        modulus.ceil() as usize + 1
    } else {
        2 * modulus.sqrt().ceil() as usize + 1
    }
}

/// Which part of the procedure produced an entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Recurrence,
    Tridiagonal,
}

impl Phase {
    pub fn as_str(&self) -> &'static str {
        match self {
            Phase::Recurrence => "recurrence",
            Phase::Tridiagonal => "tridiag",
        }
    }
}

/// `omega_0..omega_L` and `rho_0..rho_L` for one `(L, z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightTable {
    pub degree: usize,
    pub z: ExpParam,
    pub omega: Vec<Complex64>,
    pub rho: Vec<Complex64>,
    /// Phase-switch index actually used.
    pub n0: usize,
    /// Far index supplied by the boundary-free solve; `None` when only the
    /// recurrence ran.
    pub n1: Option<usize>,
    pub phase_of: Vec<Phase>,
    /// Number of times `n0` was shifted after a near-singular pivot.
    pub shifts: u32,
}

/// Forward recurrence for indices `0..=l0`, with no threshold check.
pub fn phase1_recurrence(z: &ExpParam, l0: usize) -> WeightTable {
    let w = z.z();
    let gammas = Gammas::new(z);
    let seeds = seed_weights(z);
    let len = l0.max(1) + 1;
    let mut rho = Vec::with_capacity(len);
    let mut omega = Vec::with_capacity(len);
    rho.extend([seeds.rho0, seeds.rho1]);
    omega.extend([seeds.omega0, seeds.omega1]);
    let inv_w = w.inv();
    for n in 1..l0 {
        let scaled = (n + 1) as f64 * inv_w * rho[n];
        omega.push(gammas.at(n + 1) - scaled);
        rho.push(rho[n - 1] - 2.0 * scaled + 2.0 * gammas.at(n + 1));
    }
    rho.truncate(l0 + 1);
    omega.truncate(l0 + 1);
    WeightTable {
        degree: l0,
        z: *z,
        phase_of: vec![Phase::Recurrence; rho.len()],
        omega,
        rho,
        n0: l0,
        n1: None,
        shifts: 0,
    }
}

/// Tridiagonal form of the recurrence over the unknowns `rho_{n_lo+1}..rho_{n_hi}`:
///
/// ```text
/// A = (2/z) D^{1/2} (I + (z/2) M) D^{1/2},  D = diag(n_lo+2, ..., n_hi+1)
/// ```
///
/// with `M` skew-symmetric, `M_{k,k+1} = 1/sqrt(d_k d_{k+1})`.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagSystem {
    pub n_lo: usize,
    pub n_hi: usize,
    /// Diagonal of `D`.
    pub dscale: Vec<f64>,
    /// Superdiagonal of `M`; the subdiagonal is its negative.
    pub offdiag: Vec<f64>,
    pub rhs: Vec<Complex64>,
}

impl TridiagSystem {
    pub fn size(&self) -> usize {
        self.n_hi - self.n_lo
    }

    pub fn superdiag(&self) -> Vec<f64> {
        self.offdiag.clone()
    }

    pub fn subdiag(&self) -> Vec<f64> {
        self.offdiag.iter().map(|v| -v).collect()
    }

    /// Index of `rho` carried by position `j` of the solution vector.
    pub fn rho_index(&self, j: usize) -> usize {
        self.n_lo + 1 + j
    }
}

/// Builds the window system. With both boundary values the right-hand side
/// carries `+rho_{n_lo}` in its first entry and `-rho_{n_hi+1}` in its last;
/// with neither it is the plain `2 gamma` vector used by the far solve.
pub fn assemble_tridiag(
    z: &ExpParam,
    n_lo: usize,
    n_hi: usize,
    rho_lo: Option<Complex64>,
    rho_hi_plus1: Option<Complex64>,
) -> Result<TridiagSystem> {
    if n_hi <= n_lo {
        return Err(Error::EmptyWindow { lo: n_lo, hi: n_hi });
    }
    let boundaries = match (rho_lo, rho_hi_plus1) {
        (Some(lo), Some(hi)) => Some((lo, hi)),
        (None, None) => None,
        _ => return Err(Error::MixedBoundary),
    };
    let size = n_hi - n_lo;
    let dscale: Vec<f64> = (0..size).map(|j| (n_lo + 2 + j) as f64).collect();
    let offdiag = dscale.windows(2).map(|d| 1.0 / (d[0] * d[1]).sqrt()).collect();
    let gammas = Gammas::new(z);
    let mut rhs: Vec<Complex64> = (0..size).map(|j| 2.0 * gammas.at(n_lo + 2 + j)).collect();
    if let Some((lo, hi)) = boundaries {
        rhs[0] += lo;
        rhs[size - 1] -= hi;
    }
    Ok(TridiagSystem {
        n_lo,
        n_hi,
        dscale,
        offdiag,
        rhs,
    })
}

/// Solves `A rho = b` by Thomas elimination without pivoting.
///
/// Elimination is carried out on the unscaled rows `-x_{i-1} + (2 d_i / z) x_i + x_{i+1}`;
/// without pivoting this is the same elimination as on `I + (z/2) M`, whose
/// pivots are `p_i z / (2 d_i)`. Those scaled pivots are checked against
/// [`PIVOT_FLOOR`]. `sys` is assumed to come from [`assemble_tridiag`], so
/// `dscale` and `offdiag` are implied by `n_lo`.
pub fn solve_tridiag(sys: &TridiagSystem, z: &ExpParam) -> Result<Vec<Complex64>> {
    let mut x = sys.rhs.clone();
    thomas_in_place(z, sys.n_lo + 2, &mut x)?;
    Ok(x)
}

// Forward elimination state for rows `-x_{i-1} + (2 d_i / z) x_i + x_{i+1}`,
// `d_i = d0 + i`.
struct Sweep {
    two_over_z: Complex64,
    quarter_z2: f64,
    d0: usize,
    prev_c: Complex64,
    prev_x: Complex64,
}

impl Sweep {
    fn new(z: &ExpParam, d0: usize) -> Self {
        Self {
            two_over_z: 2.0 * z.z().inv(),
            quarter_z2: 0.25 * z.z().norm_sqr(),
            d0,
            prev_c: Complex64::new(0.0, 0.0),
            prev_x: Complex64::new(0.0, 0.0),
        }
    }

    /// Eliminates row `i`: overwrites `x` with the reduced right-hand side
    /// and stores the inverse pivot in `c`.
    #[inline(always)]
    fn step(&mut self, i: usize, x: &mut Complex64, c: &mut Complex64) -> Result<()> {
        let d = (self.d0 + i) as f64;
        let pivot = self.two_over_z * d + self.prev_c;
        let norm_sqr = pivot.norm_sqr();
        let floor = PIVOT_FLOOR * d;
        if norm_sqr * self.quarter_z2 < floor * floor {
            return Err(Error::NearSingular {
                row: i,
                pivot: norm_sqr.sqrt() * self.quarter_z2.sqrt() / d,
            });
        }
        let r = norm_sqr.recip();
        self.prev_c = Complex64::new(pivot.re * r, -pivot.im * r);
        self.prev_x = (*x + self.prev_x) * self.prev_c;
        *x = self.prev_x;
        *c = self.prev_c;
        Ok(())
    }
}

/// Back substitution after a full forward sweep; stops once index `stop` is final.
fn back_substitute(x: &mut [Complex64], c: &[Complex64], stop: usize) {
    let mut next = Complex64::new(0.0, 0.0);
    for i in (stop..x.len()).rev() {
        x[i] -= c[i] * next;
        next = x[i];
    }
}

fn thomas_in_place(z: &ExpParam, d0: usize, x: &mut [Complex64]) -> Result<()> {
    let mut c = vec![Complex64::new(0.0, 0.0); x.len()];
    let mut sweep = Sweep::new(z, d0);
    for (i, (xi, ci)) in x.iter_mut().zip(c.iter_mut()).enumerate() {
        sweep.step(i, xi, ci)?;
    }
    back_substitute(x, &c, 0);
    Ok(())
}

fn gamma_rhs(gammas: &Gammas, n_lo: usize, n_hi: usize) -> Vec<Complex64> {
    (n_lo + 2..n_hi + 2).map(|k| 2.0 * gammas.at(k)).collect()
}

/// Window solve with the right-hand side built in place:
/// `b_j = 2 gamma_{n_lo+2+j}`, plus the boundary corrections when given.
fn solve_window(
    z: &ExpParam,
    gammas: &Gammas,
    n_lo: usize,
    n_hi: usize,
    boundaries: Option<(Complex64, Complex64)>,
) -> Result<Vec<Complex64>> {
    if n_hi <= n_lo {
        return Err(Error::EmptyWindow { lo: n_lo, hi: n_hi });
    }
    let size = n_hi - n_lo;
    let mut x = gamma_rhs(gammas, n_lo, n_hi);
    if let Some((lo, hi)) = boundaries {
        x[0] += lo;
        x[size - 1] -= hi;
    }
    thomas_in_place(z, n_lo + 2, &mut x)?;
    Ok(x)
}

/// Assembles and solves one window with both boundary values known.
/// Returns `rho_{n_lo+1}..rho_{n_hi}`.
pub fn phase2_solve(
    z: &ExpParam,
    n_lo: usize,
    n_hi: usize,
    rho_lo: Complex64,
    rho_hi_plus1: Complex64,
) -> Result<Vec<Complex64>> {
    solve_window(z, &Gammas::new(z), n_lo, n_hi, Some((rho_lo, rho_hi_plus1)))
}

/// Controls the far-coefficient solve: the window starts past `(1 + r)|z|`
/// and its length is chosen so the truncation error is below `eps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Phase3Params {
    r: f64,
    eps: f64,
}

impl Default for Phase3Params {
    fn default() -> Self {
        Self {
            r: 1.0,
            eps: f64::EPSILON,
        }
    }
}

impl Phase3Params {
    pub fn new(r: f64, eps: f64) -> Result<Self> {
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::InvalidParameter(format!("r must be positive, got {r}")));
        }
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::InvalidParameter(format!("eps must lie in (0, 1), got {eps}")));
        }
        Ok(Self { r, eps })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// Odd window length `m = 2 floor(log(3/(eps r)) / log(1+r)) + 1`.
    pub fn chain_length(&self) -> usize {
        let q = (3.0 / (self.eps * self.r)).ln() / (1.0 + self.r).ln();
        2 * q.floor().max(0.0) as usize + 1
    }

    /// First window index `m0 = max(floor((1+r)|z|) - 2, L)`.
    pub fn window_start(&self, z: &ExpParam, degree: usize) -> usize {
        let start = ((1.0 + self.r) * z.modulus()).floor() - 2.0;
        if start > degree as f64 {
            start as usize
        } else {
            degree
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FarCoefficient {
    /// `n1 = (m1 + m0 - 1) / 2`.
    pub n1: usize,
    /// Approximation of `rho_{n1+1}`.
    pub rho: Complex64,
}

/// Approximates `rho_{n1+1}` for some `n1 >= L` as the middle entry of the
/// boundary-free window solve.
pub fn phase3_far_coefficient(
    z: &ExpParam,
    degree: usize,
    params: &Phase3Params,
) -> Result<FarCoefficient> {
    far_coefficient(z, &Gammas::new(z), degree, params)
}

fn far_coefficient(
    z: &ExpParam,
    gammas: &Gammas,
    degree: usize,
    params: &Phase3Params,
) -> Result<FarCoefficient> {
    let m0 = params.window_start(z, degree);
    let m = params.chain_length();
    let m1 = m0 + m;
    let sol = solve_window(z, gammas, m0, m1, None)?;
    let n1 = (m1 + m0 - 1) / 2;
    Ok(FarCoefficient {
        n1,
        rho: sol[n1 + 1 - (m0 + 1)],
    })
}

/// Full three-phase computation of `omega_0..omega_L` and `rho_0..rho_L`.
///
/// A near-singular pivot in either solve moves `n0` up by two and retries,
/// at most [`MAX_SHIFT_RETRIES`] times.
pub fn compute_weights(z: &ExpParam, degree: usize, params: &Phase3Params) -> Result<WeightTable> {
    if degree == 0 {
        return Err(Error::ZeroDegree);
    }
    let base = stability_threshold(z);
    let mut shifts = 0;
    loop {
        let n0 = base + 2 * shifts as usize;
        match compute_with_threshold(z, degree, n0, params) {
            Ok(mut table) => {
                table.shifts = shifts;
                return Ok(table);
            }
            Err(Error::NearSingular { row, pivot }) => {
                log::debug!("near-singular pivot {pivot:e} at row {row}, n0 = {n0}");
                if shifts == MAX_SHIFT_RETRIES {
                    return Err(Error::NearSingular { row, pivot });
                }
                shifts += 1;
            }
            Err(e) => return Err(e),
        }
    }
}

/// [`compute_weights`] with [`Phase3Params::default`].
pub fn weights(z: &ExpParam, degree: usize) -> Result<WeightTable> {
    compute_weights(z, degree, &Phase3Params::default())
}

fn compute_with_threshold(
    z: &ExpParam,
    degree: usize,
    n0: usize,
    params: &Phase3Params,
) -> Result<WeightTable> {
    let l0 = n0.min(degree);
    let mut table = phase1_recurrence(z, l0);
    table.degree = degree;
    table.n0 = n0;
    if l0 == degree {
        return Ok(table);
    }

    // The far window and the main window are eliminated in one interleaved
    // sweep. The main window's last right-hand side entry needs the far
    // coefficient, which enters linearly and is added after the sweep.
    let gammas = Gammas::new(z);
    let m0 = params.window_start(z, degree);
    let m = params.chain_length();
    let n1 = m0 + (m - 1) / 2;
    let mut far = gamma_rhs(&gammas, m0, m0 + m);
    let mut far_c = vec![Complex64::new(0.0, 0.0); m];
    let mut window = gamma_rhs(&gammas, n0, n1);
    let mut window_c = vec![Complex64::new(0.0, 0.0); n1 - n0];
    window[0] += table.rho[n0];
    let mut far_sweep = Sweep::new(z, m0 + 2);
    let mut window_sweep = Sweep::new(z, n0 + 2);
    let shared = m.min(window.len());
    for i in 0..shared {
        far_sweep.step(i, &mut far[i], &mut far_c[i])?;
        window_sweep.step(i, &mut window[i], &mut window_c[i])?;
    }
    for i in shared..m {
        far_sweep.step(i, &mut far[i], &mut far_c[i])?;
    }
    for i in shared..window.len() {
        window_sweep.step(i, &mut window[i], &mut window_c[i])?;
    }
    let mid = (m - 1) / 2;
    back_substitute(&mut far, &far_c, mid);
    let rho_far = far[mid];
    let last = window.len() - 1;
    window[last] -= rho_far * window_c[last];
    back_substitute(&mut window, &window_c, 0);
    let far = FarCoefficient { n1, rho: rho_far };

    let inv_w = z.z().inv();
    table.rho.extend_from_slice(&window[..degree - n0]);
    for n in n0..degree {
        table
            .omega
            .push(gammas.at(n + 1) - (n + 1) as f64 * inv_w * table.rho[n]);
    }
    table
        .phase_of
        .extend(std::iter::repeat_n(Phase::Tridiagonal, degree - n0));
    table.n1 = Some(far.n1);
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn p(re: f64, im: f64) -> ExpParam {
        ExpParam::new(Complex64::new(re, im)).unwrap()
    }

    #[test]
    fn param_validation() {
        assert_eq!(
            ExpParam::new(Complex64::new(1e-9, 0.0)),
            Err(Error::BelowFloor(1e-9))
        );
        assert!(matches!(
            ExpParam::new(Complex64::new(4.5, 0.0)),
            Err(Error::Inadmissible { .. })
        ));
        assert!(ExpParam::new(Complex64::new(2.17, 3.0)).is_ok());
        assert_eq!(
            ExpParam::new(Complex64::new(f64::NAN, 1.0)),
            Err(Error::NonFinite)
        );
        let snapped = p(1e-16, 100.0);
        assert_eq!(snapped.sigma(), 0.0);
        assert_eq!(p(-1e-10, 100.0).sigma(), -1e-10);
    }

    #[test]
    fn gamma_closed_forms() {
        let z = p(-1.0, 0.0);
        let e2 = (-2.0f64).exp();
        assert!((gamma_n(0, &z) - (1.0 - e2)).norm() < 1e-15);
        assert!((gamma_n(1, &z) + (1.0 + e2)).norm() < 1e-15);
        assert!((gamma_n(0, &z).re - 0.864664716763).abs() < 1e-12);
        assert!((gamma_n(1, &z).re + 1.135335283237).abs() < 1e-12);
        let z = p(0.0, 40.0 * PI);
        assert!(gamma_n(2, &z).norm() < 1e-15);
    }

    #[test]
    fn gamma_even_is_accurate_for_small_z() {
        let z = p(1e-7, 2e-7);
        let w = z.z();
        // (e^{2w} - 1)/w = 2 + 2w + 4w^2/3 + ...
        let series = 2.0 + 2.0 * w + 4.0 / 3.0 * w * w;
        assert!((gamma_n(0, &z) - series).norm() < 1e-15);
    }

    #[test]
    fn seeds_at_minus_one() {
        let s = seed_weights(&p(-1.0, 0.0));
        let e2 = (-2.0f64).exp();
        assert!((s.rho0.re - 0.864664716763).abs() < 1e-12);
        assert!((s.rho1 - (-4.0 * e2)).norm() < 1e-15);
        assert!((s.omega1.re + 0.270670566473).abs() < 1e-12);
        assert_eq!(s.omega0, s.rho0);
    }

    #[test]
    fn rho1_series_matches_closed_form_near_switch() {
        for w in [Complex64::new(-0.99, 0.1), Complex64::new(0.3, -0.95)] {
            let closed = 2.0 * (w + (2.0 * w).exp() * (w - 1.0) + 1.0) / (w * w);
            assert!((rho1_series(w) - closed).norm() < 1e-14);
        }
        let w = Complex64::new(1e-6, 0.0);
        assert!((rho1_series(w) - 4.0 / 3.0 * w * (1.0 + w)).norm() < 1e-18);
    }

    #[test]
    fn thresholds() {
        assert_eq!(stability_threshold(&p(0.0, 100.0)), 101);
        assert_eq!(stability_threshold(&p(-100.0, 0.0)), 21);
        assert_eq!(stability_threshold(&p(-40.0 * PI, 0.0)), 25);
    }

    #[test]
    fn one_recurrence_step() {
        // rho_2 = rho_0 + 4 rho_1 + 2 gamma_2 at z = -1; equals int U_2(s-1) e^{-s} ds.
        let t = phase1_recurrence(&p(-1.0, 0.0), 2);
        assert_eq!(t.rho.len(), 3);
        assert!((t.rho[2].re - 0.42862961850435854).abs() < 1e-14);
        assert!(t.phase_of.iter().all(|&ph| ph == Phase::Recurrence));
    }

    #[test]
    fn chain_length_default() {
        assert_eq!(Phase3Params::default().chain_length(), 107);
        let z = p(-40.0 * PI, 0.0);
        assert_eq!(Phase3Params::default().window_start(&z, 256), 256);
        assert_eq!(Phase3Params::default().window_start(&z, 100), 249);
        assert!(Phase3Params::new(0.0, 1e-10).is_err());
        assert!(Phase3Params::new(1.0, 1.0).is_err());
    }

    #[test]
    fn assembly_structure() {
        let z = p(-40.0 * PI, 0.0);
        let rho25 = Complex64::new(0.25, -0.5);
        let sys = assemble_tridiag(&z, 25, 64, Some(rho25), Some(Complex64::new(0.0, 0.0))).unwrap();
        assert_eq!(sys.size(), 39);
        assert_eq!(sys.rhs[0], 2.0 * gamma_n(27, &z) + rho25);
        assert_eq!(sys.dscale[0], 27.0);
        assert_eq!(*sys.dscale.last().unwrap(), 65.0);
        for (a, b) in sys.superdiag().iter().zip(sys.subdiag()) {
            assert_eq!(*a, -b);
        }

        let free = assemble_tridiag(&z, 250, 357, None, None).unwrap();
        for (j, b) in free.rhs.iter().enumerate() {
            assert_eq!(*b, 2.0 * gamma_n(252 + j, &z));
        }
        assert_eq!(free.rhs.len(), 107);

        assert_eq!(
            assemble_tridiag(&z, 10, 20, Some(rho25), None),
            Err(Error::MixedBoundary)
        );
        assert_eq!(
            assemble_tridiag(&z, 10, 10, None, None),
            Err(Error::EmptyWindow { lo: 10, hi: 10 })
        );
    }

    #[test]
    fn small_coupling_gives_scaled_diagonal() {
        let z = p(-1.0, 0.5);
        let sys = assemble_tridiag(&z, 200, 260, None, None).unwrap();
        let sol = solve_tridiag(&sys, &z).unwrap();
        for (j, v) in sol.iter().enumerate() {
            let approx = 0.5 * z.z() * sys.rhs[j] / sys.dscale[j];
            assert!((v - approx).norm() <= 0.02 * approx.norm());
        }
    }

    #[test]
    fn single_unknown_window() {
        let z = p(-3.0, 1.0);
        let lo = Complex64::new(0.1, 0.2);
        let hi = Complex64::new(-0.3, 0.05);
        let sol = phase2_solve(&z, 7, 8, lo, hi).unwrap();
        // (2*9/z) rho_8 = 2 gamma_9 + rho_7 - rho_9
        let want = (2.0 * gamma_n(9, &z) + lo - hi) * z.z() / 18.0;
        assert!((sol[0] - want).norm() < 1e-15);
    }

    #[test]
    fn short_tables_use_recurrence_only() {
        let z = p(0.0, 40.0 * PI);
        let t = weights(&z, 100).unwrap();
        assert_eq!(t.n1, None);
        assert_eq!(t.rho.len(), 101);
        let direct = phase1_recurrence(&z, 100);
        assert_eq!(t.rho, direct.rho);
        assert_eq!(t.omega, direct.omega);
    }

    #[test]
    fn long_tables_switch_phase_at_n0() {
        let z = p(-40.0 * PI, 0.0);
        let t = weights(&z, 256).unwrap();
        assert_eq!(t.n0, 25);
        assert_eq!(t.n1, Some(256 + 53));
        assert_eq!(t.rho.len(), 257);
        assert_eq!(t.omega.len(), 257);
        assert_eq!(t.phase_of[25], Phase::Recurrence);
        assert_eq!(t.phase_of[26], Phase::Tridiagonal);
        assert_eq!(t.shifts, 0);
    }

    #[test]
    fn degree_one_table() {
        let t = weights(&p(-1.0, 0.0), 1).unwrap();
        assert_eq!(t.rho.len(), 2);
        assert_eq!(weights(&p(-1.0, 0.0), 0), Err(Error::ZeroDegree));
    }
}
