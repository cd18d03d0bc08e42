//! Laplace-transform inversion for one spectral mode of
//!
//! ```text
//! u'(t) - D_t^{-alpha} (-lam_eig) u(t) = f(t),   u(0) = u0,
//! ```
//!
//! along the hyperbola `z(xi) = lambda (1 - sin(delta - i xi))`. The forcing
//! term at every contour node is an integral of the form handled by
//! [`ProductRule`], so one inversion exercises the rule over a wide sweep of
//! complex parameters.
//!
//! The step is `k = c_k / sqrt(N)`. [`ContourSpec::with_step`] overrides it.

use crate::error::{Error, Result};
use crate::integrand::Integrand;
use crate::quadrature::ProductRule;
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::sync::Arc;

/// Parameter ceiling used for the inner integrals. Nodes near the vertex of
/// the hyperbola have `Re((t/2) z) > 0`.
pub const INNER_MU0: f64 = 4.0;

/// Resolvent evaluations closer than this to a pole are rejected.
pub const POLE_GUARD: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourSpec {
    pub lambda: f64,
    pub delta: f64,
    pub k: f64,
    pub n: usize,
    pub alpha: f64,
}

impl ContourSpec {
    pub fn new(lambda: f64, delta: f64, k: f64, n: usize, alpha: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::InvalidParameter(format!("lambda must be positive, got {lambda}")));
        }
        if !(delta > 0.0 && delta < FRAC_PI_2) {
            return Err(Error::InvalidParameter(format!("delta must lie in (0, pi/2), got {delta}")));
        }
        if !(k.is_finite() && k > 0.0) {
            return Err(Error::InvalidParameter(format!("step must be positive, got {k}")));
        }
        if n == 0 {
            return Err(Error::InvalidParameter("N must be at least 1".into()));
        }
        check_alpha(alpha)?;
        Ok(Self { lambda, delta, k, n, alpha })
    }

    /// Same contour with an explicit step.
    pub fn with_step(self, k: f64) -> Result<Self> {
        Self::new(self.lambda, self.delta, k, self.n, self.alpha)
    }

    pub fn z(&self, xi: f64) -> Complex64 {
        self.lambda * (1.0 - Complex64::new(self.delta, -xi).sin())
    }

    pub fn dz(&self, xi: f64) -> Complex64 {
        Complex64::i() * self.lambda * Complex64::new(self.delta, -xi).cos()
    }

    /// `(z_j, z'_j)` for `j = -N..=N`.
    pub fn nodes(&self) -> Vec<(Complex64, Complex64)> {
        let n = self.n as i64;
        (-n..=n)
            .map(|j| {
                let xi = j as f64 * self.k;
                (self.z(xi), self.dz(xi))
            })
            .collect()
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > -1.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("alpha must lie in (-1, 1), got {alpha}")))
    }
}

/// Intermediate constants of the default contour tuning.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tuning {
    pub beta: f64,
    pub delta0: f64,
    pub r_c: f64,
    pub gamma_c: f64,
    pub kappa: f64,
    pub c_k: f64,
}

impl Tuning {
    pub fn for_alpha(alpha: f64) -> Self {
        let beta = FRAC_PI_4 + PI / (2.0 * (1.0 + alpha));
        let delta0 = -FRAC_PI_4 + PI / (2.0 * (1.0 + alpha));
        let r_c = beta - 0.9 * (delta0 + FRAC_PI_2);
        let gamma_c = 1.8 * (1.0 + alpha);
        let kappa = 1.0 - (delta0 - r_c).sin();
        let c_k = (4.0 * PI * r_c / gamma_c).sqrt();
        Self { beta, delta0, r_c, gamma_c, kappa, c_k }
    }
}

/// Contour tuned for the time window `(0, T]`.
pub fn paper_tuning(t_max: f64, alpha: f64, n: usize) -> Result<ContourSpec> {
    if !(t_max.is_finite() && t_max > 0.0) {
        return Err(Error::InvalidParameter(format!("T must be positive, got {t_max}")));
    }
    check_alpha(alpha)?;
    let tu = Tuning::for_alpha(alpha);
    let lambda = 2.0 * tu.gamma_c / (tu.kappa * t_max);
    let k = tu.c_k / (n.max(1) as f64).sqrt();
    ContourSpec::new(lambda, tu.delta0, k, n, alpha)
}

/// One spectral mode: eigenvalue, initial value, forcing.
#[derive(Clone)]
pub struct ScalarProblem {
    lam_eig: f64,
    u0: Complex64,
    f: Arc<dyn Fn(f64) -> Complex64 + Send + Sync>,
    alpha: f64,
}

impl std::fmt::Debug for ScalarProblem {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fm.debug_struct("ScalarProblem")
            .field("lam_eig", &self.lam_eig)
            .field("u0", &self.u0)
            .field("alpha", &self.alpha)
            .finish_non_exhaustive()
    }
}

impl ScalarProblem {
    pub fn new<F>(lam_eig: f64, u0: Complex64, alpha: f64, f: F) -> Result<Self>
    where
        F: Fn(f64) -> Complex64 + Send + Sync + 'static,
    {
        if !(lam_eig.is_finite() && lam_eig > 0.0) {
            return Err(Error::InvalidParameter(format!("lam_eig must be positive, got {lam_eig}")));
        }
        check_alpha(alpha)?;
        Ok(Self { lam_eig, u0, f: Arc::new(f), alpha })
    }

    /// `u0 = 1`, `f(t) = sin t`.
    pub fn sine_forced(lam_eig: f64, alpha: f64) -> Result<Self> {
        Self::new(lam_eig, Complex64::new(1.0, 0.0), alpha, |t| Complex64::new(t.sin(), 0.0))
    }

    pub fn lam_eig(&self) -> f64 {
        self.lam_eig
    }

    pub fn u0(&self) -> Complex64 {
        self.u0
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn forcing(&self, t: f64) -> Complex64 {
        (self.f)(t)
    }

    /// `s -> f(t (1 - s/2))` on `[0, 2]`.
    pub fn pulled_back(&self, t: f64) -> Integrand {
        let f = Arc::clone(&self.f);
        Integrand::new(format!("f(t(1-s/2)), t={t}"), move |s| f(t * (1.0 - 0.5 * s)))
    }
}

/// `z^alpha / (z^{1+alpha} + lam_eig)` on the principal branch.
pub fn resolvent(z: Complex64, prob: &ScalarProblem) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    let za = if prob.alpha == 0.0 { Complex64::new(1.0, 0.0) } else { z.powf(prob.alpha) };
    let denom = za * z + prob.lam_eig;
    if denom.norm() < POLE_GUARD {
        return Err(Error::PoleProximity(z));
    }
    Ok(za / denom)
}

fn check_time(t: f64) -> Result<()> {
    if t.is_finite() && t > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("t must be positive, got {t}")))
    }
}

fn g_with_rule(z: Complex64, t: f64, u0: Complex64, rule: &ProductRule) -> Result<Complex64> {
    let inner = rule.apply_complex(0.5 * t * z, INNER_MU0)?;
    Ok((z * t).exp() * u0 + 0.5 * t * inner)
}

/// `e^{zt} u0 + int_0^t e^{z(t-s)} f(s) ds`, the integral by the product rule
/// of degree `degree` after mapping `[0, t]` onto `[0, 2]`.
pub fn g_term(z: Complex64, t: f64, prob: &ScalarProblem, degree: usize) -> Result<Complex64> {
    check_time(t)?;
    let rule = ProductRule::new(&prob.pulled_back(t), degree)?;
    g_with_rule(z, t, prob.u0, &rule)
}

/// `U_N(t) = k/(2 pi i) sum_j E(z_j) g(z_j, t) z'_j`.
pub fn invert(t: f64, prob: &ScalarProblem, contour: &ContourSpec, degree: usize) -> Result<Complex64> {
    check_time(t)?;
    let rule = ProductRule::new(&prob.pulled_back(t), degree)?;
    let terms: Vec<Complex64> = contour
        .nodes()
        .par_iter()
        .map(|&(z, dz)| Ok(resolvent(z, prob)? * g_with_rule(z, t, prob.u0, &rule)? * dz))
        .collect::<Result<_>>()?;
    let sum: Complex64 = terms.iter().sum();
    Ok(sum * contour.k / (2.0 * PI * Complex64::i()))
}

/// `U_N` at several times; the forcing is sampled once per time.
pub fn invert_many(ts: &[f64], prob: &ScalarProblem, contour: &ContourSpec, degree: usize) -> Result<Vec<Complex64>> {
    ts.iter().map(|&t| invert(t, prob, contour, degree)).collect()
}

/// Exact solution for `alpha = 0`, `f = sin`: `e^{-l t} u0 + (l sin t - cos t + e^{-l t}) / (1 + l^2)`.
pub fn heat_sine_exact(t: f64, lam_eig: f64, u0: f64) -> f64 {
    let decay = (-lam_eig * t).exp();
    decay * u0 + (lam_eig * t.sin() - t.cos() + decay) / (1.0 + lam_eig * lam_eig)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{integrate_full, PanelRule};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn tuning_constants_for_half() {
        let tu = Tuning::for_alpha(0.5);
        assert!((tu.delta0 - PI / 12.0).abs() < 1e-15);
        assert!((tu.gamma_c - 2.7).abs() < 1e-15);
        assert!((tu.c_k - 0.9235).abs() < 5e-4, "{}", tu.c_k);
        assert!((tu.kappa - 0.9215).abs() < 5e-4, "{}", tu.kappa);
        let spec = paper_tuning(1.0, 0.5, 16).unwrap();
        assert!((spec.lambda - 5.86).abs() < 0.01, "{}", spec.lambda);
        assert!((spec.k - tu.c_k / 4.0).abs() < 1e-15);
    }

    #[test]
    fn derivative_matches_finite_differences() {
        let spec = paper_tuning(2.0, 0.3, 20).unwrap();
        let h = 1e-6;
        for i in 0..20 {
            let xi = -4.0 + 0.4 * i as f64;
            let fd = (spec.z(xi + h) - spec.z(xi - h)) / (2.0 * h);
            let exact = spec.dz(xi);
            assert!((fd - exact).norm() <= 1e-8 * exact.norm(), "xi={xi}");
        }
    }

    #[test]
    fn nodes_are_conjugate_symmetric() {
        let spec = paper_tuning(1.0, 0.5, 7).unwrap();
        let nodes = spec.nodes();
        let n = nodes.len();
        for j in 0..n {
            let (z, dz) = nodes[j];
            let (zm, dzm) = nodes[n - 1 - j];
            assert!((z - zm.conj()).norm() < 1e-14 * z.norm().max(1.0));
            assert!((dz + dzm.conj()).norm() < 1e-14 * dz.norm().max(1.0));
        }
    }

    #[test]
    fn resolvent_trivial_cases() {
        let heat = ScalarProblem::sine_forced(1.0, 0.0).unwrap();
        assert!((resolvent(c(1.0, 0.0), &heat).unwrap() - 0.5).norm() < 1e-16);
        let z = c(-0.3, 2.0);
        assert!((resolvent(z, &heat).unwrap() - 1.0 / (z + 1.0)).norm() < 1e-15);
        assert!(matches!(resolvent(c(-1.0, 0.0), &heat), Err(Error::PoleProximity(_))));
    }

    #[test]
    fn g_term_closed_forms() {
        let zero = ScalarProblem::new(1.0, c(2.0, -1.0), 0.0, |_| Complex64::new(0.0, 0.0)).unwrap();
        let z = c(-3.0, 4.0);
        let got = g_term(z, 1.5, &zero, 8).unwrap();
        assert!((got - (1.5 * z).exp() * c(2.0, -1.0)).norm() < 1e-15);

        let one = ScalarProblem::new(1.0, c(1.0, 0.0), 0.0, |_| Complex64::new(1.0, 0.0)).unwrap();
        let t = 0.7;
        let want = (z * t).exp() + ((z * t).exp() - 1.0) / z;
        assert!((g_term(z, t, &one, 4).unwrap() - want).norm() < 1e-14);
    }

    #[test]
    fn g_term_matches_time_integral() {
        let prob = ScalarProblem::sine_forced(1.0, 0.0).unwrap();
        let z = c(-3.0, 0.0);
        let got = g_term(z, 1.0, &prob, 32).unwrap();
        // e^{-3} + int_0^1 e^{-3(1-s)} sin s ds, integrated directly in s on [0, 1]
        // by rescaling to [0, 2]: s = u/2.
        let conv = 0.5 * integrate_full(|u| (-3.0f64).exp() * Complex64::new((0.5 * u).sin(), 0.0), c(1.5, 0.0), &PanelRule::uniform(32));
        let want = (-3.0f64).exp() + conv;
        assert!((got - want).norm() < 1e-12, "{got} {want}");
    }

    #[test]
    fn homogeneous_zero_data_gives_zero() {
        let prob = ScalarProblem::new(1.0, c(0.0, 0.0), 0.5, |_| Complex64::new(0.0, 0.0)).unwrap();
        let spec = paper_tuning(1.0, 0.5, 10).unwrap();
        assert_eq!(invert(1.0, &prob, &spec, 8).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn heat_mode_converges() {
        let prob = ScalarProblem::sine_forced(1.0, 0.0).unwrap();
        let exact = heat_sine_exact(1.0, 1.0, 1.0);
        let want = (-1.0f64).exp() + (1.0f64.sin() - 1.0f64.cos() + (-1.0f64).exp()) / 2.0;
        assert!((exact - want).abs() < 1e-15);
        let err = |n| (invert(1.0, &prob, &paper_tuning(1.0, 0.0, n).unwrap(), 32).unwrap() - exact).norm();
        let (e9, e36) = (err(9), err(36));
        assert!(e36 < e9 / 10.0, "{e9} {e36}");
        let u = invert(1.0, &prob, &paper_tuning(1.0, 0.0, 36).unwrap(), 32).unwrap();
        assert!(u.im.abs() < 1e-12);
    }
}
