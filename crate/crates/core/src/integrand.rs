//! Integrands on `[0, 2]` and the builtin registry used by the CLI and the
//! experiment harnesses.

use crate::cheb::cheb_t_unchecked;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

type EvalFn = dyn Fn(f64) -> Complex64 + Send + Sync;

/// A function `s -> f(s)` on `[0, 2]`. The closure may be called from several
/// threads at once.
#[derive(Clone)]
pub struct Integrand {
    label: String,
    eval: Arc<EvalFn>,
}

impl fmt::Debug for Integrand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Integrand").field("label", &self.label).finish()
    }
}

impl Integrand {
    pub fn new<F>(label: impl Into<String>, f: F) -> Self
    where
        F: Fn(f64) -> Complex64 + Send + Sync + 'static,
    {
        Self {
            label: label.into(),
            eval: Arc::new(f),
        }
    }

    pub fn real<F>(label: impl Into<String>, f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::new(label, move |s| Complex64::new(f(s), 0.0))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    #[inline]
    pub fn eval(&self, s: f64) -> Complex64 {
        (self.eval)(s)
    }

    /// `a f + b g`.
    pub fn combine(a: Complex64, f: &Integrand, b: Complex64, g: &Integrand) -> Integrand {
        let (f, g) = (f.clone(), g.clone());
        let label = format!("({a})*{}+({b})*{}", f.label, g.label);
        Integrand::new(label, move |s| a * f.eval(s) + b * g.eval(s))
    }

    pub fn constant(c: f64) -> Self {
        Self::real(format!("constant:{c}"), move |_| c)
    }

    pub fn monomial(k: u32) -> Self {
        Self::real(format!("monomial:{k}"), move |s| s.powi(k as i32))
    }

    /// `T_d(s - 1)`.
    pub fn chebyshev(d: usize) -> Self {
        Self::real(format!("chebyshev:{d}"), move |s| cheb_t_unchecked(d, s - 1.0))
    }

    /// `P_n(s - 1)`, Legendre polynomial of degree `n`.
    pub fn legendre(n: usize) -> Self {
        Self::real(format!("legendre:{n}"), move |s| legendre_p(n, s - 1.0))
    }

    /// `cos(5 pi s) / (4 + sin(4 pi s))`.
    pub fn smooth_j() -> Self {
        Self::real("smooth-j", |s| (5.0 * PI * s).cos() / (4.0 + (4.0 * PI * s).sin()))
    }

    /// `(2(2 - s))^alpha`; zero at `s = 2` for `alpha > 0`.
    pub fn alpha_singular(alpha: f64) -> Self {
        Self::real(format!("alpha:{alpha}"), move |s| {
            let base = 2.0 * (2.0 - s);
            if base <= 0.0 {
                0.0
            } else {
                base.powf(alpha)
            }
        })
    }

    /// Parses a builtin name: `constant[:c]`, `monomial:k`, `chebyshev:d`,
    /// `legendre:n`, `smooth-j`, `alpha:a` (with `alpha-half` and
    /// `alpha-three-halves` as aliases).
    pub fn builtin(spec: &str) -> Result<Self> {
        let (name, arg) = match spec.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (spec, None),
        };
        let bad = || Error::InvalidParameter(format!("unknown integrand '{spec}'"));
        let int_arg = || -> Result<usize> { arg.ok_or_else(bad)?.parse().map_err(|_| bad()) };
        match name {
            "constant" => {
                let c = match arg {
                    Some(a) => a.parse().map_err(|_| bad())?,
                    None => 1.0,
                };
                Ok(Self::constant(c))
            }
            "monomial" => Ok(Self::monomial(int_arg()? as u32)),
            "chebyshev" => Ok(Self::chebyshev(int_arg()?)),
            "legendre" => Ok(Self::legendre(int_arg()?)),
            "smooth-j" => Ok(Self::smooth_j()),
            "alpha-half" => Ok(Self::alpha_singular(0.5)),
            "alpha-three-halves" => Ok(Self::alpha_singular(1.5)),
            "alpha" => {
                let a: f64 = arg.ok_or_else(bad)?.parse().map_err(|_| bad())?;
                if a > 0.0 && a.is_finite() {
                    Ok(Self::alpha_singular(a))
                } else {
                    Err(bad())
                }
            }
            _ => Err(bad()),
        }
    }
}

/// `P_n(x)` from `(n+1) P_{n+1} = (2n+1) x P_n - n P_{n-1}`.
pub fn legendre_p(n: usize, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let (mut prev, mut cur) = (1.0, x);
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * x * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}
