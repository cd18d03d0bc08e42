//! The product Clenshaw-Curtis rule
//!
//! ```text
//! I_{L,z}(f) = sum''_{l=0..L} alpha_{l,L}(f) omega_l(z)
//! ```
//!
//! A [`ProductRule`] samples `f` once and can then be applied to any number of
//! exponent parameters.

use crate::cheb::{dct1_coeffs, ChebCoeffs, ChebGrid};
use crate::error::{Error, Result};
use crate::integrand::Integrand;
use crate::oracle::{integrate_weights, Kind, PanelRule};
use crate::weights::{compute_weights, ExpParam, Phase3Params, WeightTable, MIN_MODULUS};
use num_complex::Complex64;
use rayon::prelude::*;

#[derive(Debug, Clone, PartialEq)]
pub struct RuleResult {
    pub value: Complex64,
    pub degree: usize,
    pub z: ExpParam,
    /// `|alpha_{L-1}| + |alpha_L|`. Heuristic only; not an error bound.
    pub coeff_tail: f64,
}

/// `sum'' alpha_l omega_l` with the first and last products halved.
pub fn apply_weights(coeffs: &ChebCoeffs, omega: &[Complex64]) -> Complex64 {
    let alpha = coeffs.alpha();
    let last = alpha.len() - 1;
    let inner: Complex64 = (1..last).map(|l| alpha[l] * omega[l]).sum();
    inner + 0.5 * (alpha[0] * omega[0] + alpha[last] * omega[last])
}

/// Chebyshev coefficients of one integrand at one degree, ready to be paired
/// with weight tables.
#[derive(Debug, Clone)]
pub struct ProductRule {
    coeffs: ChebCoeffs,
    params: Phase3Params,
}

impl ProductRule {
    pub fn new(f: &Integrand, degree: usize) -> Result<Self> {
        let grid = ChebGrid::new(degree)?;
        let samples = grid.sample(|s| f.eval(s));
        if samples.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self {
            coeffs: dct1_coeffs(&samples)?,
            params: Phase3Params::default(),
        })
    }

    pub fn from_coeffs(coeffs: ChebCoeffs) -> Self {
        Self {
            coeffs,
            params: Phase3Params::default(),
        }
    }

    pub fn with_params(mut self, params: Phase3Params) -> Self {
        self.params = params;
        self
    }

    pub fn degree(&self) -> usize {
        self.coeffs.degree()
    }

    pub fn coeffs(&self) -> &ChebCoeffs {
        &self.coeffs
    }

    pub fn apply(&self, z: &ExpParam) -> Result<RuleResult> {
        let table = compute_weights(z, self.degree(), &self.params)?;
        Ok(self.apply_table(&table))
    }

    pub fn apply_table(&self, table: &WeightTable) -> RuleResult {
        RuleResult {
            value: apply_weights(&self.coeffs, &table.omega),
            degree: self.degree(),
            z: table.z,
            coeff_tail: self.coeffs.tail(),
        }
    }

    /// Like [`apply`](Self::apply) but accepts any `z`; below the engine floor
    /// the weights come from the brute-force integrator instead.
    pub fn apply_complex(&self, z: Complex64, mu0: f64) -> Result<Complex64> {
        if z.norm() < MIN_MODULUS {
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(Error::NonFinite);
            }
            let rule = PanelRule::resolving(self.degree(), z.norm());
            let omega = integrate_weights(self.degree(), z, Kind::T, &rule);
            return Ok(apply_weights(&self.coeffs, &omega));
        }
        let param = ExpParam::with_ceiling(z, mu0)?;
        Ok(self.apply(&param)?.value)
    }

    /// One result per parameter, in order; failures stay in their slot.
    pub fn apply_batch(&self, zs: &[ExpParam]) -> Vec<Result<RuleResult>> {
        zs.par_iter().map(|z| self.apply(z)).collect()
    }
}

/// `I_{L,z}(f)` for a single parameter.
pub fn integrate(f: &Integrand, z: &ExpParam, degree: usize) -> Result<RuleResult> {
    ProductRule::new(f, degree)?.apply(z)
}

/// Samples `f` once (`L + 1` evaluations) and applies the rule to every `z`.
pub fn integrate_batch(f: &Integrand, zs: &[ExpParam], degree: usize) -> Result<Vec<Result<RuleResult>>> {
    Ok(ProductRule::new(f, degree)?.apply_batch(zs))
}

/// Self-convergence errors `|I_{L_i, z_j} - I_{L_ref, z_j}|`, one row per `L_i`.
pub fn convergence_table(
    f: &Integrand,
    zs: &[ExpParam],
    degrees: &[usize],
    reference_degree: usize,
) -> Result<Vec<Vec<f64>>> {
    if let Some(&max) = degrees.iter().max() {
        if reference_degree <= max {
            return Err(Error::InvalidParameter(format!(
                "reference degree {reference_degree} must exceed every listed degree (max {max})"
            )));
        }
    }
    let reference: Vec<Complex64> = ProductRule::new(f, reference_degree)?
        .apply_batch(zs)
        .into_iter()
        .map(|r| r.map(|r| r.value))
        .collect::<Result<_>>()?;
    degrees
        .iter()
        .map(|&degree| {
            let rule = ProductRule::new(f, degree)?;
            rule.apply_batch(zs)
                .into_iter()
                .zip(&reference)
                .map(|(r, exact)| r.map(|r| (r.value - exact).norm()))
                .collect()
        })
        .collect()
}
