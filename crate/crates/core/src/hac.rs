//! Newey-West heteroskedasticity and autocorrelation consistent (HAC)
//! covariance for OLS coefficients.
//!
//! ```text
//! V = (X'X)⁻¹ Ω (X'X)⁻¹
//! Ω = Σ_t x_t x_t' ε̂_t²  +  Σ_{l=1..L} w_l Σ_{t=l+1..T} (x_t x_{t−l}' + x_{t−l} x_t') ε̂_t ε̂_{t−l}
//! w_l = 1 − l/(L+1)            (Bartlett)
//! ```
//!
//! Bartlett weights keep `Ω` positive semidefinite. With `L = 0` the cross
//! terms vanish and `V` is White's HC0 sandwich.
//!
//! Two scalings are offered. [`HacScaling::StandardSandwich`] is the usual
//! estimator above. [`HacScaling::PaperFormula`] additionally divides by `T`,
//! which is how the formula is sometimes printed with a leading `1/T`; since
//! the bread here is `(X'X)⁻¹` rather than `(X'X/T)⁻¹`, that variant shrinks
//! standard errors by `√T` and is kept only for comparison.

use nalgebra::DMatrix;
use thiserror::Error;

use crate::linreg::{xtx_inverse, CovarianceKind, DesignMatrix, FitResult};

/// Diagonal entries down to this value are treated as rounding noise and clamped to zero.
pub const NEGATIVE_DIAGONAL_TOLERANCE: f64 = -1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HacError {
    #[error("lag {lag} outside 1..={max}")]
    LagOutOfRange { lag: usize, max: usize },
    #[error("lag truncation {lag} too large for {nobs} observations (needs L < T − 1)")]
    LagTooLarge { lag: usize, nobs: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("covariance diagonal entry {index} is negative ({value:e})")]
    NegativeDiagonal { index: usize, value: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HacScaling {
    /// Extra `1/T` factor applied to the sandwich.
    PaperFormula,
    #[default]
    StandardSandwich,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HacConfig {
    pub lag: usize,
    pub scaling: HacScaling,
    /// Multiply by `T/(T−k)`.
    pub small_sample_adjust: bool,
}

impl Default for HacConfig {
    fn default() -> Self {
        Self { lag: 4, scaling: HacScaling::StandardSandwich, small_sample_adjust: false }
    }
}

impl HacConfig {
    pub fn with_lag(lag: usize) -> Self {
        Self { lag, ..Self::default() }
    }
}

/// Bartlett kernel weight `1 − l/(L+1)` for `1 ≤ l ≤ L`.
pub fn bartlett_weight(l: usize, max_lag: usize) -> Result<f64, HacError> {
    if l == 0 || l > max_lag {
        return Err(HacError::LagOutOfRange { lag: l, max: max_lag });
    }
    Ok(1.0 - l as f64 / (max_lag as f64 + 1.0))
}

/// Newey-West rule of thumb `⌊4·(T/100)^{2/9}⌋`. Only used when asked for.
pub fn auto_lag(nobs: usize) -> usize {
    (4.0 * (nobs as f64 / 100.0).powf(2.0 / 9.0)).floor() as usize
}

/// The middle term `Ω` of the sandwich.
pub fn long_run_meat(design: &DesignMatrix, residuals: &[f64], lag: usize) -> Result<DMatrix<f64>, HacError> {
    let x = design.matrix();
    let t = x.nrows();
    if residuals.len() != t {
        return Err(HacError::DimensionMismatch { expected: t, got: residuals.len() });
    }
    if lag + 1 >= t {
        return Err(HacError::LagTooLarge { lag, nobs: t });
    }
    // scores u_t = x_t ε̂_t, one per row
    let mut scores = x.clone();
    for (mut row, &e) in scores.row_iter_mut().zip(residuals) {
        row *= e;
    }
    let mut omega = scores.transpose() * &scores;
    for l in 1..=lag {
        let w = bartlett_weight(l, lag)?;
        let current = scores.rows(l, t - l);
        let lagged = scores.rows(0, t - l);
        let gamma = current.transpose() * lagged;
        omega += (&gamma + gamma.transpose()) * w;
    }
    Ok(omega)
}

pub fn newey_west_cov(design: &DesignMatrix, residuals: &[f64], cfg: &HacConfig) -> Result<DMatrix<f64>, HacError> {
    let omega = long_run_meat(design, residuals, cfg.lag)?;
    let bread = xtx_inverse(design);
    let v = &bread * omega * &bread;
    let mut v = (&v + v.transpose()) * 0.5;
    let (t, k) = (design.nrows() as f64, design.ncols() as f64);
    if cfg.scaling == HacScaling::PaperFormula {
        v /= t;
    }
    if cfg.small_sample_adjust {
        v *= t / (t - k);
    }
    Ok(v)
}

/// Square roots of the covariance diagonal.
pub fn robust_se(v: &DMatrix<f64>) -> Result<Vec<f64>, HacError> {
    v.diagonal()
        .iter()
        .enumerate()
        .map(|(index, &value)| {
            if value < NEGATIVE_DIAGONAL_TOLERANCE || value.is_nan() {
                Err(HacError::NegativeDiagonal { index, value })
            } else {
                Ok(value.max(0.0).sqrt())
            }
        })
        .collect()
}

/// Same fit with its covariance, standard errors, t-values and p-values
/// replaced by their Newey-West counterparts. Coefficients and residuals are untouched.
pub fn refit_with_hac(fit: &FitResult, design: &DesignMatrix, cfg: &HacConfig) -> Result<FitResult, HacError> {
    if design.ncols() != fit.coefficients.len() {
        return Err(HacError::DimensionMismatch { expected: fit.coefficients.len(), got: design.ncols() });
    }
    let v = newey_west_cov(design, &fit.residuals, cfg)?;
    let se = robust_se(&v)?;
    Ok(fit.clone().with_covariance(v, se, CovarianceKind::NeweyWest { lag: cfg.lag }))
}
