//! Ordinary least squares with classical inference.
//!
//! The solve goes through a Householder QR of the design matrix; the normal
//! equations are never formed. Before solving, the columns are scaled to
//! unit length and the design is rejected as rank deficient when its
//! smallest singular value falls below [`RANK_TOLERANCE`] times the largest.
//! Scaling (but not centering) keeps the intercept collinearity visible while
//! removing spurious ill-conditioning from regressors on very different
//! scales, such as log-differenced money against inflation rates.

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use crate::dist::p_value_two_sided;
use crate::ingest::compensated_sum;
use crate::timeseries::Frame;

pub const INTERCEPT_NAME: &str = "(Intercept)";
pub const RANK_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinregError {
    #[error("column {0:?} not found in frame")]
    MissingColumn(String),
    #[error("regressor {0:?} listed twice")]
    DuplicateRegressor(String),
    #[error("dependent variable {0:?} also listed as a regressor")]
    DependentAmongRegressors(String),
    #[error("{nobs} observations cannot identify {k} coefficients")]
    TooFewObservations { nobs: usize, k: usize },
    #[error("design matrix is rank deficient (singular value ratio {ratio:.3e})")]
    RankDeficient { ratio: f64 },
    #[error("regressor {0:?} has zero variance")]
    ZeroVarianceRegressor(String),
    #[error("non-finite entry in column {0:?}")]
    NonFinite(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("standard error of coefficient {0} is zero")]
    ZeroStandardError(usize),
    #[error("dependent variable has zero total sum of squares")]
    DegenerateDependent,
}

/// `dependent ~ [intercept] + regressors`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegressionSpec {
    pub dependent: String,
    pub regressors: Vec<String>,
    pub include_intercept: bool,
}

impl RegressionSpec {
    pub fn new(dependent: impl Into<String>, regressors: impl IntoIterator<Item = impl Into<String>>) -> Self {
        Self {
            dependent: dependent.into(),
            regressors: regressors.into_iter().map(Into::into).collect(),
            include_intercept: true,
        }
    }

    pub fn without_intercept(mut self) -> Self {
        self.include_intercept = false;
        self
    }

    pub fn validate(&self) -> Result<(), LinregError> {
        for (i, r) in self.regressors.iter().enumerate() {
            if *r == self.dependent {
                return Err(LinregError::DependentAmongRegressors(r.clone()));
            }
            if self.regressors[..i].contains(r) {
                return Err(LinregError::DuplicateRegressor(r.clone()));
            }
        }
        Ok(())
    }
}

/// `T × k` regressor matrix; row `t` is the regressor vector `x_t`.
/// When present, the intercept is column 0.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignMatrix {
    names: Vec<String>,
    x: DMatrix<f64>,
    intercept: bool,
}

impl DesignMatrix {
    /// Builds a design from named columns, prepending a column of ones when
    /// `intercept` is set. With an intercept, constant regressors are rejected.
    pub fn new(columns: &[(&str, &[f64])], intercept: bool) -> Result<Self, LinregError> {
        let nrows = columns.first().map_or(0, |(_, c)| c.len());
        Self::build(nrows, columns, intercept)
    }

    fn build(nrows: usize, columns: &[(&str, &[f64])], intercept: bool) -> Result<Self, LinregError> {
        let k = columns.len() + usize::from(intercept);
        let mut names = Vec::with_capacity(k);
        let mut x = DMatrix::zeros(nrows, k);
        if intercept {
            names.push(INTERCEPT_NAME.to_string());
            x.column_mut(0).fill(1.0);
        }
        let offset = usize::from(intercept);
        for (j, (name, values)) in columns.iter().enumerate() {
            if values.len() != nrows {
                return Err(LinregError::DimensionMismatch { expected: nrows, got: values.len() });
            }
            if values.iter().any(|v| !v.is_finite()) {
                return Err(LinregError::NonFinite(name.to_string()));
            }
            if intercept && values.iter().all(|&v| v == values[0]) {
                return Err(LinregError::ZeroVarianceRegressor(name.to_string()));
            }
            x.column_mut(j + offset).copy_from_slice(values);
            names.push(name.to_string());
        }
        Ok(Self { names, x, intercept })
    }

    /// Design and dependent vector for `spec` over the frame's columns.
    pub fn from_frame(frame: &Frame, spec: &RegressionSpec) -> Result<(Self, Vec<f64>), LinregError> {
        spec.validate()?;
        let get = |name: &str| {
            frame
                .column(name)
                .map(|s| s.values())
                .ok_or_else(|| LinregError::MissingColumn(name.to_string()))
        };
        let y = get(&spec.dependent)?.to_vec();
        if y.iter().any(|v| !v.is_finite()) {
            return Err(LinregError::NonFinite(spec.dependent.clone()));
        }
        let cols = spec
            .regressors
            .iter()
            .map(|r| get(r).map(|v| (r.as_str(), v)))
            .collect::<Result<Vec<_>, _>>()?;
        let design = Self::build(y.len(), &cols, spec.include_intercept)?;
        Ok((design, y))
    }

    pub fn nrows(&self) -> usize {
        self.x.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.x.ncols()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn has_intercept(&self) -> bool {
        self.intercept
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.x
    }

    /// Smallest over largest singular value of the unit-length-column design.
    pub fn condition_ratio(&self) -> f64 {
        let mut scaled = self.x.clone();
        for mut col in scaled.column_iter_mut() {
            let norm = col.norm();
            if norm == 0.0 {
                return 0.0;
            }
            col /= norm;
        }
        let sv = scaled.singular_values();
        let max = sv.max();
        if max == 0.0 {
            0.0
        } else {
            sv.min() / max
        }
    }

    fn check_rank(&self) -> Result<(), LinregError> {
        let ratio = self.condition_ratio();
        if ratio < RANK_TOLERANCE || ratio.is_nan() {
            return Err(LinregError::RankDeficient { ratio });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CovarianceKind {
    Classical,
    NeweyWest { lag: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub names: Vec<String>,
    pub coefficients: Vec<f64>,
    pub residuals: Vec<f64>,
    pub covariance: DMatrix<f64>,
    pub std_errors: Vec<f64>,
    pub t_values: Vec<f64>,
    pub p_values: Vec<f64>,
    pub nobs: usize,
    pub df_resid: usize,
    /// `None` when the total sum of squares is zero.
    pub r_squared: Option<f64>,
    pub rss: f64,
    pub has_intercept: bool,
    pub covariance_kind: CovarianceKind,
}

impl FitResult {
    /// Replaces the covariance and everything derived from it.
    pub(crate) fn with_covariance(mut self, covariance: DMatrix<f64>, std_errors: Vec<f64>, kind: CovarianceKind) -> Self {
        let (t_values, p_values) = inference(&self.coefficients, &std_errors, self.df_resid);
        self.covariance = covariance;
        self.std_errors = std_errors;
        self.t_values = t_values;
        self.p_values = p_values;
        self.covariance_kind = kind;
        self
    }
}

/// t-ratios and two-sided p-values. A zero standard error yields an infinite
/// t-ratio (p = 0), or t = 0 (p = 1) when the coefficient is also zero.
fn inference(beta: &[f64], se: &[f64], df: usize) -> (Vec<f64>, Vec<f64>) {
    beta.iter()
        .zip(se)
        .map(|(&b, &s)| {
            let t = if s > 0.0 {
                b / s
            } else if b == 0.0 {
                0.0
            } else {
                f64::INFINITY.copysign(b)
            };
            (t, p_value_two_sided(t, df as u64))
        })
        .unzip()
}

/// Upper-triangular `R` and `Qᵀy` from the thin QR of the design.
fn qr_parts(x: &DMatrix<f64>, y: &[f64]) -> (DMatrix<f64>, DVector<f64>) {
    let qr = x.clone().qr();
    let r = qr.r();
    let mut qty = DVector::from_column_slice(y);
    qr.q_tr_mul(&mut qty);
    let k = x.ncols();
    (r, qty.rows(0, k).into_owned())
}

/// `(XᵀX)⁻¹` computed as `R⁻¹R⁻ᵀ` from the QR factor.
pub fn xtx_inverse(design: &DesignMatrix) -> DMatrix<f64> {
    let r = design.x.clone().qr().r();
    let k = r.ncols();
    let r_inv = r
        .solve_upper_triangular(&DMatrix::identity(k, k))
        .expect("rank-checked design has invertible R");
    let m = &r_inv * r_inv.transpose();
    (&m + m.transpose()) * 0.5
}

pub fn fit_ols(frame: &Frame, spec: &RegressionSpec) -> Result<(FitResult, DesignMatrix), LinregError> {
    let (design, y) = DesignMatrix::from_frame(frame, spec)?;
    let fit = fit_design(&design, &y)?;
    Ok((fit, design))
}

/// OLS of `y` on `design`.
pub fn fit_design(design: &DesignMatrix, y: &[f64]) -> Result<FitResult, LinregError> {
    let (t, k) = (design.nrows(), design.ncols());
    if y.len() != t {
        return Err(LinregError::DimensionMismatch { expected: t, got: y.len() });
    }
    if k == 0 || t <= k {
        return Err(LinregError::TooFewObservations { nobs: t, k });
    }
    design.check_rank()?;

    let (r, qty) = qr_parts(&design.x, y);
    let beta = r
        .solve_upper_triangular(&qty)
        .ok_or(LinregError::RankDeficient { ratio: 0.0 })?;
    let fitted = &design.x * &beta;
    let residuals: Vec<f64> = y.iter().zip(fitted.iter()).map(|(yi, fi)| yi - fi).collect();
    let rss: f64 = residuals.iter().map(|e| e * e).sum();
    let df_resid = t - k;
    let s2 = rss / df_resid as f64;
    let covariance = xtx_inverse(design) * s2;
    let std_errors = covariance.diagonal().iter().map(|v| v.max(0.0).sqrt()).collect();
    let coefficients: Vec<f64> = beta.iter().copied().collect();

    let fit = FitResult {
        names: design.names.clone(),
        coefficients,
        residuals,
        covariance: DMatrix::zeros(k, k),
        std_errors: Vec::new(),
        t_values: Vec::new(),
        p_values: Vec::new(),
        nobs: t,
        df_resid,
        r_squared: None,
        rss,
        has_intercept: design.intercept,
        covariance_kind: CovarianceKind::Classical,
    };
    let mut fit = fit.with_covariance(covariance, std_errors, CovarianceKind::Classical);
    fit.r_squared = r_squared(&fit, y).ok();
    Ok(fit)
}

/// `β_i / SE_i` for every coefficient.
pub fn t_statistics(fit: &FitResult) -> Result<Vec<f64>, LinregError> {
    fit.coefficients
        .iter()
        .zip(&fit.std_errors)
        .enumerate()
        .map(|(i, (b, s))| if *s > 0.0 { Ok(b / s) } else { Err(LinregError::ZeroStandardError(i)) })
        .collect()
}

/// `1 − RSS/TSS`; TSS is centered when the fit has an intercept.
pub fn r_squared(fit: &FitResult, y: &[f64]) -> Result<f64, LinregError> {
    if y.len() != fit.residuals.len() {
        return Err(LinregError::DimensionMismatch { expected: fit.residuals.len(), got: y.len() });
    }
    let center = if fit.has_intercept { compensated_sum(y) / y.len() as f64 } else { 0.0 };
    let tss: f64 = y.iter().map(|v| (v - center).powi(2)).sum();
    if tss == 0.0 {
        return Err(LinregError::DegenerateDependent);
    }
    Ok(1.0 - fit.rss / tss)
}
