//! Augmented Dickey-Fuller unit-root test.
//!
//! The test regression is
//!
//! ```text
//! Δy_t = ρ·y_{t−1} + Σ_{i=1..p} γ_i·Δy_{t−i} [+ c] [+ δ·t] + e_t
//! ```
//!
//! and the statistic is the classical t-ratio on `ρ`, compared against the
//! left tail of the Dickey-Fuller distribution. Critical values come from
//! MacKinnon's (2010) response surfaces, `cv(n) = β∞ + β1/n + β2/n² + β3/n³`
//! in the effective sample size `n`.

use serde::Serialize;
use thiserror::Error;

use crate::linreg::{fit_design, DesignMatrix, LinregError};
use crate::timeseries::{diff, Frame, Series, SeriesError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum UnitRootError {
    #[error("series {name:?} has {len} observations; lag order {lags} with {deterministic} deterministic terms needs more")]
    SeriesTooShort { name: String, len: usize, lags: usize, deterministic: usize },
    #[error("series {0:?} is constant")]
    ZeroVariance(String),
    #[error("test regression for {0:?} fits exactly; the statistic is undefined")]
    DegenerateFit(String),
    #[error("critical values need an effective sample of at least 10, got {0}")]
    SampleTooSmall(usize),
    #[error(transparent)]
    Regression(#[from] LinregError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Deterministic terms in the test regression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AdfVariant {
    None,
    Constant,
    ConstantTrend,
}

impl AdfVariant {
    pub fn deterministic_terms(self) -> usize {
        match self {
            AdfVariant::None => 0,
            AdfVariant::Constant => 1,
            AdfVariant::ConstantTrend => 2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            AdfVariant::None => "none",
            AdfVariant::Constant => "constant",
            AdfVariant::ConstantTrend => "constant+trend",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LagSelection {
    Fixed(usize),
    /// Minimise AIC over `0..=max_lag` on a common sample.
    Aic { max_lag: usize },
}

impl Default for LagSelection {
    fn default() -> Self {
        LagSelection::Fixed(0)
    }
}

/// Schwert's bound `⌊12·(T/100)^{1/4}⌋`, the default ceiling for AIC search.
pub fn schwert_max_lag(nobs: usize) -> usize {
    (12.0 * (nobs as f64 / 100.0).powf(0.25)).floor() as usize
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalValues {
    pub one_pct: f64,
    pub five_pct: f64,
    pub ten_pct: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Significance {
    None,
    At10,
    At5,
    At1,
}

impl Significance {
    pub fn stars(self) -> &'static str {
        match self {
            Significance::None => "",
            Significance::At10 => "*",
            Significance::At5 => "**",
            Significance::At1 => "***",
        }
    }
}

impl CriticalValues {
    /// Left-tail grading of a statistic.
    pub fn grade(&self, statistic: f64) -> Significance {
        if statistic < self.one_pct {
            Significance::At1
        } else if statistic < self.five_pct {
            Significance::At5
        } else if statistic < self.ten_pct {
            Significance::At10
        } else {
            Significance::None
        }
    }
}

// MacKinnon (2010), "Critical Values for Cointegration Tests", Table 2, N = 1.
// Rows: 1%, 5%, 10%; columns: β∞, β1, β2, β3.
const SURFACE_NONE: [[f64; 4]; 3] = [
    [-2.56574, -2.2358, -3.627, 0.0],
    [-1.94100, -0.2686, -3.365, 31.223],
    [-1.61682, 0.2656, -2.714, 25.364],
];
const SURFACE_CONSTANT: [[f64; 4]; 3] = [
    [-3.43035, -6.5393, -16.786, -79.433],
    [-2.86154, -2.8903, -4.234, -40.040],
    [-2.56677, -1.5384, -2.809, 0.0],
];
const SURFACE_TREND: [[f64; 4]; 3] = [
    [-3.95877, -9.0531, -28.428, -134.155],
    [-3.41049, -4.3904, -9.036, -45.374],
    [-3.12705, -2.5856, -3.925, -22.380],
];

pub const MIN_CRITICAL_SAMPLE: usize = 10;

pub fn critical_values(variant: AdfVariant, n: usize) -> Result<CriticalValues, UnitRootError> {
    if n < MIN_CRITICAL_SAMPLE {
        return Err(UnitRootError::SampleTooSmall(n));
    }
    let surface = match variant {
        AdfVariant::None => &SURFACE_NONE,
        AdfVariant::Constant => &SURFACE_CONSTANT,
        AdfVariant::ConstantTrend => &SURFACE_TREND,
    };
    let inv = 1.0 / n as f64;
    let eval = |b: &[f64; 4]| b[0] + inv * (b[1] + inv * (b[2] + inv * b[3]));
    Ok(CriticalValues {
        one_pct: eval(&surface[0]),
        five_pct: eval(&surface[1]),
        ten_pct: eval(&surface[2]),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdfResult {
    pub statistic: f64,
    pub variant: AdfVariant,
    pub lag_order: usize,
    pub nobs_used: usize,
    /// Absent when the effective sample is below [`MIN_CRITICAL_SAMPLE`].
    pub critical_values: Option<CriticalValues>,
    pub significance: Option<Significance>,
}

struct TestRegression {
    statistic: f64,
    rss: f64,
    nobs: usize,
    k: usize,
}

/// Fits the test regression with `lags` augmentation terms, using only
/// observations `t ≥ first` (so several lag orders can share a sample).
fn test_regression(
    name: &str,
    y: &[f64],
    dy: &[f64],
    variant: AdfVariant,
    lags: usize,
    first: usize,
) -> Result<TestRegression, UnitRootError> {
    // dy[t-1] = y[t] - y[t-1]; rows are t = first..len(y)-1
    let rows = first..y.len();
    let dep: Vec<f64> = rows.clone().map(|t| dy[t - 1]).collect();
    let level: Vec<f64> = rows.clone().map(|t| y[t - 1]).collect();
    let aug: Vec<Vec<f64>> = (1..=lags)
        .map(|i| rows.clone().map(|t| dy[t - 1 - i]).collect())
        .collect();
    let trend: Vec<f64> = (1..=dep.len()).map(|i| i as f64).collect();
    let aug_names: Vec<String> = (1..=lags).map(|i| format!("dy_l{i}")).collect();

    let mut cols: Vec<(&str, &[f64])> = vec![("y_l1", &level)];
    cols.extend(aug_names.iter().map(String::as_str).zip(aug.iter().map(Vec::as_slice)));
    if variant == AdfVariant::ConstantTrend {
        cols.push(("trend", &trend));
    }
    let intercept = variant != AdfVariant::None;
    let too_short = || UnitRootError::SeriesTooShort {
        name: name.to_string(),
        len: y.len(),
        lags,
        deterministic: variant.deterministic_terms(),
    };
    let design = DesignMatrix::new(&cols, intercept).map_err(|e| match e {
        LinregError::ZeroVarianceRegressor(_) => UnitRootError::DegenerateFit(name.to_string()),
        e => e.into(),
    })?;
    let fit = fit_design(&design, &dep).map_err(|e| match e {
        LinregError::TooFewObservations { .. } => too_short(),
        e => e.into(),
    })?;
    let rho = usize::from(intercept);
    if fit.std_errors[rho] <= 0.0 {
        return Err(UnitRootError::DegenerateFit(name.to_string()));
    }
    Ok(TestRegression {
        statistic: fit.coefficients[rho] / fit.std_errors[rho],
        rss: fit.rss,
        nobs: fit.nobs,
        k: design.ncols(),
    })
}

fn aic(reg: &TestRegression) -> f64 {
    let n = reg.nobs as f64;
    let llf = -0.5 * n * ((2.0 * std::f64::consts::PI).ln() + (reg.rss / n).ln() + 1.0);
    -2.0 * llf + 2.0 * reg.k as f64
}

pub fn adf_test(s: &Series, variant: AdfVariant, selection: LagSelection) -> Result<AdfResult, UnitRootError> {
    let y = s.values();
    let max_lag = match selection {
        LagSelection::Fixed(p) | LagSelection::Aic { max_lag: p } => p,
    };
    if y.len() < max_lag + 3 + variant.deterministic_terms() {
        return Err(UnitRootError::SeriesTooShort {
            name: s.name().to_string(),
            len: y.len(),
            lags: max_lag,
            deterministic: variant.deterministic_terms(),
        });
    }
    if y.iter().all(|&v| v == y[0]) {
        return Err(UnitRootError::ZeroVariance(s.name().to_string()));
    }
    let dy: Vec<f64> = y.windows(2).map(|w| w[1] - w[0]).collect();

    let lag_order = match selection {
        LagSelection::Fixed(p) => p,
        LagSelection::Aic { max_lag } => {
            let mut best = (f64::INFINITY, 0);
            for p in 0..=max_lag {
                let reg = test_regression(s.name(), y, &dy, variant, p, max_lag + 1)?;
                let score = aic(&reg);
                if score < best.0 {
                    best = (score, p);
                }
            }
            best.1
        }
    };

    let reg = test_regression(s.name(), y, &dy, variant, lag_order, lag_order + 1)?;
    let critical_values = critical_values(variant, reg.nobs).ok();
    Ok(AdfResult {
        statistic: reg.statistic,
        variant,
        lag_order,
        nobs_used: reg.nobs,
        critical_values,
        significance: critical_values.map(|cv| cv.grade(reg.statistic)),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StationarityRow {
    pub variable: String,
    pub differenced: bool,
    pub result: AdfResult,
}

impl StationarityRow {
    pub fn label(&self) -> String {
        if self.differenced {
            format!("{} (First Difference)", self.variable)
        } else {
            self.variable.clone()
        }
    }
}

/// ADF results for every column in levels, followed by every column in first differences.
pub fn stationarity_report(
    frame: &Frame,
    variant: AdfVariant,
    selection: LagSelection,
) -> Result<Vec<StationarityRow>, UnitRootError> {
    let mut rows = Vec::with_capacity(2 * frame.columns().len());
    for differenced in [false, true] {
        for c in frame.columns() {
            let series = if differenced { diff(c, 1)? } else { c.clone() };
            rows.push(StationarityRow {
                variable: c.name().to_string(),
                differenced,
                result: adf_test(&series, variant, selection)?,
            });
        }
    }
    Ok(rows)
}
