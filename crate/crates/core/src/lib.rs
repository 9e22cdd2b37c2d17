//! Quarterly time-series econometrics.
//!
//! The crate covers one empirical workflow end to end:
//!
//! 1. [`ingest`] a wide quarterly CSV into a [`Frame`], logging selected columns;
//! 2. test each column for a unit root with the augmented Dickey-Fuller test
//!    ([`unitroot`]), in levels and first differences;
//! 3. fit OLS on the differenced data ([`linreg`]) and replace the classical
//!    covariance with a Newey-West HAC estimate ([`hac`]);
//! 4. check the residuals with the Shapiro-Wilk test ([`normality`]).
//!
//! ```
//! use tsecon::{hac, linreg, normality, timeseries::{Frame, Period, Series}};
//!
//! let start = Period::new(2001, 4)?;
//! let x: Vec<f64> = (0..40).map(|i| ((i * 7 % 11) as f64).sin()).collect();
//! let y: Vec<f64> = x.iter().enumerate().map(|(i, v)| 0.5 + 2.0 * v + 0.1 * ((i * 5 % 7) as f64 - 3.0)).collect();
//! let frame = Frame::new(vec![Series::new("y", start, y)?, Series::new("x", start, x)?])?;
//!
//! let spec = linreg::RegressionSpec::new("y", ["x"]);
//! let (fit, design) = linreg::fit_ols(&frame, &spec)?;
//! let robust = hac::refit_with_hac(&fit, &design, &hac::HacConfig::with_lag(4))?;
//! assert_eq!(robust.coefficients, fit.coefficients);
//!
//! let sw = normality::shapiro_wilk(&robust.residuals)?;
//! assert!(sw.w_statistic > 0.0 && sw.w_statistic <= 1.0);
//! # Ok::<(), tsecon::Error>(())
//! ```

pub mod dist;
pub mod hac;
pub mod ingest;
pub mod linreg;
pub mod normality;
pub mod timeseries;
pub mod unitroot;

pub use timeseries::{Frame, Period, Series};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Series(#[from] timeseries::SeriesError),
    #[error(transparent)]
    Ingest(#[from] ingest::IngestError),
    #[error(transparent)]
    Regression(#[from] linreg::LinregError),
    #[error(transparent)]
    Hac(#[from] hac::HacError),
    #[error(transparent)]
    UnitRoot(#[from] unitroot::UnitRootError),
    #[error(transparent)]
    Normality(#[from] normality::NormalityError),
}

// The guide's Rust snippets compile and run as doctests of this crate.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/timeseries.md")]
    mod timeseries {}
    #[doc = include_str!("../../../book/src/ingest.md")]
    mod ingest {}
    #[doc = include_str!("../../../book/src/ols.md")]
    mod ols {}
    #[doc = include_str!("../../../book/src/newey-west.md")]
    mod newey_west {}
    #[doc = include_str!("../../../book/src/adf.md")]
    mod adf {}
    #[doc = include_str!("../../../book/src/shapiro-wilk.md")]
    mod shapiro_wilk {}
}
