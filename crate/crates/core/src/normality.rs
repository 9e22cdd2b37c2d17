//! Shapiro-Wilk W test for normality, following Royston's algorithm AS R94
//! (Applied Statistics 44, 1995) for complete samples of size 3..=5000.
//!
//! Coefficients `a_i` come from Royston's polynomial correction of the
//! normalized expected normal order statistics, and the p-value from his
//! normalizing transformation of `log(1 − W)`. Ties are accepted as-is.

use serde::Serialize;
use thiserror::Error;

use crate::dist::{normal_quantile, normal_sf};

pub const MIN_SAMPLE: usize = 3;
pub const MAX_SAMPLE: usize = 5000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NormalityError {
    #[error("Shapiro-Wilk needs at least {MIN_SAMPLE} observations, got {0}")]
    SampleTooSmall(usize),
    #[error("Shapiro-Wilk supports at most {MAX_SAMPLE} observations, got {0}")]
    SampleTooLarge(usize),
    #[error("sample has zero variance")]
    ZeroVariance,
    #[error("sample contains a non-finite value")]
    NonFinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SwResult {
    pub w_statistic: f64,
    pub p_value: f64,
    pub n: usize,
}

// polynomial coefficients, lowest order first
const C1: [f64; 6] = [0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056];
const C2: [f64; 6] = [0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633];
const C3: [f64; 4] = [0.5440, -0.39978, 0.025054, -6.714e-4];
const C4: [f64; 4] = [1.3822, -0.77857, 0.062767, -0.0020322];
const C5: [f64; 4] = [-1.5861, -0.31082, -0.083751, 0.0038915];
const C6: [f64; 3] = [-0.4803, -0.082676, 0.0030302];
const G: [f64; 2] = [-2.273, 0.459];
const SMALL_P: f64 = 1e-19;

fn poly(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &ci| acc * x + ci)
}

/// Upper-half coefficients `a_1 ≥ a_2 ≥ … > 0` for a sample of size `n`;
/// the full antisymmetric vector has unit Euclidean norm.
pub fn coefficients(n: usize) -> Vec<f64> {
    assert!(n >= MIN_SAMPLE, "need n >= 3");
    let half = n / 2;
    if n == 3 {
        return vec![std::f64::consts::FRAC_1_SQRT_2];
    }
    let an = n as f64;
    let m: Vec<f64> = (1..=half)
        .map(|i| normal_quantile((i as f64 - 0.375) / (an + 0.25)))
        .collect();
    let summ2 = 2.0 * m.iter().map(|v| v * v).sum::<f64>();
    let ssumm2 = summ2.sqrt();
    let rsn = 1.0 / an.sqrt();
    let a1 = poly(&C1, rsn) - m[0] / ssumm2;

    let mut a = vec![0.0; half];
    let (first_plain, fac) = if n > 5 {
        let a2 = -m[1] / ssumm2 + poly(&C2, rsn);
        let fac = ((summ2 - 2.0 * m[0] * m[0] - 2.0 * m[1] * m[1])
            / (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2))
            .sqrt();
        a[1] = a2;
        (2, fac)
    } else {
        let fac = ((summ2 - 2.0 * m[0] * m[0]) / (1.0 - 2.0 * a1 * a1)).sqrt();
        (1, fac)
    };
    a[0] = a1;
    for i in first_plain..half {
        a[i] = -m[i] / fac;
    }
    a
}

pub fn shapiro_wilk(x: &[f64]) -> Result<SwResult, NormalityError> {
    let n = x.len();
    if n < MIN_SAMPLE {
        return Err(NormalityError::SampleTooSmall(n));
    }
    if n > MAX_SAMPLE {
        return Err(NormalityError::SampleTooLarge(n));
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(NormalityError::NonFinite);
    }
    let mut sorted = x.to_vec();
    sorted.sort_by(f64::total_cmp);
    let range = sorted[n - 1] - sorted[0];
    if range <= 0.0 {
        return Err(NormalityError::ZeroVariance);
    }
    let a = coefficients(n);
    let half = n / 2;
    // full antisymmetric coefficient for the i-th order statistic
    let coef = |i: usize| {
        if i < half {
            -a[i]
        } else if n - 1 - i < half {
            a[n - 1 - i]
        } else {
            0.0
        }
    };

    // squared correlation between coefficients and range-scaled order statistics
    let an = n as f64;
    let scaled: Vec<f64> = sorted.iter().map(|v| (v - sorted[0]) / range).collect();
    let mean_x = scaled.iter().sum::<f64>() / an;
    let mean_a = (0..n).map(coef).sum::<f64>() / an;
    let (mut ssa, mut ssx, mut sax) = (0.0, 0.0, 0.0);
    for (i, &xi) in scaled.iter().enumerate() {
        let da = coef(i) - mean_a;
        let dx = xi - mean_x;
        ssa += da * da;
        ssx += dx * dx;
        sax += da * dx;
    }
    let ssassx = (ssa * ssx).sqrt();
    let w1 = ((ssassx - sax) * (ssassx + sax) / (ssa * ssx)).max(0.0);
    let w = 1.0 - w1;

    let p_value = if n == 3 {
        let pi6 = 6.0 / std::f64::consts::PI;
        (1.0 - pi6 * w.sqrt().acos()).max(0.0)
    } else if n <= 11 {
        let gamma = poly(&G, an);
        let y = w1.ln();
        if y >= gamma {
            SMALL_P
        } else {
            let y = -(gamma - y).ln();
            let m = poly(&C3, an);
            let s = poly(&C4, an).exp();
            normal_sf((y - m) / s)
        }
    } else {
        let xx = an.ln();
        let m = poly(&C5, xx);
        let s = poly(&C6, xx).exp();
        normal_sf((w1.ln() - m) / s)
    };

    Ok(SwResult { w_statistic: w, p_value: p_value.clamp(0.0, 1.0), n })
}
