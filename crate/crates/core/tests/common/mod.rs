//! Brute-force reference computations shared by the integration tests.
//! Nothing here calls into the crate's linear algebra.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Rows = Vec<Vec<f64>>;

/// Gauss-Jordan inverse with partial pivoting.
pub fn gauss_jordan_inverse(a: &Rows) -> Rows {
    let n = a.len();
    let mut aug: Rows = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| aug[i][col].abs().total_cmp(&aug[j][col].abs()))
            .unwrap();
        aug.swap(col, pivot);
        let p = aug[col][col];
        assert!(p != 0.0, "singular matrix");
        for v in aug[col].iter_mut() {
            *v /= p;
        }
        for r in 0..n {
            if r != col {
                let f = aug[r][col];
                if f != 0.0 {
                    for c in 0..2 * n {
                        aug[r][c] -= f * aug[col][c];
                    }
                }
            }
        }
    }
    aug.into_iter().map(|r| r[n..].to_vec()).collect()
}

pub fn xtx(x: &Rows) -> Rows {
    let k = x[0].len();
    let mut m = vec![vec![0.0; k]; k];
    for row in x {
        for i in 0..k {
            for j in 0..k {
                m[i][j] += row[i] * row[j];
            }
        }
    }
    m
}

pub fn mat_mul(a: &Rows, b: &Rows) -> Rows {
    let (n, m, p) = (a.len(), b.len(), b[0].len());
    let mut out = vec![vec![0.0; p]; n];
    for i in 0..n {
        for j in 0..p {
            for l in 0..m {
                out[i][j] += a[i][l] * b[l][j];
            }
        }
    }
    out
}

/// `β = (X'X)⁻¹ X'y` by explicit inversion.
pub fn normal_equations(x: &Rows, y: &[f64]) -> Vec<f64> {
    let inv = gauss_jordan_inverse(&xtx(x));
    let k = inv.len();
    let mut xty = vec![0.0; k];
    for (row, yt) in x.iter().zip(y) {
        for i in 0..k {
            xty[i] += row[i] * yt;
        }
    }
    (0..k).map(|i| (0..k).map(|j| inv[i][j] * xty[j]).sum()).collect()
}

/// Newey-West covariance evaluated literally, term by term:
/// `(X'X)⁻¹ [Σ_t x_t'x_t ε_t² + Σ_l w_l Σ_{t>l} (x_t'x_{t−l} + x_{t−l}'x_t) ε_t ε_{t−l}] (X'X)⁻¹`.
pub fn naive_newey_west(x: &Rows, e: &[f64], lag: usize) -> Rows {
    let (t_len, k) = (x.len(), x[0].len());
    let mut meat = vec![vec![0.0; k]; k];
    for t in 0..t_len {
        for i in 0..k {
            for j in 0..k {
                meat[i][j] += x[t][i] * x[t][j] * e[t] * e[t];
            }
        }
    }
    for l in 1..=lag {
        let w = 1.0 - l as f64 / (lag as f64 + 1.0);
        for t in l..t_len {
            for i in 0..k {
                for j in 0..k {
                    let cross = x[t][i] * x[t - l][j] + x[t - l][i] * x[t][j];
                    meat[i][j] += w * cross * e[t] * e[t - l];
                }
            }
        }
    }
    let bread = gauss_jordan_inverse(&xtx(x));
    mat_mul(&mat_mul(&bread, &meat), &bread)
}

/// Random regression instance: rows of `k` regressors (first column ones when
/// `intercept`), and a dependent vector with noise.
pub fn random_instance(rng: &mut ChaCha8Rng, t_len: usize, k: usize, intercept: bool) -> (Rows, Vec<f64>) {
    let x: Rows = (0..t_len)
        .map(|_| {
            (0..k)
                .map(|j| if intercept && j == 0 { 1.0 } else { rng.random_range(-2.0..2.0) })
                .collect()
        })
        .collect();
    let beta: Vec<f64> = (0..k).map(|_| rng.random_range(-3.0..3.0)).collect();
    let y = x
        .iter()
        .map(|row| row.iter().zip(&beta).map(|(a, b)| a * b).sum::<f64>() + rng.random_range(-1.0..1.0))
        .collect();
    (x, y)
}

pub fn max_abs(m: &Rows) -> f64 {
    m.iter().flatten().fold(0.0_f64, |a, v| a.max(v.abs()))
}

/// Largest entry-wise difference relative to the largest entry of `reference`.
pub fn rel_matrix_err(got: &Rows, reference: &Rows) -> f64 {
    let diff = got
        .iter()
        .flatten()
        .zip(reference.iter().flatten())
        .fold(0.0_f64, |a, (g, r)| a.max((g - r).abs()));
    diff / max_abs(reference)
}

pub fn rel_vec_err(got: &[f64], reference: &[f64]) -> f64 {
    let num: f64 = got.iter().zip(reference).map(|(g, r)| (g - r).powi(2)).sum::<f64>().sqrt();
    let den: f64 = reference.iter().map(|r| r * r).sum::<f64>().sqrt();
    num / den
}

/// Plain Dickey-Fuller t-ratio from the closed-form simple regression
/// `Δy_t = ρ y_{t−1} + e_t` (no intercept): `ρ̂ = Σ y_{t−1}Δy_t / Σ y_{t−1}²`.
pub fn dickey_fuller_no_constant(y: &[f64]) -> f64 {
    let n = y.len() - 1;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for t in 1..y.len() {
        sxy += y[t - 1] * (y[t] - y[t - 1]);
        sxx += y[t - 1] * y[t - 1];
    }
    let rho = sxy / sxx;
    let rss: f64 = (1..y.len())
        .map(|t| (y[t] - y[t - 1] - rho * y[t - 1]).powi(2))
        .sum();
    let s2 = rss / (n as f64 - 1.0);
    rho / (s2 / sxx).sqrt()
}

pub fn normal_draws(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.sample(rand_distr::StandardNormal)).collect()
}

/// `y_t = φ y_{t−1} + ε_t`, `y_0 = ε_0`; `φ = 1` gives a driftless random walk.
pub fn ar1(rng: &mut ChaCha8Rng, n: usize, phi: f64) -> Vec<f64> {
    let eps = normal_draws(rng, n);
    let mut y = Vec::with_capacity(n);
    let mut prev = 0.0;
    for e in eps {
        prev = phi * prev + e;
        y.push(prev);
    }
    y
}
