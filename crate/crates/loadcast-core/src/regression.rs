//! Trend-plus-seasonal-dummy regression, fit by ordinary least squares.
//!
//! The model is Y_t = c0 + t0·t + Σ_j β_j·d_j(t) with season 1 as the
//! reference level, so there are s−1 dummy coefficients. The solver is a
//! Householder QR factorization; with at most thirteen columns the problem
//! is tiny and benign.

use alloc::vec;
use alloc::vec::Vec;

use crate::math::{abs, sqrt};
use crate::{Error, Result};

/// Dense row-major matrix, just big enough for the regression designs here.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.cols + c] = v;
    }

    /// One row as a slice.
    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
}

/// Builds the n × (s+1) design with columns [1, t, d_2, ..., d_s].
///
/// t runs 1..=n and d_j(t) is 1 exactly when ((t−1) mod s)+1 = j. The
/// matrix has full column rank whenever n ≥ s+1.
pub fn design_matrix(n: usize, s: usize) -> Result<Matrix> {
    if n < s + 1 {
        return Err(Error::UnderdeterminedDesign {
            rows: n,
            cols: s + 1,
        });
    }
    let mut x = Matrix::zeros(n, s + 1);
    for t in 1..=n {
        let r = t - 1;
        x.set(r, 0, 1.0);
        x.set(r, 1, t as f64);
        let season = (t - 1) % s + 1;
        if season >= 2 {
            x.set(r, 1 + season - 1, 1.0);
        }
    }
    Ok(x)
}

/// Least squares via Householder QR. Errors on rank deficiency.
pub fn ols_fit(x: &Matrix, y: &[f64]) -> Result<Vec<f64>> {
    if y.len() != x.rows() {
        return Err(Error::LengthMismatch {
            left: x.rows(),
            right: y.len(),
        });
    }
    if x.rows() < x.cols() {
        return Err(Error::UnderdeterminedDesign {
            rows: x.rows(),
            cols: x.cols(),
        });
    }
    let (n, m) = (x.rows(), x.cols());
    let mut a = x.clone();
    let mut rhs = y.to_vec();

    // Largest column norm, for the rank tolerance.
    let mut max_norm: f64 = 0.0;
    for c in 0..m {
        let norm = sqrt((0..n).map(|r| a.get(r, c) * a.get(r, c)).sum::<f64>());
        max_norm = max_norm.max(norm);
    }
    let tol = 1e-10 * max_norm.max(1.0);

    for k in 0..m {
        // Householder vector for column k, rows k..n.
        let norm = sqrt((k..n).map(|r| a.get(r, k) * a.get(r, k)).sum::<f64>());
        if norm <= tol {
            return Err(Error::RankDeficient);
        }
        let alpha = if a.get(k, k) >= 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = (k..n).map(|r| a.get(r, k)).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|e| e * e).sum();
        if vnorm2 > 0.0 {
            for c in k..m {
                let dot: f64 = (k..n).map(|r| v[r - k] * a.get(r, c)).sum();
                let f = 2.0 * dot / vnorm2;
                for r in k..n {
                    let val = a.get(r, c) - f * v[r - k];
                    a.set(r, c, val);
                }
            }
            let dot: f64 = (k..n).map(|r| v[r - k] * rhs[r]).sum();
            let f = 2.0 * dot / vnorm2;
            for r in k..n {
                rhs[r] -= f * v[r - k];
            }
        }
        a.set(k, k, alpha);
        if abs(alpha) <= tol {
            return Err(Error::RankDeficient);
        }
    }

    // Back substitution on the R factor.
    let mut coef = vec![0.0; m];
    for k in (0..m).rev() {
        let mut acc = rhs[k];
        for c in k + 1..m {
            acc -= a.get(k, c) * coef[c];
        }
        coef[k] = acc / a.get(k, k);
    }
    Ok(coef)
}

/// A fitted trend-plus-dummy regression.
#[derive(Debug, Clone, PartialEq)]
pub struct RegressionFit {
    period: usize,
    intercept: f64,
    trend: f64,
    /// β_2..β_s, offsets relative to season 1.
    betas: Vec<f64>,
    fitted: Vec<f64>,
    n: usize,
}

impl RegressionFit {
    pub fn period(&self) -> usize {
        self.period
    }

    pub fn intercept(&self) -> f64 {
        self.intercept
    }

    pub fn trend(&self) -> f64 {
        self.trend
    }

    pub fn betas(&self) -> &[f64] {
        &self.betas
    }

    pub fn fitted(&self) -> &[f64] {
        &self.fitted
    }

    /// Evaluates the regression at t = n+1..n+horizon with the matching
    /// seasonal dummy active.
    pub fn forecast(&self, horizon: usize) -> Result<Vec<f64>> {
        if horizon == 0 {
            return Err(Error::InvalidHorizon);
        }
        Ok((1..=horizon)
            .map(|h| {
                let t = self.n + h;
                self.evaluate_at(t)
            })
            .collect())
    }

    fn evaluate_at(&self, t: usize) -> f64 {
        let season = (t - 1) % self.period + 1;
        let seasonal = if season >= 2 {
            self.betas[season - 2]
        } else {
            0.0
        };
        self.intercept + self.trend * t as f64 + seasonal
    }
}

/// Fits the seasonal-dummy regression to a training series.
pub fn fit_regression(train: &[f64], s: usize) -> Result<RegressionFit> {
    if s != 4 && s != 12 {
        return Err(Error::InvalidPeriod(s));
    }
    let n = train.len();
    let x = design_matrix(n, s)?;
    let coef = ols_fit(&x, train)?;
    let fitted = (0..n)
        .map(|r| {
            x.row(r)
                .iter()
                .zip(&coef)
                .map(|(a, b)| a * b)
                .sum::<f64>()
        })
        .collect();
    Ok(RegressionFit {
        period: s,
        intercept: coef[0],
        trend: coef[1],
        betas: coef[2..].to_vec(),
        fitted,
        n,
    })
}
