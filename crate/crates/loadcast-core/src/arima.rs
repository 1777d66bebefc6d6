//! Seasonal ARIMA forecasting with conditional-sum-of-squares estimation.
//!
//! The model on the differenced, mean-adjusted series z is
//! φ(B)Φ(B^s)·z_t = θ(B)Θ(B^s)·ε_t with the usual negative-sign moving
//! average convention. Estimation minimizes the conditional sum of squared
//! one-step residuals with pre-sample residuals fixed at zero and
//! pre-sample observations at the model mean; the optimizer is a
//! deterministic multi-start pattern search, so identical inputs give
//! bit-identical coefficients.
//!
//! A constant term is included only for undifferenced models (the mean of
//! the differenced series); once any differencing is applied the constant
//! is zero, which keeps e.g. a fitted random walk forecasting flat.

use alloc::vec;
use alloc::vec::Vec;

use crate::math::{ln, mean};
use crate::{Error, Result};

/// Bounds on the order grid; the search space stays small by construction.
const MAX_NONSEASONAL_ARMA: usize = 2;
const MAX_NONSEASONAL_DIFF: usize = 1;
const MAX_SEASONAL: usize = 1;

/// Coefficient box for stationarity/invertibility during optimization.
const COEFF_BOUND: f64 = 0.99;
/// Multi-start values applied to every coordinate.
const STARTS: [f64; 3] = [-0.5, 0.0, 0.5];
/// Pattern-search step schedule: halve from the initial step until below
/// the floor.
const INITIAL_STEP: f64 = 0.25;
const STEP_FLOOR: f64 = 1e-7;
/// Cap on improving sweeps per step level; exceeding it marks the fit as
/// not converged.
const MAX_SWEEPS_PER_LEVEL: usize = 60;

/// A (p,d,q)(P,D,Q)_s model order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SarimaOrder {
    pub p: usize,
    pub d: usize,
    pub q: usize,
    pub seasonal_p: usize,
    pub seasonal_d: usize,
    pub seasonal_q: usize,
    pub season: usize,
}

impl SarimaOrder {
    pub fn new(
        p: usize,
        d: usize,
        q: usize,
        seasonal_p: usize,
        seasonal_d: usize,
        seasonal_q: usize,
        season: usize,
    ) -> Result<Self> {
        if p > MAX_NONSEASONAL_ARMA || q > MAX_NONSEASONAL_ARMA {
            return Err(Error::InvalidOrder("p and q must be at most 2"));
        }
        if d > MAX_NONSEASONAL_DIFF {
            return Err(Error::InvalidOrder("d must be at most 1"));
        }
        if seasonal_p > MAX_SEASONAL || seasonal_d > MAX_SEASONAL || seasonal_q > MAX_SEASONAL {
            return Err(Error::InvalidOrder("P, D and Q must be at most 1"));
        }
        if season != 4 && season != 12 {
            return Err(Error::InvalidOrder("season must be 4 or 12"));
        }
        Ok(SarimaOrder {
            p,
            d,
            q,
            seasonal_p,
            seasonal_d,
            seasonal_q,
            season,
        })
    }

    /// Number of ARMA coefficients to estimate.
    pub fn param_count(&self) -> usize {
        self.p + self.q + self.seasonal_p + self.seasonal_q
    }

    /// Observations consumed by differencing.
    pub fn diff_len(&self) -> usize {
        self.d + self.seasonal_d * self.season
    }

    /// Minimum training length this order can be fitted on.
    pub fn min_train_len(&self) -> usize {
        self.diff_len()
            + self.season * self.seasonal_p.max(self.seasonal_q)
            + self.p.max(self.q)
            + 5
    }

    /// Whether a constant term is estimated (only without differencing).
    pub fn has_mean(&self) -> bool {
        self.d == 0 && self.seasonal_d == 0
    }
}

impl core::fmt::Display for SarimaOrder {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "({},{},{})({},{},{}){}",
            self.p, self.d, self.q, self.seasonal_p, self.seasonal_d, self.seasonal_q, self.season
        )
    }
}

/// Applies (1−B^s)^D then (1−B)^d; output length is n − d − D·s.
pub fn difference(values: &[f64], d: usize, seasonal_d: usize, season: usize) -> Result<Vec<f64>> {
    let consumed = d + seasonal_d * season;
    if values.len() <= consumed {
        return Err(Error::InsufficientData {
            context: "differencing",
            needed: consumed + 1,
            actual: values.len(),
        });
    }
    let mut out = values.to_vec();
    for _ in 0..seasonal_d {
        out = out.windows(season + 1).map(|w| w[season] - w[0]).collect();
    }
    for _ in 0..d {
        out = out.windows(2).map(|w| w[1] - w[0]).collect();
    }
    Ok(out)
}

/// Lag/coefficient pairs of the expanded AR and MA polynomial products,
/// written so that z_t = Σ ar·z_{t−lag} + ε_t + Σ ma·ε_{t−lag}.
fn expanded_terms(order: &SarimaOrder, params: &[f64]) -> (Vec<(usize, f64)>, Vec<(usize, f64)>) {
    let (ar_lags, ma_lags) = lag_layout(order);
    let mut ar_coef = vec![0.0; ar_lags.len()];
    let mut ma_coef = vec![0.0; ma_lags.len()];
    fill_coefficients(order, params, &mut ar_coef, &mut ma_coef);
    (
        ar_lags.into_iter().zip(ar_coef).collect(),
        ma_lags.into_iter().zip(ma_coef).collect(),
    )
}

/// Lag positions of the expanded polynomials; fixed for a given order.
/// AR: [1..p], then per seasonal j: [j·s], [j·s+1 .. j·s+p]. MA mirrors it.
fn lag_layout(order: &SarimaOrder) -> (Vec<usize>, Vec<usize>) {
    let s = order.season;
    let one_side = |n: usize, sn: usize| {
        let mut lags = Vec::with_capacity(n + sn * (n + 1));
        for i in 1..=n {
            lags.push(i);
        }
        for j in 1..=sn {
            lags.push(j * s);
            for i in 1..=n {
                lags.push(j * s + i);
            }
        }
        lags
    };
    (
        one_side(order.p, order.seasonal_p),
        one_side(order.q, order.seasonal_q),
    )
}

/// Writes the expanded coefficients for `params` into the buffers laid out
/// by [`lag_layout`].
fn fill_coefficients(order: &SarimaOrder, params: &[f64], ar: &mut [f64], ma: &mut [f64]) {
    let (p, q, sp, sq) = (order.p, order.q, order.seasonal_p, order.seasonal_q);
    let phi = &params[..p];
    let theta = &params[p..p + q];
    let sphi = &params[p + q..p + q + sp];
    let stheta = &params[p + q + sp..p + q + sp + sq];

    let mut k = 0;
    for c in phi {
        ar[k] = *c;
        k += 1;
    }
    for c in sphi {
        ar[k] = *c;
        k += 1;
        for ci in phi {
            ar[k] = -ci * c;
            k += 1;
        }
    }

    let mut k = 0;
    for c in theta {
        ma[k] = -*c;
        k += 1;
    }
    for c in stheta {
        ma[k] = -*c;
        k += 1;
        for ci in theta {
            ma[k] = ci * c;
            k += 1;
        }
    }
}

/// Reusable CSS evaluator: one allocation per fit, not per objective call.
struct CssEvaluator<'a> {
    z: &'a [f64],
    order: &'a SarimaOrder,
    ar_lags: Vec<usize>,
    ma_lags: Vec<usize>,
    ar_coef: Vec<f64>,
    ma_coef: Vec<f64>,
    eps: Vec<f64>,
}

impl<'a> CssEvaluator<'a> {
    fn new(z: &'a [f64], order: &'a SarimaOrder) -> Self {
        let (ar_lags, ma_lags) = lag_layout(order);
        CssEvaluator {
            z,
            order,
            ar_coef: vec![0.0; ar_lags.len()],
            ma_coef: vec![0.0; ma_lags.len()],
            ar_lags,
            ma_lags,
            eps: Vec::with_capacity(z.len()),
        }
    }

    fn css(&mut self, params: &[f64]) -> f64 {
        fill_coefficients(self.order, params, &mut self.ar_coef, &mut self.ma_coef);
        self.eps.clear();
        let mut total = 0.0;
        for t in 0..self.z.len() {
            let mut predicted = 0.0;
            for (lag, c) in self.ar_lags.iter().zip(&self.ar_coef) {
                if t >= *lag {
                    predicted += c * self.z[t - lag];
                }
            }
            for (lag, c) in self.ma_lags.iter().zip(&self.ma_coef) {
                if t >= *lag {
                    predicted += c * self.eps[t - lag];
                }
            }
            let e = self.z[t] - predicted;
            self.eps.push(e);
            total += e * e;
        }
        total
    }
}

/// One-step residuals of the ARMA recursion on a mean-adjusted series,
/// with zero pre-sample values.
fn residuals_on(z: &[f64], order: &SarimaOrder, params: &[f64]) -> Vec<f64> {
    let mut eval = CssEvaluator::new(z, order);
    eval.css(params);
    eval.eps
}

fn model_mean(w: &[f64], order: &SarimaOrder) -> f64 {
    if order.has_mean() {
        mean(w)
    } else {
        0.0
    }
}

/// Conditional sum of squared one-step residuals on the differenced series.
///
/// `params` is laid out as [φ_1..φ_p, ω_1..ω_q, Φ_1..Φ_P, Θ_1..Θ_Q].
/// Pre-sample residuals are zero and pre-sample observations sit at the
/// model mean, so the objective is a deterministic function of its inputs.
pub fn css_objective(params: &[f64], w: &[f64], order: &SarimaOrder) -> f64 {
    assert_eq!(params.len(), order.param_count(), "parameter vector length");
    assert!(!w.is_empty(), "empty differenced series");
    let mu = model_mean(w, order);
    let z: Vec<f64> = w.iter().map(|v| v - mu).collect();
    residuals_on(&z, order, params).iter().map(|e| e * e).sum()
}

/// A fitted seasonal ARIMA model.
#[derive(Debug, Clone, PartialEq)]
pub struct SarimaFit {
    order: SarimaOrder,
    ar: Vec<f64>,
    ma: Vec<f64>,
    seasonal_ar: Vec<f64>,
    seasonal_ma: Vec<f64>,
    mu: f64,
    sigma2: f64,
    residuals: Vec<f64>,
    fitted: Vec<f64>,
    fitted_offset: usize,
    converged: bool,
    train: Vec<f64>,
}

impl SarimaFit {
    pub fn order(&self) -> &SarimaOrder {
        &self.order
    }

    pub fn ar(&self) -> &[f64] {
        &self.ar
    }

    pub fn ma(&self) -> &[f64] {
        &self.ma
    }

    pub fn seasonal_ar(&self) -> &[f64] {
        &self.seasonal_ar
    }

    pub fn seasonal_ma(&self) -> &[f64] {
        &self.seasonal_ma
    }

    /// Constant term of the differenced-scale model (zero when any
    /// differencing is applied).
    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Residual variance: CSS over the effective sample size.
    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }

    pub fn residuals(&self) -> &[f64] {
        &self.residuals
    }

    /// One-step-ahead fitted values on the original scale, starting at
    /// [`fitted_offset`](Self::fitted_offset).
    pub fn fitted(&self) -> &[f64] {
        &self.fitted
    }

    /// Index of the first training observation with a fitted value (the
    /// observations consumed by differencing have none).
    pub fn fitted_offset(&self) -> usize {
        self.fitted_offset
    }

    /// False when the optimizer exhausted its sweep budget.
    pub fn converged(&self) -> bool {
        self.converged
    }

    fn params(&self) -> Vec<f64> {
        let mut p = self.ar.clone();
        p.extend_from_slice(&self.ma);
        p.extend_from_slice(&self.seasonal_ar);
        p.extend_from_slice(&self.seasonal_ma);
        p
    }

    /// Corrected Akaike criterion from the Gaussian CSS variance.
    /// Parameters counted: ARMA coefficients plus the mean.
    pub fn aicc(&self) -> f64 {
        let n = self.residuals.len() as f64;
        let m = (self.order.param_count() + 1) as f64;
        if n - m - 1.0 <= 0.0 {
            return f64::INFINITY;
        }
        n * ln(self.sigma2.max(1e-300)) + 2.0 * m + 2.0 * m * (m + 1.0) / (n - m - 1.0)
    }

    /// Iterates the recursion on the differenced scale with future
    /// residuals at zero, then reverses the differencing.
    pub fn forecast(&self, horizon: usize) -> Result<Vec<f64>> {
        if horizon == 0 {
            return Err(Error::InvalidHorizon);
        }
        let order = &self.order;
        let params = self.params();
        let (ar, ma) = expanded_terms(order, &params);

        // Differenced scale, mean-adjusted.
        let w = difference(&self.train, order.d, order.seasonal_d, order.season)?;
        let nw = w.len();
        let mut z: Vec<f64> = w.iter().map(|v| v - self.mu).collect();
        let eps = &self.residuals;
        let mut w_fc = Vec::with_capacity(horizon);
        for h in 0..horizon {
            let t = nw + h;
            let mut value = 0.0;
            for (lag, c) in &ar {
                if t >= *lag {
                    value += c * z[t - lag];
                }
            }
            for (lag, c) in &ma {
                // Future residuals are zero; only reach into the sample.
                if t >= *lag && t - lag < nw {
                    value += c * eps[t - lag];
                }
            }
            z.push(value);
            w_fc.push(value + self.mu);
        }

        // Undo the regular differencing, then the seasonal one.
        let seasonal_stage = difference(&self.train, 0, order.seasonal_d, order.season)?;
        let mut v_fc = w_fc;
        if order.d == 1 {
            let mut prev = *seasonal_stage.last().expect("non-empty stage");
            for v in v_fc.iter_mut() {
                *v += prev;
                prev = *v;
            }
        }
        let mut y_fc = v_fc;
        if order.seasonal_d == 1 {
            let s = order.season;
            let n = self.train.len();
            for h in 0..y_fc.len() {
                let back = if h < s {
                    self.train[n - s + h]
                } else {
                    y_fc[h - s]
                };
                y_fc[h] += back;
            }
        }
        Ok(y_fc)
    }
}

/// Coordinate descent with shrinking steps from one start point. At each
/// step size every coordinate walks in its improving direction until the
/// objective stops falling; the step halves when a full sweep finds no
/// move. Returns (point, value, converged).
fn descend(start: &[f64], eval: &mut dyn FnMut(&[f64]) -> f64) -> (Vec<f64>, f64, bool) {
    let mut best = start.to_vec();
    let mut best_val = eval(&best);
    let mut converged = true;
    let mut trial = best.clone();
    let mut step = INITIAL_STEP;
    while step >= STEP_FLOOR {
        let mut sweeps = 0;
        loop {
            let mut improved = false;
            for i in 0..best.len() {
                // Walk each direction with a doubling stride, so any walk
                // needs only logarithmically many evaluations.
                for sign in [-1.0, 1.0] {
                    let mut stride = step;
                    loop {
                        let candidate =
                            (best[i] + sign * stride).clamp(-COEFF_BOUND, COEFF_BOUND);
                        if candidate == best[i] {
                            break;
                        }
                        trial.clone_from(&best);
                        trial[i] = candidate;
                        let val = eval(&trial);
                        if val < best_val {
                            best[i] = candidate;
                            best_val = val;
                            improved = true;
                            stride *= 2.0;
                        } else {
                            break;
                        }
                    }
                }
            }
            sweeps += 1;
            if !improved {
                break;
            }
            if sweeps >= MAX_SWEEPS_PER_LEVEL {
                converged = false;
                break;
            }
        }
        step *= 0.5;
    }
    (best, best_val, converged)
}

/// Start points in lexicographic order: every combination of
/// {−0.5, 0, 0.5} across the k coordinates.
fn start_grid(k: usize) -> Vec<Vec<f64>> {
    let mut starts = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::with_capacity(starts.len() * STARTS.len());
        for prefix in &starts {
            for v in STARTS {
                let mut point = prefix.clone();
                point.push(v);
                next.push(point);
            }
        }
        starts = next;
    }
    starts
}

/// Fits the order by minimizing the CSS objective.
///
/// The search runs a coordinate pattern descent from every point of the
/// fixed start grid {−0.5, 0, 0.5}^k and keeps the best end point; grid
/// order breaks exact ties, so the result is deterministic.
pub fn fit_sarima(train: &[f64], order: &SarimaOrder) -> Result<SarimaFit> {
    if train.len() < order.min_train_len() {
        return Err(Error::InsufficientData {
            context: "SARIMA fit",
            needed: order.min_train_len(),
            actual: train.len(),
        });
    }
    let w = difference(train, order.d, order.seasonal_d, order.season)?;
    let mu = model_mean(&w, order);
    let z: Vec<f64> = w.iter().map(|v| v - mu).collect();
    let k = order.param_count();

    let (best, converged) = if k == 0 {
        (Vec::new(), true)
    } else {
        let mut evaluator = CssEvaluator::new(&z, order);
        let mut eval = |p: &[f64]| -> f64 { evaluator.css(p) };
        let mut best: Option<(Vec<f64>, f64)> = None;
        let mut all_converged = true;
        for start in start_grid(k) {
            let (point, value, conv) = descend(&start, &mut eval);
            all_converged &= conv;
            let better = match &best {
                None => true,
                Some((_, v)) => value < *v,
            };
            if better {
                best = Some((point, value));
            }
        }
        let (point, _) = best.expect("at least one start");
        (point, all_converged)
    };

    let residuals = residuals_on(&z, order, &best);
    let css: f64 = residuals.iter().map(|e| e * e).sum();
    let sigma2 = css / residuals.len() as f64;
    let offset = order.diff_len();
    let fitted: Vec<f64> = residuals
        .iter()
        .enumerate()
        .map(|(t, e)| train[offset + t] - e)
        .collect();

    let (p, q, sp) = (order.p, order.q, order.seasonal_p);
    Ok(SarimaFit {
        order: *order,
        ar: best[..p].to_vec(),
        ma: best[p..p + q].to_vec(),
        seasonal_ar: best[p + q..p + q + sp].to_vec(),
        seasonal_ma: best[p + q + sp..].to_vec(),
        mu,
        sigma2,
        residuals,
        fitted,
        fitted_offset: offset,
        converged,
        train: train.to_vec(),
    })
}

/// Exhaustive AICc search over the bounded order grid.
///
/// Orders whose parameter count reaches a third of the effective sample,
/// or that need more data than available, are skipped. Ties go to the
/// model with fewer parameters, then to the lexicographically smallest
/// (p,d,q,P,D,Q).
pub fn select_order(train: &[f64], season: usize) -> Result<SarimaOrder> {
    if season != 4 && season != 12 {
        return Err(Error::InvalidOrder("season must be 4 or 12"));
    }
    let mut best: Option<(f64, usize, [usize; 6], SarimaOrder)> = None;
    for d in 0..=MAX_NONSEASONAL_DIFF {
        for seasonal_d in 0..=MAX_SEASONAL {
            for p in 0..=MAX_NONSEASONAL_ARMA {
                for q in 0..=MAX_NONSEASONAL_ARMA {
                    for seasonal_p in 0..=MAX_SEASONAL {
                        for seasonal_q in 0..=MAX_SEASONAL {
                            let order = SarimaOrder::new(
                                p, d, q, seasonal_p, seasonal_d, seasonal_q, season,
                            )
                            .expect("grid inside bounds");
                            if train.len() < order.min_train_len() {
                                continue;
                            }
                            let effective = train.len() - order.diff_len();
                            if 3 * order.param_count() >= effective {
                                continue;
                            }
                            let Ok(fit) = fit_sarima(train, &order) else {
                                continue;
                            };
                            let aicc = fit.aicc();
                            let count = order.param_count();
                            let lex = [p, d, q, seasonal_p, seasonal_d, seasonal_q];
                            let better = match &best {
                                None => true,
                                Some((bv, bc, bl, _)) => match aicc.total_cmp(bv) {
                                    core::cmp::Ordering::Less => true,
                                    core::cmp::Ordering::Greater => false,
                                    core::cmp::Ordering::Equal => (count, lex) < (*bc, *bl),
                                },
                            };
                            if better {
                                best = Some((aicc, count, lex, order));
                            }
                        }
                    }
                }
            }
        }
    }
    best.map(|(_, _, _, order)| order)
        .ok_or(Error::NoCandidateOrder)
}
