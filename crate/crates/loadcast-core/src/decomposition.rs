//! Classical decomposition forecasters: additive or multiplicative
//! trend/seasonal/irregular models with either a least-squares line or a
//! centered moving average as the detrending step for index estimation.
//!
//! Index estimation alternates between re-estimating the trend on the
//! deseasonalized series and re-estimating the indices on the detrended
//! series until the indices stabilize. On a noiseless trend-times-pattern
//! (or trend-plus-pattern) series the alternation settles on the exact
//! generating components. The centered and non-centered variants keep
//! distinct detrending estimators throughout, so they remain different
//! methods on real data.

use alloc::vec;
use alloc::vec::Vec;

use crate::math::abs;
use crate::{Error, ModelForm, Result};

const MAX_REFINEMENTS: usize = 200;
const INDEX_TOL: f64 = 1e-12;

/// Configuration of one decomposition approach.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecompositionModel {
    pub form: ModelForm,
    /// Detrend with the 2×s centered moving average instead of a
    /// least-squares line when estimating seasonal indices.
    pub centered: bool,
    /// Observations per seasonal cycle (4 or 12).
    pub period: usize,
}

impl DecompositionModel {
    pub fn new(form: ModelForm, centered: bool, period: usize) -> Result<Self> {
        if period != 4 && period != 12 {
            return Err(Error::InvalidPeriod(period));
        }
        Ok(DecompositionModel {
            form,
            centered,
            period,
        })
    }
}

/// Per-observation decomposition bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Components {
    pub trend: f64,
    pub seasonal: f64,
    /// Residual factor/offset; absorbs whatever trend and seasonal miss.
    pub irregular: f64,
}

/// A fitted decomposition model.
#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionFit {
    model: DecompositionModel,
    indices: Vec<f64>,
    trend_intercept: f64,
    trend_slope: f64,
    fitted: Vec<f64>,
    components: Vec<Components>,
    n: usize,
}

impl DecompositionFit {
    pub fn model(&self) -> &DecompositionModel {
        &self.model
    }

    /// Normalized seasonal indices, one per position in the cycle
    /// (position 0 is the first training observation's phase).
    pub fn indices(&self) -> &[f64] {
        &self.indices
    }

    pub fn trend_intercept(&self) -> f64 {
        self.trend_intercept
    }

    /// Trend change per period, on the deseasonalized scale.
    pub fn trend_slope(&self) -> f64 {
        self.trend_slope
    }

    pub fn fitted(&self) -> &[f64] {
        &self.fitted
    }

    pub fn components(&self) -> &[Components] {
        &self.components
    }

    /// Extends the trend line and reapplies the seasonal index cycle.
    pub fn forecast(&self, horizon: usize) -> Result<Vec<f64>> {
        if horizon == 0 {
            return Err(Error::InvalidHorizon);
        }
        let s = self.model.period;
        Ok((1..=horizon)
            .map(|h| {
                let t = self.n - 1 + h;
                let trend = self.trend_intercept + self.trend_slope * t as f64;
                let index = self.indices[t % s];
                match self.model.form {
                    ModelForm::Additive => trend + index,
                    ModelForm::Multiplicative => trend * index,
                }
            })
            .collect())
    }
}

/// Trailing k-term moving average: output[i] is the mean of values[i..i+k].
pub fn moving_average(values: &[f64], k: usize) -> Result<Vec<f64>> {
    if k == 0 {
        return Err(Error::WindowTooLong {
            k,
            len: values.len(),
        });
    }
    if k > values.len() {
        return Err(Error::WindowTooLong {
            k,
            len: values.len(),
        });
    }
    Ok((0..=values.len() - k)
        .map(|i| values[i..i + k].iter().sum::<f64>() / k as f64)
        .collect())
}

/// 2×s centered moving average with half-weighted edge observations.
///
/// Positions within s/2 of either end carry no estimate and come back as
/// `None`.
pub fn centered_trend(values: &[f64], s: usize) -> Result<Vec<Option<f64>>> {
    if s != 4 && s != 12 {
        return Err(Error::InvalidPeriod(s));
    }
    let n = values.len();
    if n < s + 1 {
        return Err(Error::InsufficientData {
            context: "centered moving average",
            needed: s + 1,
            actual: n,
        });
    }
    let half = s / 2;
    let mut out = vec![None; n];
    for t in half..n - half {
        let mut acc = 0.5 * values[t - half] + 0.5 * values[t + half];
        for j in (t - half + 1)..(t + half) {
            acc += values[j];
        }
        out[t] = Some(acc / s as f64);
    }
    Ok(out)
}

/// Least-squares line v ≈ a + b·t over t = 0..n−1.
fn ls_line(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let t_mean = (n - 1.0) / 2.0;
    let v_mean = values.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (t, v) in values.iter().enumerate() {
        let dt = t as f64 - t_mean;
        num += dt * (v - v_mean);
        den += dt * dt;
    }
    let slope = if den > 0.0 { num / den } else { 0.0 };
    (v_mean - slope * t_mean, slope)
}

fn line_as_trend(values: &[f64]) -> Vec<Option<f64>> {
    let (a, b) = ls_line(values);
    (0..values.len())
        .map(|t| Some(a + b * t as f64))
        .collect()
}

/// Group means of the detrended series by position in the cycle, then
/// normalized (multiplicative: sum = s; additive: sum = 0).
fn indices_from_trend(
    values: &[f64],
    trend: &[Option<f64>],
    form: ModelForm,
    s: usize,
) -> Result<Vec<f64>> {
    let mut sums = vec![0.0; s];
    let mut counts = vec![0usize; s];
    for (t, v) in values.iter().enumerate() {
        let Some(tr) = trend[t] else { continue };
        let detrended = match form {
            ModelForm::Additive => v - tr,
            ModelForm::Multiplicative => {
                if tr <= 0.0 {
                    return Err(Error::NonPositiveTrend);
                }
                v / tr
            }
        };
        sums[t % s] += detrended;
        counts[t % s] += 1;
    }
    let mut indices: Vec<f64> = sums
        .iter()
        .zip(&counts)
        .map(|(sum, c)| if *c > 0 { sum / *c as f64 } else { 0.0 })
        .collect();
    normalize_indices(&mut indices, form);
    Ok(indices)
}

fn normalize_indices(indices: &mut [f64], form: ModelForm) {
    let s = indices.len() as f64;
    let sum: f64 = indices.iter().sum();
    match form {
        ModelForm::Additive => {
            let shift = sum / s;
            for i in indices.iter_mut() {
                *i -= shift;
            }
        }
        ModelForm::Multiplicative => {
            if sum > 0.0 {
                let scale = s / sum;
                for i in indices.iter_mut() {
                    *i *= scale;
                }
            }
        }
    }
}

fn remove_seasonal(values: &[f64], indices: &[f64], form: ModelForm) -> Vec<f64> {
    let s = indices.len();
    values
        .iter()
        .enumerate()
        .map(|(t, v)| match form {
            ModelForm::Additive => v - indices[t % s],
            ModelForm::Multiplicative => v / indices[t % s],
        })
        .collect()
}

fn check_fit_preconditions(train: &[f64], model: &DecompositionModel) -> Result<()> {
    let s = model.period;
    if train.len() < 2 * s {
        return Err(Error::InsufficientData {
            context: "decomposition fit",
            needed: 2 * s,
            actual: train.len(),
        });
    }
    if model.form == ModelForm::Multiplicative && train.iter().any(|v| *v <= 0.0) {
        return Err(Error::NonPositiveData("decomposition"));
    }
    Ok(())
}

fn estimate_indices(train: &[f64], model: &DecompositionModel) -> Result<Vec<f64>> {
    let s = model.period;
    let variant_trend = |values: &[f64]| -> Result<Vec<Option<f64>>> {
        if model.centered {
            centered_trend(values, s)
        } else {
            Ok(line_as_trend(values))
        }
    };

    let mut indices = indices_from_trend(train, &variant_trend(train)?, model.form, s)?;
    for _ in 0..MAX_REFINEMENTS {
        let deseason = remove_seasonal(train, &indices, model.form);
        let trend = variant_trend(&deseason)?;
        let next = indices_from_trend(train, &trend, model.form, s)?;
        let scale = 1.0 + indices.iter().map(|i| abs(*i)).fold(0.0, f64::max);
        let delta = indices
            .iter()
            .zip(&next)
            .map(|(a, b)| abs(a - b))
            .fold(0.0, f64::max);
        indices = next;
        if delta < INDEX_TOL * scale {
            break;
        }
    }
    Ok(indices)
}

/// Converged seasonal indices for a training series under the given model.
pub fn seasonal_indices(train: &[f64], model: &DecompositionModel) -> Result<Vec<f64>> {
    check_fit_preconditions(train, model)?;
    estimate_indices(train, model)
}

/// Fits indices plus a least-squares trend line on the deseasonalized
/// series, and recomposes fitted values with a neutral irregular component.
pub fn fit_decomposition(train: &[f64], model: &DecompositionModel) -> Result<DecompositionFit> {
    check_fit_preconditions(train, model)?;
    let indices = estimate_indices(train, model)?;
    let deseason = remove_seasonal(train, &indices, model.form);
    let (intercept, slope) = ls_line(&deseason);

    let s = model.period;
    let n = train.len();
    let mut fitted = Vec::with_capacity(n);
    let mut components = Vec::with_capacity(n);
    for (t, y) in train.iter().enumerate() {
        let trend = intercept + slope * t as f64;
        let seasonal = indices[t % s];
        let (value, irregular) = match model.form {
            ModelForm::Additive => {
                let value = trend + seasonal;
                (value, y - value)
            }
            ModelForm::Multiplicative => {
                if trend <= 0.0 {
                    return Err(Error::NonPositiveTrend);
                }
                let value = trend * seasonal;
                (value, y / value)
            }
        };
        fitted.push(value);
        components.push(Components {
            trend,
            seasonal,
            irregular,
        });
    }

    Ok(DecompositionFit {
        model: *model,
        indices,
        trend_intercept: intercept,
        trend_slope: slope,
        fitted,
        components,
        n,
    })
}
