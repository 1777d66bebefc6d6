//! The fixed registry of nineteen forecasting approaches and the uniform
//! fit/forecast entry point the harness drives.
//!
//! Approaches tagged with seasonality 4 run on quarterly-aggregated data
//! (three-month means); seasonality 12 runs on the monthly series. The
//! registry is closed: ids 1 through 19.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::arima::{fit_sarima, select_order};
use crate::decomposition::{fit_decomposition, DecompositionModel};
use crate::evaluation::{error_triple, ErrorTriple};
use crate::regression::fit_regression;
use crate::series::MonthlySeries;
use crate::smoothing::{holt, holt_winters, optimize_params, ses, SmoothingModel};
use crate::{Error, ModelForm, Result};

/// Model family behind an approach.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Decomposition,
    Regression,
    Ses,
    Holt,
    HoltWinters,
    Sarima,
}

impl core::fmt::Display for Family {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let name = match self {
            Family::Decomposition => "decomposition",
            Family::Regression => "regression",
            Family::Ses => "ses",
            Family::Holt => "holt",
            Family::HoltWinters => "holt-winters",
            Family::Sarima => "sarima",
        };
        f.write_str(name)
    }
}

/// Input granularity an approach consumes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Granularity {
    Monthly,
    Quarterly,
}

impl core::fmt::Display for Granularity {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            Granularity::Monthly => "monthly",
            Granularity::Quarterly => "quarterly",
        })
    }
}

/// One catalog entry: an approach id bound to a concrete configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ApproachSpec {
    pub id: u32,
    pub family: Family,
    pub form: Option<ModelForm>,
    pub centered: Option<bool>,
    /// Seasonal cycle length: 12 (monthly input) or 4 (quarterly input).
    pub seasonality: usize,
    pub granularity: Granularity,
}

impl ApproachSpec {
    fn new(
        id: u32,
        family: Family,
        form: Option<ModelForm>,
        centered: Option<bool>,
        seasonality: usize,
    ) -> ApproachSpec {
        let granularity = if seasonality == 4 {
            Granularity::Quarterly
        } else {
            Granularity::Monthly
        };
        ApproachSpec {
            id,
            family,
            form,
            centered,
            seasonality,
            granularity,
        }
    }

    /// Human-readable description for reports.
    pub fn description(&self) -> String {
        let s = self.seasonality;
        match self.family {
            Family::Decomposition => {
                let form = self.form.expect("decomposition has a form");
                if self.centered == Some(true) {
                    format!("classical decomposition with centered moving averages, {form} model, seasonality {s}")
                } else {
                    format!("classical decomposition, {form} model, seasonality {s}")
                }
            }
            Family::Regression => format!("regression with seasonal dummies, seasonality {s}"),
            Family::Ses => format!("single exponential smoothing, seasonality {s}"),
            Family::Holt => {
                let form = self.form.expect("holt has a trend form");
                format!("double exponential smoothing, {form} trend, seasonality {s}")
            }
            Family::HoltWinters => {
                format!("holt-winters smoothing with optimized constants, seasonality {s}")
            }
            Family::Sarima => format!("seasonal arima with order selection, seasonality {s}"),
        }
    }
}

/// The nineteen approaches in id order.
pub fn catalog() -> Vec<ApproachSpec> {
    use Family::*;
    use ModelForm::*;
    alloc::vec![
        ApproachSpec::new(1, Decomposition, Some(Multiplicative), Some(false), 12),
        ApproachSpec::new(2, Decomposition, Some(Multiplicative), Some(false), 4),
        ApproachSpec::new(3, Decomposition, Some(Additive), Some(false), 12),
        ApproachSpec::new(4, Decomposition, Some(Additive), Some(false), 4),
        ApproachSpec::new(5, Decomposition, Some(Multiplicative), Some(true), 12),
        ApproachSpec::new(6, Decomposition, Some(Multiplicative), Some(true), 4),
        ApproachSpec::new(7, Decomposition, Some(Additive), Some(true), 12),
        ApproachSpec::new(8, Decomposition, Some(Additive), Some(true), 4),
        ApproachSpec::new(9, Regression, None, None, 12),
        ApproachSpec::new(10, Regression, None, None, 4),
        ApproachSpec::new(11, Ses, None, None, 12),
        ApproachSpec::new(12, Ses, None, None, 4),
        ApproachSpec::new(13, Holt, Some(Multiplicative), None, 12),
        ApproachSpec::new(14, Holt, Some(Additive), None, 12),
        ApproachSpec::new(15, Holt, Some(Multiplicative), None, 4),
        ApproachSpec::new(16, Holt, Some(Additive), None, 4),
        ApproachSpec::new(17, HoltWinters, None, None, 12),
        ApproachSpec::new(18, HoltWinters, None, None, 4),
        sarima_spec(12).expect("12 is a valid season"),
    ]
}

/// The SARIMA approach (id 19) configured for a given season; 12 runs on
/// the monthly series, 4 on quarterly aggregates.
pub fn sarima_spec(season: usize) -> Result<ApproachSpec> {
    if season != 4 && season != 12 {
        return Err(Error::InvalidPeriod(season));
    }
    Ok(ApproachSpec::new(19, Family::Sarima, None, None, season))
}

/// Everything one approach produced on one series.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproachResult {
    pub spec: ApproachSpec,
    /// Fitted parameters as stable name/value pairs.
    pub params: Vec<(String, f64)>,
    /// In-sample accuracy of the fitted values.
    pub insample: ErrorTriple,
    /// In-sample fitted values, aligned to the training series from
    /// `fitted_offset` on (in the approach's own granularity).
    pub fitted: Vec<f64>,
    pub fitted_offset: usize,
    /// Forecast steps past the training end, in the approach's own
    /// granularity; a quarterly value is a three-month mean.
    pub forecasts: Vec<f64>,
    /// Training length in the approach's own granularity.
    pub train_len: usize,
}

/// Runs one approach: optional holdout split, optional quarterly
/// aggregation, fit, in-sample metrics and `holdout + horizon` months of
/// forecasts (quarterly approaches cover them with ceil(T/3) steps).
///
/// Errors are tagged with the approach id.
pub fn run_approach(
    spec: &ApproachSpec,
    series: &MonthlySeries,
    holdout: usize,
    horizon: usize,
) -> Result<ApproachResult> {
    run_inner(spec, series, holdout, horizon).map_err(|e| e.for_approach(spec.id))
}

fn run_inner(
    spec: &ApproachSpec,
    series: &MonthlySeries,
    holdout: usize,
    horizon: usize,
) -> Result<ApproachResult> {
    if horizon == 0 {
        return Err(Error::InvalidHorizon);
    }
    let train_monthly = if holdout > 0 {
        series.split_holdout(holdout)?.0
    } else {
        series.clone()
    };
    let months_ahead = holdout + horizon;

    let (values, steps): (Vec<f64>, usize) = match spec.granularity {
        Granularity::Monthly => (train_monthly.values().to_vec(), months_ahead),
        Granularity::Quarterly => {
            let q = train_monthly.aggregate_quarterly()?;
            (q.values().to_vec(), months_ahead.div_ceil(3))
        }
    };

    let (params, fitted, fitted_offset, forecasts) = fit_and_forecast(spec, &values, steps)?;
    let insample = error_triple(&values[fitted_offset..], &fitted)?;
    Ok(ApproachResult {
        spec: *spec,
        params,
        insample,
        fitted,
        fitted_offset,
        forecasts,
        train_len: values.len(),
    })
}

type FitOutput = (Vec<(String, f64)>, Vec<f64>, usize, Vec<f64>);

fn fit_and_forecast(spec: &ApproachSpec, y: &[f64], steps: usize) -> Result<FitOutput> {
    let s = spec.seasonality;
    match spec.family {
        Family::Decomposition => {
            let model = DecompositionModel::new(
                spec.form.expect("decomposition form"),
                spec.centered.unwrap_or(false),
                s,
            )?;
            let fit = fit_decomposition(y, &model)?;
            let mut params = alloc::vec![
                (String::from("trend_intercept"), fit.trend_intercept()),
                (String::from("trend_slope"), fit.trend_slope()),
            ];
            for (i, idx) in fit.indices().iter().enumerate() {
                params.push((format!("index_{}", i + 1), *idx));
            }
            let forecasts = fit.forecast(steps)?;
            Ok((params, fit.fitted().to_vec(), 0, forecasts))
        }
        Family::Regression => {
            let fit = fit_regression(y, s)?;
            let mut params = alloc::vec![
                (String::from("c0"), fit.intercept()),
                (String::from("t0"), fit.trend()),
            ];
            for (i, b) in fit.betas().iter().enumerate() {
                params.push((format!("beta_{}", i + 2), *b));
            }
            let forecasts = fit.forecast(steps)?;
            Ok((params, fit.fitted().to_vec(), 0, forecasts))
        }
        Family::Ses => {
            let tuned = optimize_params(y, SmoothingModel::Ses)?;
            let fit = ses(y, tuned.alpha)?;
            let params = alloc::vec![
                (String::from("alpha"), fit.alpha()),
                (String::from("level"), fit.level()),
            ];
            let forecasts = fit.forecast(steps)?;
            Ok((params, fit.fitted().to_vec(), 0, forecasts))
        }
        Family::Holt => {
            let form = spec.form.expect("holt trend form");
            let tuned = optimize_params(y, SmoothingModel::Holt(form))?;
            let fit = holt(y, tuned.alpha, tuned.beta.expect("holt beta"), form)?;
            let params = alloc::vec![
                (String::from("alpha"), fit.alpha()),
                (String::from("beta"), fit.beta()),
                (String::from("level"), fit.level()),
                (String::from("trend"), fit.trend()),
            ];
            let forecasts = fit.forecast(steps)?;
            Ok((params, fit.fitted().to_vec(), 0, forecasts))
        }
        Family::HoltWinters => {
            let tuned = optimize_params(y, SmoothingModel::HoltWinters { period: s })?;
            let fit = holt_winters(y, &tuned, s)?;
            let mut params = alloc::vec![
                (String::from("alpha"), tuned.alpha),
                (String::from("beta"), tuned.beta.expect("hw beta")),
                (String::from("gamma"), tuned.gamma.expect("hw gamma")),
                (String::from("level"), fit.level()),
                (String::from("trend"), fit.trend()),
            ];
            for (i, v) in fit.seasonals().iter().enumerate() {
                params.push((format!("seasonal_{}", i + 1), *v));
            }
            let forecasts = fit.forecast(steps)?;
            Ok((params, fit.fitted().to_vec(), 0, forecasts))
        }
        Family::Sarima => {
            let order = select_order(y, s)?;
            let fit = fit_sarima(y, &order)?;
            let mut params = alloc::vec![
                (String::from("p"), order.p as f64),
                (String::from("d"), order.d as f64),
                (String::from("q"), order.q as f64),
                (String::from("P"), order.seasonal_p as f64),
                (String::from("D"), order.seasonal_d as f64),
                (String::from("Q"), order.seasonal_q as f64),
                (String::from("s"), order.season as f64),
                (String::from("mu"), fit.mu()),
                (String::from("sigma2"), fit.sigma2()),
                (
                    String::from("converged"),
                    if fit.converged() { 1.0 } else { 0.0 },
                ),
            ];
            for (i, c) in fit.ar().iter().enumerate() {
                params.push((format!("phi_{}", i + 1), *c));
            }
            for (i, c) in fit.ma().iter().enumerate() {
                params.push((format!("theta_{}", i + 1), *c));
            }
            for (i, c) in fit.seasonal_ar().iter().enumerate() {
                params.push((format!("seasonal_phi_{}", i + 1), *c));
            }
            for (i, c) in fit.seasonal_ma().iter().enumerate() {
                params.push((format!("seasonal_theta_{}", i + 1), *c));
            }
            let offset = fit.fitted_offset();
            let forecasts = fit.forecast(steps)?;
            Ok((params, fit.fitted().to_vec(), offset, forecasts))
        }
    }
}
