//! Exponential smoothing forecasters: single, double (additive or
//! multiplicative trend) and multiplicative-seasonal Holt-Winters, plus a
//! deterministic grid-and-refine search for the smoothing constants.
//!
//! All fitted values follow the one-step-ahead discipline: the fitted value
//! for an observation only uses state built from earlier observations (the
//! first one or two points are pinned by the initialization).

use alloc::vec;
use alloc::vec::Vec;

use crate::math::powi;
use crate::{Error, ModelForm, Result};

/// Smoothing constants. `beta` is present for double and triple smoothing,
/// `gamma` only for triple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothingParams {
    pub alpha: f64,
    pub beta: Option<f64>,
    pub gamma: Option<f64>,
}

impl SmoothingParams {
    pub fn ses(alpha: f64) -> Self {
        SmoothingParams {
            alpha,
            beta: None,
            gamma: None,
        }
    }

    pub fn holt(alpha: f64, beta: f64) -> Self {
        SmoothingParams {
            alpha,
            beta: Some(beta),
            gamma: None,
        }
    }

    pub fn holt_winters(alpha: f64, beta: f64, gamma: f64) -> Self {
        SmoothingParams {
            alpha,
            beta: Some(beta),
            gamma: Some(gamma),
        }
    }
}

fn check_constant(name: &'static str, value: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&value) || value.is_nan() {
        return Err(Error::InvalidSmoothingConstant { name, value });
    }
    Ok(value)
}

/// A fitted single exponential smoothing model.
#[derive(Debug, Clone, PartialEq)]
pub struct SesFit {
    alpha: f64,
    level: f64,
    fitted: Vec<f64>,
}

impl SesFit {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// The level every future horizon forecasts.
    pub fn level(&self) -> f64 {
        self.level
    }

    /// One-step-ahead fitted values; the first is pinned to the first
    /// observation.
    pub fn fitted(&self) -> &[f64] {
        &self.fitted
    }

    /// Flat forecast at the final level.
    pub fn forecast(&self, horizon: usize) -> Result<Vec<f64>> {
        if horizon == 0 {
            return Err(Error::InvalidHorizon);
        }
        Ok(vec![self.level; horizon])
    }
}

/// Single exponential smoothing with F_{t+1} = α·Y_t + (1−α)·F_t, F_1 = Y_1.
pub fn ses(train: &[f64], alpha: f64) -> Result<SesFit> {
    let alpha = check_constant("alpha", alpha)?;
    if train.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut fitted = Vec::with_capacity(train.len());
    fitted.push(train[0]);
    for t in 1..train.len() {
        let next = alpha * train[t - 1] + (1.0 - alpha) * fitted[t - 1];
        fitted.push(next);
    }
    let level = alpha * train[train.len() - 1] + (1.0 - alpha) * fitted[train.len() - 1];
    Ok(SesFit {
        alpha,
        level,
        fitted,
    })
}

/// A fitted double exponential smoothing model.
#[derive(Debug, Clone, PartialEq)]
pub struct HoltFit {
    alpha: f64,
    beta: f64,
    trend_form: ModelForm,
    level: f64,
    trend: f64,
    fitted: Vec<f64>,
}

impl HoltFit {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn trend_form(&self) -> ModelForm {
        self.trend_form
    }

    pub fn level(&self) -> f64 {
        self.level
    }

    pub fn trend(&self) -> f64 {
        self.trend
    }

    pub fn fitted(&self) -> &[f64] {
        &self.fitted
    }

    /// Additive: level + p·trend. Multiplicative: level · trend^p.
    pub fn forecast(&self, horizon: usize) -> Result<Vec<f64>> {
        if horizon == 0 {
            return Err(Error::InvalidHorizon);
        }
        Ok((1..=horizon)
            .map(|p| compose_trend(self.level, self.trend, p, self.trend_form))
            .collect())
    }
}

fn compose_trend(level: f64, trend: f64, steps: usize, form: ModelForm) -> f64 {
    match form {
        ModelForm::Additive => level + steps as f64 * trend,
        ModelForm::Multiplicative => level * powi(trend, steps as u32),
    }
}

/// Double exponential smoothing with an additive or multiplicative trend.
///
/// Initialization: level = Y_1; trend = Y_2 − Y_1 (additive) or Y_2 / Y_1
/// (multiplicative).
pub fn holt(train: &[f64], alpha: f64, beta: f64, trend_form: ModelForm) -> Result<HoltFit> {
    let alpha = check_constant("alpha", alpha)?;
    let beta = check_constant("beta", beta)?;
    if train.len() < 2 {
        return Err(Error::InsufficientData {
            context: "double exponential smoothing",
            needed: 2,
            actual: train.len(),
        });
    }
    if trend_form == ModelForm::Multiplicative && train.iter().any(|v| *v <= 0.0) {
        return Err(Error::NonPositiveData("trend smoothing"));
    }

    let mut level = train[0];
    let mut trend = match trend_form {
        ModelForm::Additive => train[1] - train[0],
        ModelForm::Multiplicative => train[1] / train[0],
    };
    let mut fitted = Vec::with_capacity(train.len());
    fitted.push(train[0]);
    for t in 1..train.len() {
        let one_step = compose_trend(level, trend, 1, trend_form);
        fitted.push(one_step);
        let prev_level = level;
        level = alpha * train[t] + (1.0 - alpha) * one_step;
        trend = match trend_form {
            ModelForm::Additive => beta * (level - prev_level) + (1.0 - beta) * trend,
            ModelForm::Multiplicative => beta * (level / prev_level) + (1.0 - beta) * trend,
        };
    }

    Ok(HoltFit {
        alpha,
        beta,
        trend_form,
        level,
        trend,
        fitted,
    })
}

/// A fitted multiplicative-seasonal Holt-Winters model.
#[derive(Debug, Clone, PartialEq)]
pub struct HoltWintersFit {
    alpha: f64,
    beta: f64,
    gamma: f64,
    period: usize,
    level: f64,
    trend: f64,
    /// Final seasonal states; forecast step m uses seasonals[(m−1) mod L].
    seasonals: Vec<f64>,
    fitted: Vec<f64>,
}

impl HoltWintersFit {
    pub fn params(&self) -> SmoothingParams {
        SmoothingParams::holt_winters(self.alpha, self.beta, self.gamma)
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn level(&self) -> f64 {
        self.level
    }

    pub fn trend(&self) -> f64 {
        self.trend
    }

    pub fn seasonals(&self) -> &[f64] {
        &self.seasonals
    }

    pub fn fitted(&self) -> &[f64] {
        &self.fitted
    }

    /// F_{t+m} = (level + m·trend) · seasonal for that phase.
    pub fn forecast(&self, horizon: usize) -> Result<Vec<f64>> {
        if horizon == 0 {
            return Err(Error::InvalidHorizon);
        }
        Ok((1..=horizon)
            .map(|m| (self.level + m as f64 * self.trend) * self.seasonals[(m - 1) % self.period])
            .collect())
    }
}

/// Multiplicative-seasonal Holt-Winters smoothing.
///
/// Initialization: level = mean of the first season; trend = (mean of
/// season two − mean of season one) / L; seasonals = first-season values
/// over the first-season mean, normalized to sum L.
pub fn holt_winters(
    train: &[f64],
    params: &SmoothingParams,
    period: usize,
) -> Result<HoltWintersFit> {
    let alpha = check_constant("alpha", params.alpha)?;
    let beta = check_constant(
        "beta",
        params.beta.ok_or(Error::MissingSmoothingConstant("beta"))?,
    )?;
    let gamma = check_constant(
        "gamma",
        params
            .gamma
            .ok_or(Error::MissingSmoothingConstant("gamma"))?,
    )?;
    if period < 2 {
        return Err(Error::InvalidPeriod(period));
    }
    if train.len() < 2 * period {
        return Err(Error::InsufficientData {
            context: "need two full seasons",
            needed: 2 * period,
            actual: train.len(),
        });
    }
    if train.iter().any(|v| *v <= 0.0) {
        return Err(Error::NonPositiveData("seasonal smoothing"));
    }

    let n = train.len();
    let mean1 = train[..period].iter().sum::<f64>() / period as f64;
    let mean2 = train[period..2 * period].iter().sum::<f64>() / period as f64;
    let mut level = mean1;
    let mut trend = (mean2 - mean1) / period as f64;

    // Seasonal state per phase; entry i % L is the most recent seasonal
    // estimate for that phase.
    let mut seasonals: Vec<f64> = train[..period].iter().map(|v| v / mean1).collect();
    let sum: f64 = seasonals.iter().sum();
    for s in seasonals.iter_mut() {
        *s *= period as f64 / sum;
    }

    let mut fitted = Vec::with_capacity(n);
    for (i, s) in seasonals.iter().enumerate() {
        // Backcast of the initial state over the first season.
        let back_level = level + (i as f64 - (period as f64 - 1.0)) * trend;
        fitted.push(back_level * s);
    }
    for i in period..n {
        let phase = i % period;
        let seasonal = seasonals[phase];
        let one_step = (level + trend) * seasonal;
        fitted.push(one_step);
        let prev_level = level;
        level = alpha * train[i] / seasonal + (1.0 - alpha) * (level + trend);
        trend = beta * (level - prev_level) + (1.0 - beta) * trend;
        seasonals[phase] = gamma * train[i] / level + (1.0 - gamma) * seasonal;
    }

    // Forecast step m lands on phase (n − 1 + m) mod L; rotate so that
    // entry (m − 1) mod L serves step m.
    let rotated: Vec<f64> = (0..period).map(|m| seasonals[(n + m) % period]).collect();

    Ok(HoltWintersFit {
        alpha,
        beta,
        gamma,
        period,
        level,
        trend,
        seasonals: rotated,
        fitted,
    })
}

/// Which smoothing family to tune constants for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmoothingModel {
    Ses,
    Holt(ModelForm),
    HoltWinters { period: usize },
}

/// In-sample one-step-ahead mean squared deviation of a parameter vector.
fn objective(train: &[f64], model: SmoothingModel, p: &[f64]) -> f64 {
    let fitted = match model {
        SmoothingModel::Ses => ses(train, p[0]).map(|f| f.fitted),
        SmoothingModel::Holt(form) => holt(train, p[0], p[1], form).map(|f| f.fitted),
        SmoothingModel::HoltWinters { period } => holt_winters(
            train,
            &SmoothingParams::holt_winters(p[0], p[1], p[2]),
            period,
        )
        .map(|f| f.fitted),
    };
    match fitted {
        Ok(fitted) => {
            let n = fitted.len() as f64;
            fitted
                .iter()
                .zip(train)
                .map(|(f, y)| (y - f) * (y - f))
                .sum::<f64>()
                / n
        }
        Err(_) => f64::INFINITY,
    }
}

fn dims(model: SmoothingModel) -> usize {
    match model {
        SmoothingModel::Ses => 1,
        SmoothingModel::Holt(_) => 2,
        SmoothingModel::HoltWinters { .. } => 3,
    }
}

fn precheck(train: &[f64], model: SmoothingModel) -> Result<()> {
    // Surface data problems once, before the search loop.
    match model {
        SmoothingModel::Ses => ses(train, 0.5).map(|_| ()),
        SmoothingModel::Holt(form) => holt(train, 0.5, 0.5, form).map(|_| ()),
        SmoothingModel::HoltWinters { period } => {
            holt_winters(train, &SmoothingParams::holt_winters(0.5, 0.5, 0.5), period).map(|_| ())
        }
    }
}

/// Finds the smoothing constants minimizing in-sample one-step MSD.
///
/// Deterministic: a coarse 0.05 grid over [0,1]^d scanned in lexicographic
/// order (ties keep the earlier, i.e. smaller, point), then coordinate
/// descent with step halving down to 1e-3, accepting strict improvements
/// only. The result is therefore never worse than the best grid point.
pub fn optimize_params(train: &[f64], model: SmoothingModel) -> Result<SmoothingParams> {
    precheck(train, model)?;
    let d = dims(model);
    let grid: Vec<f64> = (0..=20).map(|i| i as f64 / 20.0).collect();

    let mut best = vec![0.0; d];
    let mut best_val = f64::INFINITY;
    let mut point = vec![0.0; d];
    scan_grid(train, model, &grid, &mut point, 0, &mut best, &mut best_val);

    let mut step = 0.05;
    while step >= 1e-3 {
        let mut improved = true;
        while improved {
            improved = false;
            for i in 0..d {
                for delta in [-step, step] {
                    let candidate = (best[i] + delta).clamp(0.0, 1.0);
                    if candidate == best[i] {
                        continue;
                    }
                    let mut trial = best.clone();
                    trial[i] = candidate;
                    let val = objective(train, model, &trial);
                    if val < best_val {
                        best = trial;
                        best_val = val;
                        improved = true;
                    }
                }
            }
        }
        step /= 2.0;
    }

    Ok(match model {
        SmoothingModel::Ses => SmoothingParams::ses(best[0]),
        SmoothingModel::Holt(_) => SmoothingParams::holt(best[0], best[1]),
        SmoothingModel::HoltWinters { .. } => {
            SmoothingParams::holt_winters(best[0], best[1], best[2])
        }
    })
}

fn scan_grid(
    train: &[f64],
    model: SmoothingModel,
    grid: &[f64],
    point: &mut Vec<f64>,
    depth: usize,
    best: &mut Vec<f64>,
    best_val: &mut f64,
) {
    if depth == point.len() {
        let val = objective(train, model, point);
        if val < *best_val {
            *best_val = val;
            best.clone_from(point);
        }
        return;
    }
    for g in grid {
        point[depth] = *g;
        scan_grid(train, model, grid, point, depth + 1, best, best_val);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn ses_alpha_one_is_naive() {
        let y = [3.0, 7.0, 2.0, 9.0];
        let fit = ses(&y, 1.0).unwrap();
        // F_{t+1} = Y_t for every t.
        assert_eq!(fit.fitted(), &[3.0, 3.0, 7.0, 2.0]);
        assert_eq!(fit.level(), 9.0);
    }

    #[test]
    fn ses_alpha_zero_freezes_first_value() {
        let y = [3.0, 7.0, 2.0, 9.0];
        let fit = ses(&y, 0.0).unwrap();
        assert_eq!(fit.fitted(), &[3.0, 3.0, 3.0, 3.0]);
        assert_eq!(fit.forecast(5).unwrap(), vec![3.0; 5]);
    }

    #[test]
    fn ses_hand_recursion() {
        let fit = ses(&[10.0, 20.0], 0.5).unwrap();
        // F_2 = Y_1 = 10, F_3 = 0.5·20 + 0.5·10 = 15.
        assert_eq!(fit.fitted(), &[10.0, 10.0]);
        assert_eq!(fit.level(), 15.0);
        assert_eq!(fit.forecast(2).unwrap(), vec![15.0, 15.0]);
    }

    #[test]
    fn ses_rejects_bad_alpha() {
        assert!(matches!(
            ses(&[1.0], 1.5),
            Err(Error::InvalidSmoothingConstant { .. })
        ));
        assert!(matches!(
            ses(&[1.0], -0.1),
            Err(Error::InvalidSmoothingConstant { .. })
        ));
    }

    #[test]
    fn ses_fitted_within_data_range() {
        let y = [4.0, 9.0, 6.0, 2.0, 8.0, 5.0];
        for i in 0..=10 {
            let alpha = i as f64 / 10.0;
            let fit = ses(&y, alpha).unwrap();
            for f in fit.fitted() {
                assert!(*f >= 2.0 && *f <= 9.0);
            }
        }
    }

    #[test]
    fn holt_continues_exact_line() {
        let y: Vec<f64> = (0..10).map(|t| 4.0 + 1.5 * t as f64).collect();
        for (alpha, beta) in [(0.1, 0.9), (0.5, 0.5), (1.0, 0.0), (0.0, 1.0)] {
            let fit = holt(&y, alpha, beta, ModelForm::Additive).unwrap();
            for (f, v) in fit.fitted().iter().zip(&y) {
                assert!((f - v).abs() < 1e-9);
            }
            let fc = fit.forecast(3).unwrap();
            for (p, f) in fc.iter().enumerate() {
                let want = 4.0 + 1.5 * (10 + p) as f64;
                assert!((f - want).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn holt_continues_exact_geometric_growth() {
        let y: Vec<f64> = (0..10).map(|t| 5.0 * 1.2f64.powi(t)).collect();
        let fit = holt(&y, 0.3, 0.4, ModelForm::Multiplicative).unwrap();
        for (f, v) in fit.fitted().iter().zip(&y) {
            assert!((f / v - 1.0).abs() < 1e-9);
        }
        let fc = fit.forecast(4).unwrap();
        for (p, f) in fc.iter().enumerate() {
            let want = 5.0 * 1.2f64.powi(10 + p as i32);
            assert!((f / want - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn holt_beta_zero_freezes_trend() {
        let y = [10.0, 12.0, 11.0, 15.0, 13.0];
        let fit = holt(&y, 0.4, 0.0, ModelForm::Additive).unwrap();
        // Trend stays at the initialization Y_2 − Y_1 = 2.
        assert_eq!(fit.trend(), 2.0);
    }

    #[test]
    fn holt_needs_two_points() {
        assert!(matches!(
            holt(&[1.0], 0.5, 0.5, ModelForm::Additive),
            Err(Error::InsufficientData { .. })
        ));
    }

    #[test]
    fn holt_multiplicative_rejects_nonpositive() {
        assert!(matches!(
            holt(&[1.0, 0.0, 2.0], 0.5, 0.5, ModelForm::Multiplicative),
            Err(Error::NonPositiveData(_))
        ));
    }

    #[test]
    fn holt_winters_needs_two_seasons() {
        let y = [1.0; 7];
        assert!(matches!(
            holt_winters(&y, &SmoothingParams::holt_winters(0.5, 0.5, 0.5), 4),
            Err(Error::InsufficientData { .. })
        ));
    }

    #[test]
    fn holt_winters_missing_gamma() {
        let y = [1.0; 8];
        assert!(matches!(
            holt_winters(&y, &SmoothingParams::holt(0.5, 0.5), 4),
            Err(Error::MissingSmoothingConstant("gamma"))
        ));
    }

    #[test]
    fn holt_winters_tracks_trended_pattern() {
        // Y_t = (10 + t) · m_t with a normalized 4-periodic pattern.
        let pattern = [0.9, 1.2, 0.8, 1.1];
        let y: Vec<f64> = (0..24).map(|t| (10.0 + t as f64) * pattern[t % 4]).collect();
        let params = optimize_params(&y, SmoothingModel::HoltWinters { period: 4 }).unwrap();
        let fit = holt_winters(&y, &params, 4).unwrap();
        let fc = fit.forecast(4).unwrap();
        for (m, f) in fc.iter().enumerate() {
            let t = 24 + m;
            let want = (10.0 + t as f64) * pattern[t % 4];
            assert!(
                (f / want - 1.0).abs() < 0.01,
                "step {m}: forecast {f} vs {want}"
            );
        }
    }

    #[test]
    fn holt_winters_constant_series_equals_holt() {
        let y = [6.0; 12];
        let hw = holt_winters(&y, &SmoothingParams::holt_winters(0.4, 0.3, 0.2), 4).unwrap();
        let h = holt(&y, 0.4, 0.3, ModelForm::Additive).unwrap();
        for (a, b) in hw.fitted().iter().zip(h.fitted()) {
            assert!((a - b).abs() < 1e-9);
        }
        let fa = hw.forecast(8).unwrap();
        let fb = h.forecast(8).unwrap();
        for (a, b) in fa.iter().zip(&fb) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn holt_winters_identity_seasonals_forecast_like_holt() {
        // With unit seasonals the forecast equation degenerates to the
        // additive-trend form.
        let fit = HoltWintersFit {
            alpha: 0.3,
            beta: 0.2,
            gamma: 0.1,
            period: 4,
            level: 50.0,
            trend: 2.5,
            seasonals: vec![1.0; 4],
            fitted: vec![],
        };
        let fc = fit.forecast(6).unwrap();
        for (m, f) in fc.iter().enumerate() {
            assert_eq!(*f, 50.0 + (m as f64 + 1.0) * 2.5);
        }
    }

    #[test]
    fn one_step_ahead_discipline_via_truncation() {
        let y: Vec<f64> = (0..20)
            .map(|t| 50.0 + 2.0 * t as f64 + ((t * 13) % 7) as f64)
            .collect();
        let full_ses = ses(&y, 0.37).unwrap();
        let full_holt = holt(&y, 0.37, 0.21, ModelForm::Additive).unwrap();
        let params = SmoothingParams::holt_winters(0.37, 0.21, 0.11);
        let full_hw = holt_winters(&y, &params, 4).unwrap();
        for m in 8..20 {
            let prefix = &y[..m];
            let s = ses(prefix, 0.37).unwrap();
            assert_eq!(s.fitted(), &full_ses.fitted()[..m]);
            let h = holt(prefix, 0.37, 0.21, ModelForm::Additive).unwrap();
            assert_eq!(h.fitted(), &full_holt.fitted()[..m]);
            let hw = holt_winters(prefix, &params, 4).unwrap();
            assert_eq!(hw.fitted(), &full_hw.fitted()[..m]);
        }
    }

    #[test]
    fn optimizer_ties_break_to_smallest_grid_point() {
        // On an exact line every (α, β) reaches zero MSD, so the first
        // grid point must win.
        let y: Vec<f64> = (0..12).map(|t| 2.0 + 3.0 * t as f64).collect();
        let p = optimize_params(&y, SmoothingModel::Holt(ModelForm::Additive)).unwrap();
        assert_eq!(p.alpha, 0.0);
        assert_eq!(p.beta, Some(0.0));
    }

    #[test]
    fn optimizer_never_worse_than_grid() {
        let y: Vec<f64> = (0..30)
            .map(|t| 100.0 + ((t * 17) % 13) as f64 - ((t * 5) % 7) as f64)
            .collect();
        for model in [
            SmoothingModel::Ses,
            SmoothingModel::Holt(ModelForm::Additive),
            SmoothingModel::HoltWinters { period: 4 },
        ] {
            let params = optimize_params(&y, model).unwrap();
            let mut p = vec![params.alpha];
            if let Some(b) = params.beta {
                p.push(b);
            }
            if let Some(g) = params.gamma {
                p.push(g);
            }
            let returned = objective(&y, model, &p);
            // Exhaustive re-evaluation of the full coarse grid.
            let d = dims(model);
            let grid: Vec<f64> = (0..=20).map(|i| i as f64 / 20.0).collect();
            let mut best = f64::INFINITY;
            let mut point = vec![0.0; d];
            scan_grid(&y, model, &grid, &mut point, 0, &mut vec![0.0; d], &mut best);
            assert!(returned <= best, "{model:?}: {returned} vs grid {best}");
        }
    }

    #[test]
    fn optimizer_deterministic() {
        let y: Vec<f64> = (0..25)
            .map(|t| 80.0 + 3.0 * ((t % 4) as f64) + ((t * 11) % 9) as f64)
            .collect();
        let a = optimize_params(&y, SmoothingModel::HoltWinters { period: 4 }).unwrap();
        let b = optimize_params(&y, SmoothingModel::HoltWinters { period: 4 }).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn optimizer_constant_series_is_fine() {
        let y = [5.0; 10];
        let p = optimize_params(&y, SmoothingModel::Ses).unwrap();
        // Everything fits a constant; smallest grid point wins.
        assert_eq!(p.alpha, 0.0);
    }
}
