//! Property-based invariants across the model and metric modules.

use loadcast_core::decomposition::{fit_decomposition, DecompositionModel};
use loadcast_core::evaluation::{error_triple, mad, mape, msd, rank_models, ErrorTriple};
use loadcast_core::regression::fit_regression;
use loadcast_core::series::{month_index, MonthKey, MonthlySeries};
use loadcast_core::smoothing::ses;
use loadcast_core::ModelForm;
use proptest::prelude::*;

fn series_strategy(min_len: usize, max_len: usize) -> impl Strategy<Value = MonthlySeries> {
    (
        1990i32..2030,
        1u32..=12,
        prop::collection::vec(0.01f64..10_000.0, min_len..=max_len),
    )
        .prop_map(|(y, m, values)| {
            MonthlySeries::new(MonthKey::new(y, m).unwrap(), values).unwrap()
        })
}

proptest! {
    #[test]
    fn split_then_concat_is_identity(series in series_strategy(2, 60), k in 1usize..59) {
        prop_assume!(k < series.len());
        let (train, test) = series.split_holdout(k).unwrap();
        let mut rebuilt = train.values().to_vec();
        rebuilt.extend_from_slice(test.values());
        prop_assert_eq!(rebuilt, series.values());
        prop_assert_eq!(test.start(), train.start().plus_months(train.len() as i64));
    }

    #[test]
    fn quarterly_aggregation_preserves_mean(series in series_strategy(3, 60)) {
        let q = series.aggregate_quarterly().unwrap();
        let used = 3 * (series.len() / 3);
        let monthly_mean: f64 = series.values()[..used].iter().sum::<f64>() / used as f64;
        let quarterly_mean: f64 = q.values().iter().sum::<f64>() / q.len() as f64;
        prop_assert!((monthly_mean - quarterly_mean).abs() <= 1e-12 * monthly_mean.abs());
    }

    #[test]
    fn month_index_is_additive(y in 1990i32..2030, m in 1u32..=12, a in -300i64..300, b in -300i64..300) {
        let origin = MonthKey::new(y, m).unwrap();
        let k = origin.plus_months(a);
        prop_assert_eq!(month_index(k, origin), a);
        prop_assert_eq!(month_index(k.plus_months(b), origin), a + b);
    }

    #[test]
    fn metric_scale_behavior(
        pairs in prop::collection::vec((1.0f64..1000.0, 0.0f64..1000.0), 1..40),
        c in 0.001f64..1000.0,
    ) {
        let actual: Vec<f64> = pairs.iter().map(|(a, _)| *a).collect();
        let fitted: Vec<f64> = pairs.iter().map(|(_, f)| *f).collect();
        let scaled_a: Vec<f64> = actual.iter().map(|v| v * c).collect();
        let scaled_f: Vec<f64> = fitted.iter().map(|v| v * c).collect();

        let mad0 = mad(&actual, &fitted).unwrap();
        let msd0 = msd(&actual, &fitted).unwrap();
        let mape0 = mape(&actual, &fitted).unwrap();
        let mad1 = mad(&scaled_a, &scaled_f).unwrap();
        let msd1 = msd(&scaled_a, &scaled_f).unwrap();
        let mape1 = mape(&scaled_a, &scaled_f).unwrap();

        prop_assert!((mad1 - c * mad0).abs() <= 1e-12 * (c * mad0).abs().max(1e-300));
        prop_assert!((msd1 - c * c * msd0).abs() <= 1e-12 * (c * c * msd0).abs().max(1e-300));
        prop_assert!((mape1 - mape0).abs() <= 1e-12 * mape0.abs().max(1e-300));
    }

    #[test]
    fn msd_dominates_mad_squared(
        pairs in prop::collection::vec((1.0f64..1000.0, 0.0f64..1000.0), 1..40),
    ) {
        let actual: Vec<f64> = pairs.iter().map(|(a, _)| *a).collect();
        let fitted: Vec<f64> = pairs.iter().map(|(_, f)| *f).collect();
        let t = error_triple(&actual, &fitted).unwrap();
        prop_assert!(t.msd >= t.mad * t.mad - 1e-9 * t.msd.abs().max(1.0));
    }

    #[test]
    fn ses_fitted_stays_in_data_hull(
        values in prop::collection::vec(0.0f64..1000.0, 1..50),
        alpha_steps in 0u32..=20,
    ) {
        let alpha = alpha_steps as f64 / 20.0;
        let fit = ses(&values, alpha).unwrap();
        let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        for f in fit.fitted() {
            prop_assert!(*f >= lo - 1e-9 && *f <= hi + 1e-9);
        }
    }

    #[test]
    fn decomposition_indices_stay_normalized(
        values in prop::collection::vec(1.0f64..1000.0, 8..48),
        centered in any::<bool>(),
    ) {
        let model = DecompositionModel::new(ModelForm::Multiplicative, centered, 4).unwrap();
        if let Ok(fit) = fit_decomposition(&values, &model) {
            let sum: f64 = fit.indices().iter().sum();
            prop_assert!((sum - 4.0).abs() < 1e-9);
            for i in fit.indices() {
                prop_assert!(*i > 0.0);
            }
        }
        let additive = DecompositionModel::new(ModelForm::Additive, centered, 4).unwrap();
        if let Ok(fit) = fit_decomposition(&values, &additive) {
            let sum: f64 = fit.indices().iter().sum();
            prop_assert!(sum.abs() < 1e-9);
        }
    }

    #[test]
    fn regression_residual_mean_zero(values in prop::collection::vec(0.0f64..1000.0, 5..60)) {
        if let Ok(fit) = fit_regression(&values, 4) {
            let mean_resid: f64 = values
                .iter()
                .zip(fit.fitted())
                .map(|(a, f)| a - f)
                .sum::<f64>()
                / values.len() as f64;
            let scale = values.iter().map(|v| v.abs()).fold(1.0, f64::max);
            prop_assert!(mean_resid.abs() < 1e-9 * scale);
        }
    }

    #[test]
    fn dominant_approach_always_wins(
        triples in prop::collection::vec((0.1f64..100.0, 0.1f64..100.0, 0.1f64..100.0), 2..12),
    ) {
        // Plant a strictly dominating entry and check it is selected.
        let mut models: Vec<(u32, ErrorTriple)> = triples
            .iter()
            .enumerate()
            .map(|(i, (a, b, c))| {
                (
                    i as u32 + 2,
                    ErrorTriple { mape: a + 1.0, mad: b + 1.0, msd: c + 1.0 },
                )
            })
            .collect();
        models.push((1, ErrorTriple { mape: 0.05, mad: 0.05, msd: 0.05 }));
        let ranking = rank_models(&models).unwrap();
        prop_assert_eq!(ranking.best, 1);
    }
}
