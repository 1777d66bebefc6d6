//! Forecast-accuracy metrics and the multi-metric ranking used to pick the
//! best approach per series.

use alloc::vec::Vec;

use crate::math::abs;
use crate::{Error, Result};

/// The three accuracy measures reported for every fitted approach.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorTriple {
    /// Mean absolute percentage error, in percent.
    pub mape: f64,
    /// Mean absolute deviation, in kWh.
    pub mad: f64,
    /// Mean squared deviation, in kWh².
    pub msd: f64,
}

fn check_pair(actual: &[f64], fitted: &[f64]) -> Result<()> {
    if actual.len() != fitted.len() {
        return Err(Error::LengthMismatch {
            left: actual.len(),
            right: fitted.len(),
        });
    }
    if actual.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(())
}

/// Mean absolute deviation: the average of |Y_t − Ŷ_t|.
pub fn mad(actual: &[f64], fitted: &[f64]) -> Result<f64> {
    check_pair(actual, fitted)?;
    let sum: f64 = actual
        .iter()
        .zip(fitted)
        .map(|(a, f)| abs(a - f))
        .sum();
    Ok(sum / actual.len() as f64)
}

/// Mean squared deviation: the average of (Y_t − Ŷ_t)².
pub fn msd(actual: &[f64], fitted: &[f64]) -> Result<f64> {
    check_pair(actual, fitted)?;
    let sum: f64 = actual
        .iter()
        .zip(fitted)
        .map(|(a, f)| (a - f) * (a - f))
        .sum();
    Ok(sum / actual.len() as f64)
}

/// Mean absolute percentage error: 100/n · Σ |Y_t − Ŷ_t| / |Y_t|.
///
/// Undefined when any actual value is zero.
pub fn mape(actual: &[f64], fitted: &[f64]) -> Result<f64> {
    check_pair(actual, fitted)?;
    let mut sum = 0.0;
    for (a, f) in actual.iter().zip(fitted) {
        if *a == 0.0 {
            return Err(Error::ZeroActual);
        }
        sum += abs(a - f) / abs(*a);
    }
    Ok(100.0 * sum / actual.len() as f64)
}

/// All three metrics in one pass over the pair.
pub fn error_triple(actual: &[f64], fitted: &[f64]) -> Result<ErrorTriple> {
    Ok(ErrorTriple {
        mape: mape(actual, fitted)?,
        mad: mad(actual, fitted)?,
        msd: msd(actual, fitted)?,
    })
}

/// Signed percentage gap between an actual value and its forecast,
/// 100 · (actual − forecast) / actual. Positive means under-forecast.
pub fn approximation_pct_error(actual: f64, forecast: f64) -> Result<f64> {
    if actual == 0.0 {
        return Err(Error::ZeroActual);
    }
    Ok(100.0 * (actual - forecast) / actual)
}

/// One approach's position in the cross-metric ranking.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedModel {
    pub id: u32,
    pub triple: ErrorTriple,
    /// Average rank on MAPE (ties share the mean rank, 1 = best).
    pub mape_rank: f64,
    pub mad_rank: f64,
    pub msd_rank: f64,
    /// Sum of the three per-metric ranks; smallest wins.
    pub rank_sum: f64,
}

/// Result of ranking a set of approaches on MAPE, MAD and MSD together.
#[derive(Debug, Clone, PartialEq)]
pub struct Ranking {
    /// Ranked entries, sorted by approach id.
    pub entries: Vec<RankedModel>,
    /// Approach id with the minimal rank sum (ties broken by MAPE, then
    /// MAD, then MSD, then the lowest id).
    pub best: u32,
}

/// Average ranks within `values`: ties share the mean of their positions.
fn average_ranks(values: &[f64]) -> Vec<f64> {
    values
        .iter()
        .map(|v| {
            let less = values.iter().filter(|o| **o < *v).count();
            let equal = values.iter().filter(|o| **o == *v).count();
            less as f64 + (equal as f64 + 1.0) / 2.0
        })
        .collect()
}

/// Ranks approaches per metric, sums the ranks, and picks the best.
///
/// The combiner is deliberately monotone: an approach that beats another on
/// all three metrics always ranks ahead of it.
pub fn rank_models(models: &[(u32, ErrorTriple)]) -> Result<Ranking> {
    if models.is_empty() {
        return Err(Error::EmptyInput);
    }
    for (id, t) in models {
        if t.mape.is_nan() || t.mad.is_nan() || t.msd.is_nan() {
            return Err(Error::NanMetric(*id));
        }
    }

    let mapes: Vec<f64> = models.iter().map(|(_, t)| t.mape).collect();
    let mads: Vec<f64> = models.iter().map(|(_, t)| t.mad).collect();
    let msds: Vec<f64> = models.iter().map(|(_, t)| t.msd).collect();
    let mape_ranks = average_ranks(&mapes);
    let mad_ranks = average_ranks(&mads);
    let msd_ranks = average_ranks(&msds);

    let mut entries: Vec<RankedModel> = models
        .iter()
        .enumerate()
        .map(|(i, (id, triple))| RankedModel {
            id: *id,
            triple: *triple,
            mape_rank: mape_ranks[i],
            mad_rank: mad_ranks[i],
            msd_rank: msd_ranks[i],
            rank_sum: mape_ranks[i] + mad_ranks[i] + msd_ranks[i],
        })
        .collect();
    entries.sort_by_key(|e| e.id);

    let best = entries
        .iter()
        .min_by(|a, b| {
            a.rank_sum
                .total_cmp(&b.rank_sum)
                .then(a.triple.mape.total_cmp(&b.triple.mape))
                .then(a.triple.mad.total_cmp(&b.triple.mad))
                .then(a.triple.msd.total_cmp(&b.triple.msd))
                .then(a.id.cmp(&b.id))
        })
        .expect("non-empty")
        .id;

    Ok(Ranking { entries, best })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn mad_examples() {
        assert_eq!(mad(&[1.0, 2.0], &[1.0, 2.0]).unwrap(), 0.0);
        assert_eq!(mad(&[100.0, 200.0], &[110.0, 190.0]).unwrap(), 10.0);
        assert_eq!(mad(&[5.0], &[8.0]).unwrap(), 3.0);
    }

    #[test]
    fn msd_examples() {
        assert_eq!(msd(&[1.0, 2.0], &[1.0, 2.0]).unwrap(), 0.0);
        assert_eq!(msd(&[100.0, 200.0], &[110.0, 190.0]).unwrap(), 100.0);
        assert_eq!(msd(&[5.0], &[8.0]).unwrap(), 9.0);
    }

    #[test]
    fn mape_examples() {
        assert_eq!(mape(&[7.0, 9.0], &[7.0, 9.0]).unwrap(), 0.0);
        let v = mape(&[100.0, 200.0], &[110.0, 190.0]).unwrap();
        assert!((v - 7.5).abs() < 1e-12);
        assert_eq!(mape(&[0.0, 1.0], &[1.0, 1.0]).unwrap_err(), Error::ZeroActual);
    }

    #[test]
    fn metric_length_and_empty_errors() {
        assert!(matches!(
            mad(&[1.0], &[1.0, 2.0]),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(msd(&[], &[]), Err(Error::EmptyInput)));
    }

    #[test]
    fn approximation_error_sign_convention() {
        assert_eq!(approximation_pct_error(100.0, 100.0).unwrap(), 0.0);
        assert_eq!(approximation_pct_error(100.0, 120.0).unwrap(), -20.0);
        assert_eq!(approximation_pct_error(100.0, 90.0).unwrap(), 10.0);
        assert_eq!(
            approximation_pct_error(0.0, 1.0).unwrap_err(),
            Error::ZeroActual
        );
    }

    #[test]
    fn single_model_is_best() {
        let t = ErrorTriple {
            mape: 1.0,
            mad: 2.0,
            msd: 5.0,
        };
        let r = rank_models(&[(7, t)]).unwrap();
        assert_eq!(r.best, 7);
        assert_eq!(r.entries[0].rank_sum, 3.0);
    }

    #[test]
    fn dominant_model_wins() {
        let a = ErrorTriple {
            mape: 1.0,
            mad: 1.0,
            msd: 1.0,
        };
        let b = ErrorTriple {
            mape: 2.0,
            mad: 3.0,
            msd: 4.0,
        };
        let r = rank_models(&[(2, b), (1, a)]).unwrap();
        assert_eq!(r.best, 1);
    }

    #[test]
    fn mixed_ranks_match_enumeration() {
        // Three approaches with hand-built triples; brute-force the rank
        // sums independently.
        let triples = [
            (1u32, ErrorTriple { mape: 3.0, mad: 1.0, msd: 2.0 }),
            (2u32, ErrorTriple { mape: 1.0, mad: 2.0, msd: 3.0 }),
            (3u32, ErrorTriple { mape: 2.0, mad: 3.0, msd: 1.0 }),
        ];
        let r = rank_models(&triples).unwrap();
        // Every approach has rank sum 6; tie-break falls through to MAPE.
        for e in &r.entries {
            assert_eq!(e.rank_sum, 6.0);
        }
        assert_eq!(r.best, 2);
    }

    #[test]
    fn ties_share_average_rank() {
        let t = |m| ErrorTriple {
            mape: m,
            mad: 1.0,
            msd: 1.0,
        };
        let r = rank_models(&[(1, t(5.0)), (2, t(5.0)), (3, t(9.0))]).unwrap();
        let e1 = &r.entries[0];
        assert_eq!(e1.mape_rank, 1.5);
        assert_eq!(r.entries[2].mape_rank, 3.0);
        // MAD/MSD fully tied: everyone gets rank 2.
        assert_eq!(e1.mad_rank, 2.0);
    }

    #[test]
    fn permutation_invariant_best() {
        let triples = vec![
            (1u32, ErrorTriple { mape: 3.0, mad: 5.0, msd: 9.0 }),
            (2u32, ErrorTriple { mape: 2.0, mad: 6.0, msd: 8.0 }),
            (3u32, ErrorTriple { mape: 4.0, mad: 4.0, msd: 7.0 }),
        ];
        let r1 = rank_models(&triples).unwrap();
        let mut rev = triples.clone();
        rev.reverse();
        let r2 = rank_models(&rev).unwrap();
        assert_eq!(r1.best, r2.best);
        assert_eq!(r1.entries, r2.entries);
    }

    #[test]
    fn nan_rejected() {
        let t = ErrorTriple {
            mape: f64::NAN,
            mad: 0.0,
            msd: 0.0,
        };
        assert_eq!(rank_models(&[(4, t)]).unwrap_err(), Error::NanMetric(4));
    }

    #[test]
    fn empty_rejected() {
        assert_eq!(rank_models(&[]).unwrap_err(), Error::EmptyInput);
    }
}
