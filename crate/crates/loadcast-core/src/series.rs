//! Calendar-anchored consumption series and the splits every model consumes.

use alloc::vec::Vec;

use crate::{Error, Result};

/// A calendar month, totally ordered, with arithmetic over month counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonthKey {
    year: i32,
    month: u8,
}

impl MonthKey {
    pub fn new(year: i32, month: u32) -> Result<Self> {
        if !(1..=12).contains(&month) {
            return Err(Error::InvalidMonth(month));
        }
        Ok(MonthKey {
            year,
            month: month as u8,
        })
    }

    pub fn year(&self) -> i32 {
        self.year
    }

    pub fn month(&self) -> u32 {
        self.month as u32
    }

    /// The month `n` steps after (or before, for negative `n`) this one.
    pub fn plus_months(&self, n: i64) -> MonthKey {
        let zero_based = self.year as i64 * 12 + (self.month as i64 - 1) + n;
        MonthKey {
            year: zero_based.div_euclid(12) as i32,
            month: (zero_based.rem_euclid(12) + 1) as u8,
        }
    }

    pub fn next(&self) -> MonthKey {
        self.plus_months(1)
    }
}

impl core::fmt::Display for MonthKey {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{:04}-{:02}", self.year, self.month)
    }
}

/// Signed number of months from `origin` to `key`.
///
/// This is a bijection between month keys and integers for a fixed origin;
/// `month_index(origin, origin)` is 0.
pub fn month_index(key: MonthKey, origin: MonthKey) -> i64 {
    (key.year as i64 - origin.year as i64) * 12 + (key.month as i64 - origin.month as i64)
}

/// A contiguous run of monthly consumption values (kWh).
///
/// Values are finite and non-negative; the sequence has no gaps or
/// duplicates and is at least one month long. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct MonthlySeries {
    start: MonthKey,
    values: Vec<f64>,
}

impl MonthlySeries {
    pub fn new(start: MonthKey, values: Vec<f64>) -> Result<Self> {
        validate_values(&values)?;
        Ok(MonthlySeries { start, values })
    }

    pub fn start(&self) -> MonthKey {
        self.start
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Month key of the observation at `index`.
    pub fn month_at(&self, index: usize) -> MonthKey {
        self.start.plus_months(index as i64)
    }

    /// Last observed month.
    pub fn end(&self) -> MonthKey {
        self.month_at(self.len() - 1)
    }

    /// Collapses the series into non-overlapping three-month means.
    ///
    /// Blocks are anchored at the series start; a trailing partial block is
    /// dropped rather than padded.
    pub fn aggregate_quarterly(&self) -> Result<QuarterlySeries> {
        if self.len() < 3 {
            return Err(Error::InsufficientData {
                context: "insufficient data for quarterly aggregation",
                needed: 3,
                actual: self.len(),
            });
        }
        let blocks = self.len() / 3;
        let values = (0..blocks)
            .map(|i| (self.values[3 * i] + self.values[3 * i + 1] + self.values[3 * i + 2]) / 3.0)
            .collect();
        Ok(QuarterlySeries {
            start: self.start,
            values,
        })
    }

    /// Splits off the last `k` months as a holdout set.
    ///
    /// The concatenation of the two parts reproduces the series exactly.
    pub fn split_holdout(&self, k: usize) -> Result<(MonthlySeries, MonthlySeries)> {
        if k == 0 || k >= self.len() {
            return Err(Error::HoldoutOutOfRange { k, len: self.len() });
        }
        let cut = self.len() - k;
        let train = MonthlySeries {
            start: self.start,
            values: self.values[..cut].to_vec(),
        };
        let test = MonthlySeries {
            start: self.start.plus_months(cut as i64),
            values: self.values[cut..].to_vec(),
        };
        Ok((train, test))
    }
}

/// Three-month mean consumption blocks derived from a monthly series.
#[derive(Debug, Clone, PartialEq)]
pub struct QuarterlySeries {
    start: MonthKey,
    values: Vec<f64>,
}

impl QuarterlySeries {
    /// First month of the first block.
    pub fn start(&self) -> MonthKey {
        self.start
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// First month of block `index`.
    pub fn month_at(&self, index: usize) -> MonthKey {
        self.start.plus_months(3 * index as i64)
    }
}

/// Multi-rate metering windows. Metadata only; no arithmetic depends on the
/// hour ranges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TariffPeriod {
    /// Single-rate total, 00:00-24:00.
    Total,
    /// 06:00-17:00.
    Day,
    /// 17:00-22:00.
    Peak,
    /// 22:00-06:00.
    Night,
}

impl TariffPeriod {
    pub const ALL: [TariffPeriod; 4] = [
        TariffPeriod::Total,
        TariffPeriod::Day,
        TariffPeriod::Peak,
        TariffPeriod::Night,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            TariffPeriod::Total => "total",
            TariffPeriod::Day => "day",
            TariffPeriod::Peak => "peak",
            TariffPeriod::Night => "night",
        }
    }

    /// Clock window covered by the tariff, as "HH:MM-HH:MM".
    pub fn hours(&self) -> &'static str {
        match self {
            TariffPeriod::Total => "00:00-24:00",
            TariffPeriod::Day => "06:00-17:00",
            TariffPeriod::Peak => "17:00-22:00",
            TariffPeriod::Night => "22:00-06:00",
        }
    }
}

impl core::fmt::Display for TariffPeriod {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

fn validate_values(values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    for (i, v) in values.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::NonFiniteValue(i));
        }
        if *v < 0.0 {
            return Err(Error::NegativeValue(i));
        }
    }
    Ok(())
}
