//! Exact two-sample KS statistic as an integer fraction.
//!
//! The statistic `D = sup_x |F_m(x) - G_n(x)|` of two empirical
//! distribution functions is always attained at an observed value and is a
//! multiple of `1/(m*n)`. We keep the integer numerator `c = m*n*D` so that
//! downstream corridor tests stay in exact integer arithmetic; boundary
//! cases `|i/m - j/n| = d` are then decided deterministically.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StatisticError {
    #[error("sample is empty")]
    EmptySample,
    #[error("sample value at index {index} is not finite: {value}")]
    NonFiniteValue { index: usize, value: f64 },
    #[error("value {value} occurs in both samples and the tie policy is reject")]
    TieRejected { value: f64 },
}

/// A validated sample: non-empty, finite, stored sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    values: Vec<f64>,
}

impl Sample {
    pub fn new(values: Vec<f64>) -> Result<Self, StatisticError> {
        if values.is_empty() {
            return Err(StatisticError::EmptySample);
        }
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() {
                return Err(StatisticError::NonFiniteValue { index, value });
            }
        }
        let mut values = values;
        values.sort_by(f64::total_cmp);
        Ok(Self { values })
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
}

/// How to treat values occurring in both samples. The continuity assumption
/// behind the null distribution makes cross-sample ties a measure-zero
/// event, so their handling is a policy, not a formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TiePolicy {
    /// Evaluate the ECDF difference at the union of observed values,
    /// treating a tied value as one evaluation point.
    #[default]
    Resolve,
    /// Fail on any cross-sample tie.
    Reject,
}

/// Exact statistic `D = c/(m*n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KsStatistic {
    pub m: u64,
    pub n: u64,
    pub c: u64,
}

impl KsStatistic {
    /// The statistic as a double, for display only.
    pub fn d(&self) -> f64 {
        self.c as f64 / (self.m as f64 * self.n as f64)
    }
}

/// Statistic plus tie diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StatisticOutcome {
    pub statistic: KsStatistic,
    pub ties_detected: bool,
}

/// Merge sweep over both sorted samples. At each distinct observed value
/// `v`, let `i` and `j` count the values `<= v` in each sample; then
/// `c = max |i*n - j*m|` over all evaluation points.
pub fn compute_statistic(
    xs: &Sample,
    ys: &Sample,
    policy: TiePolicy,
) -> Result<StatisticOutcome, StatisticError> {
    let xs = xs.values();
    let ys = ys.values();
    let (m, n) = (xs.len() as u64, ys.len() as u64);
    let mut i = 0usize;
    let mut j = 0usize;
    let mut best: i128 = 0;
    let mut ties_detected = false;
    while i < xs.len() || j < ys.len() {
        let v = match (xs.get(i), ys.get(j)) {
            (Some(&x), Some(&y)) => x.min(y),
            (Some(&x), None) => x,
            (None, Some(&y)) => y,
            (None, None) => unreachable!("loop condition"),
        };
        if i < xs.len() && j < ys.len() && xs[i] == v && ys[j] == v {
            ties_detected = true;
            if policy == TiePolicy::Reject {
                return Err(StatisticError::TieRejected { value: v });
            }
        }
        while i < xs.len() && xs[i] == v {
            i += 1;
        }
        while j < ys.len() && ys[j] == v {
            j += 1;
        }
        let delta = i as i128 * n as i128 - j as i128 * m as i128;
        best = best.max(delta.abs());
    }
    Ok(StatisticOutcome {
        statistic: KsStatistic {
            m,
            n,
            c: best as u64,
        },
        ties_detected,
    })
}
