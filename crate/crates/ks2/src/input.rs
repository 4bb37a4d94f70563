//! Sample-file ingestion and exact decimal threshold parsing.

use std::path::Path;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}:{line}: cannot parse {content:?} as a number")]
    Parse {
        path: String,
        line: usize,
        content: String,
    },
    #[error("{path}:{line}: value {value} is not finite")]
    NonFinite {
        path: String,
        line: usize,
        value: f64,
    },
    #[error("{path}: no values found")]
    Empty { path: String },
}

/// Reads one decimal value per line. Blank lines are skipped and lines
/// starting with `#` are comments. Every value must be finite.
pub fn read_sample_file(path: &Path) -> Result<Vec<f64>, InputError> {
    let display = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| InputError::Io {
        path: display.clone(),
        source,
    })?;
    let mut values = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let value: f64 = trimmed.parse().map_err(|_| InputError::Parse {
            path: display.clone(),
            line,
            content: trimmed.to_string(),
        })?;
        if !value.is_finite() {
            return Err(InputError::NonFinite {
                path: display.clone(),
                line,
                value,
            });
        }
        values.push(value);
    }
    if values.is_empty() {
        return Err(InputError::Empty { path: display });
    }
    Ok(values)
}

/// A non-negative decimal literal held exactly as a base-10 rational.
/// `0.1` is one tenth here, not the nearest double.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecimalRational {
    numer: BigUint,
    denom: BigUint,
}

impl DecimalRational {
    /// Accepts `digits`, `digits.digits`, `.digits`, with an optional
    /// `e`/`E` exponent.
    pub fn parse(text: &str) -> Option<Self> {
        let (mantissa, exponent) = match text.find(['e', 'E']) {
            Some(pos) => {
                let exp: i32 = text[pos + 1..].parse().ok()?;
                (&text[..pos], exp)
            }
            None => (text, 0),
        };
        let (int_part, frac_part) = match mantissa.find('.') {
            Some(pos) => (&mantissa[..pos], &mantissa[pos + 1..]),
            None => (mantissa, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        if !int_part.bytes().all(|b| b.is_ascii_digit())
            || !frac_part.bytes().all(|b| b.is_ascii_digit())
        {
            return None;
        }
        let digits: String = [int_part, frac_part].concat();
        let numer: BigUint = digits.parse().ok()?;
        let scale = frac_part.len() as i64 - exponent as i64;
        let ten = BigUint::from(10u32);
        let (numer, denom) = if scale >= 0 {
            (numer, ten.pow(scale as u32))
        } else {
            (numer * ten.pow((-scale) as u32), BigUint::one())
        };
        Some(Self { numer, denom })
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    /// Smallest integer `c` with `c/(m*n) >= self`, by exact comparison:
    /// `c = ceil(numer * m * n / denom)`.
    pub fn ceil_threshold(&self, m: u64, n: u64) -> BigUint {
        let mn = BigUint::from(m) * BigUint::from(n);
        let num = &self.numer * mn;
        (&num + &self.denom - BigUint::one()) / &self.denom
    }
}
