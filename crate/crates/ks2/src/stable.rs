//! Tail probability `P2 = Prob[D >= d]` by a banded rolling-row sweep.
//!
//! Each cell holds the proportion of equally likely monotone paths reaching
//! `(i, j)` that have already touched a point outside the corridor: 1 on
//! outside points, 0 on in-corridor edge cells, and otherwise
//!
//! ```text
//! C(i, j) = (i * C(i-1, j) + j * C(i, j-1)) / (i + j)
//! ```
//!
//! a convex combination of the two predecessors. Intermediate values never
//! leave `[0, 1]` and a small tail probability is produced directly instead
//! of as `1 - x` with `x` indistinguishable from 1 in double precision.

use thiserror::Error;

use crate::corridor::CorridorSpec;

/// Full-table evaluation refuses grids with more than this many cells.
pub const MAX_FULL_TABLE_CELLS: u128 = 100_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("full table for m={m}, n={n} exceeds {MAX_FULL_TABLE_CELLS} cells")]
pub struct TableTooLarge {
    pub m: u64,
    pub n: u64,
}

/// One rolling row of the sweep: `values()[k]` is the cell value at grid
/// column `start_j() + k`.
#[derive(Debug, Clone)]
pub struct BandRow {
    start_j: u64,
    values: Vec<f64>,
}

impl BandRow {
    fn with_width(width: usize) -> Self {
        Self {
            start_j: 0,
            values: vec![0.0; width],
        }
    }

    pub fn start_j(&self) -> u64 {
        self.start_j
    }

    pub fn width(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Cell value at column `j`. Columns outside the stored window are
    /// outside the corridor, where the proportion is exactly 1.
    pub fn get(&self, j: u64) -> f64 {
        if j < self.start_j {
            return 1.0;
        }
        self.values
            .get((j - self.start_j) as usize)
            .copied()
            .unwrap_or(1.0)
    }
}

/// Banded evaluation in O(m * band) time and O(band) memory.
pub fn p2_stable(spec: &CorridorSpec) -> f64 {
    if spec.all_outside() {
        return 1.0;
    }
    if spec.none_outside() {
        return 0.0;
    }
    sweep(spec, spec.band_width())
}

/// Unbanded reference: the same recurrence over every column of every row.
/// Exists to validate the banding, not for production use.
pub fn p2_stable_full(spec: &CorridorSpec) -> Result<f64, TableTooLarge> {
    let (m, n) = (spec.m(), spec.n());
    if m as u128 * n as u128 > MAX_FULL_TABLE_CELLS {
        return Err(TableTooLarge { m, n });
    }
    if spec.all_outside() {
        return Ok(1.0);
    }
    if spec.none_outside() {
        return Ok(0.0);
    }
    Ok(sweep(spec, n + 1))
}

fn sweep(spec: &CorridorSpec, width: u64) -> f64 {
    let (m, n) = (spec.m(), spec.n());
    let width_slots = width as usize;
    let mut prev = BandRow::with_width(width_slots);
    let mut cur = BandRow::with_width(width_slots);
    for i in 0..=m {
        cur.start_j = spec.window_start(i, width);
        let mut left = 1.0; // the column before the window is outside
        for k in 0..width_slots {
            let j = cur.start_j + k as u64;
            let value = if spec.is_outside(i, j) {
                1.0
            } else if i == 0 || j == 0 {
                0.0
            } else {
                (prev.get(j) * i as f64 + left * j as f64) / ((i + j) as f64)
            };
            cur.values[k] = value;
            left = value;
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev.get(n)
}
