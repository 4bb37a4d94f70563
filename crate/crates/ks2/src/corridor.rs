//! Integer geometry of the corridor `|i*n - j*m| < c` over the grid of
//! points `(i, j)` with `0 <= i <= m`, `0 <= j <= n`.
//!
//! Both the floating-point sweep and the big-integer path counter walk the
//! same banded window per row. Keeping the bounds arithmetic in one place,
//! and in exact integers, guarantees a boundary cell is never classified
//! differently by the two evaluators.

/// Corridor threshold for a pair of sample sizes.
///
/// A grid point `(i, j)` is *outside* iff `|i*n - j*m| >= c`, the integer
/// form of `|i/m - j/n| >= d` with `d = c/(m*n)`. The boundary counts as
/// outside. `c <= 0` puts every point outside; `c > m*n` puts every
/// reachable point inside.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CorridorSpec {
    m: u64,
    n: u64,
    c: i64,
}

impl CorridorSpec {
    /// Both sample sizes must be positive.
    pub fn new(m: u64, n: u64, c: i64) -> Self {
        assert!(m >= 1 && n >= 1, "sample sizes must be positive");
        Self { m, n, c }
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    /// Every grid point is outside (tail probability 1).
    pub fn all_outside(&self) -> bool {
        self.c <= 0
    }

    /// No grid point is outside (tail probability 0).
    pub fn none_outside(&self) -> bool {
        self.c > 0 && self.c as u128 > self.m as u128 * self.n as u128
    }

    /// Exact membership test: `|i*n - j*m| >= c`.
    pub fn is_outside(&self, i: u64, j: u64) -> bool {
        debug_assert!(i <= self.m && j <= self.n);
        let delta = i as i128 * self.n as i128 - j as i128 * self.m as i128;
        delta.abs() >= self.c as i128
    }

    /// Column interval `[j_min, j_max]` containing every in-corridor column
    /// of row `i`, clamped to the grid. Requires `0 < c <= m*n`. The
    /// interval may be empty (`j_min > j_max`) for rows the corridor skips.
    pub fn row_bounds(&self, i: u64) -> (u64, u64) {
        debug_assert!(!self.all_outside() && !self.none_outside());
        debug_assert!(i <= self.m);
        let (m, n, c) = (self.m as i128, self.n as i128, self.c as i128);
        let i = i as i128;
        // smallest j with j*m > i*n - c, largest j with j*m < i*n + c
        let j_min = (i * n - c).div_euclid(m) + 1;
        let j_max = -(-(i * n + c)).div_euclid(m) - 1;
        (j_min.max(0) as u64, j_max.min(n) as u64)
    }

    /// Width of the rolling band: `floor(2c/m) + 2`, clamped to `n + 1`.
    /// Covers the in-corridor interval of any row plus a sentinel slot.
    pub fn band_width(&self) -> u64 {
        debug_assert!(self.c > 0);
        let raw = (2 * self.c as i128).div_euclid(self.m as i128) + 2;
        (raw as u128).min(self.n as u128 + 1) as u64
    }

    /// First column of the stored window for row `i`, positioned so the
    /// window holds every in-corridor column and stays inside `[0, n]`.
    pub fn window_start(&self, i: u64, width: u64) -> u64 {
        debug_assert!(width >= 1 && width <= self.n + 1);
        let (j_min, _) = self.row_bounds(i);
        j_min.min(self.n + 1 - width)
    }
}
