//! Ground-truth evaluators in exact arithmetic.
//!
//! The classical path-counting recurrence over the banded corridor runs in
//! big integers, a brute-force enumerator covers tiny instances, and
//! [`ExactP`] carries the resulting rational with a correctly rounded
//! conversion to `f64`. These exist to validate the floating-point sweep,
//! not to replace it.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::corridor::CorridorSpec;

/// Default cap on `m + n` for the big-integer recurrence.
pub const DEFAULT_MAX_MN: u64 = 2000;

/// Brute-force enumeration is limited to `m + n <= 22` (~700k paths).
pub const MAX_BRUTE_FORCE_STEPS: u64 = 22;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("m + n = {sum} exceeds the exact-arithmetic cap of {cap}")]
    ResourceLimit { sum: u64, cap: u64 },
    #[error("brute force requires m + n <= {max}, got {sum}")]
    TooManyPaths { sum: u64, max: u64 },
}

/// Exact probability in `[0, 1]`, kept in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactP {
    numer: BigUint,
    denom: BigUint,
}

impl ExactP {
    pub fn new(numer: BigUint, denom: BigUint) -> Self {
        assert!(!denom.is_zero(), "denominator must be positive");
        assert!(numer <= denom, "probability cannot exceed 1");
        let g = numer.gcd(&denom);
        Self {
            numer: &numer / &g,
            denom: &denom / &g,
        }
    }

    pub fn zero() -> Self {
        Self::new(BigUint::zero(), BigUint::one())
    }

    pub fn one() -> Self {
        Self::new(BigUint::one(), BigUint::one())
    }

    pub fn numer(&self) -> &BigUint {
        &self.numer
    }

    pub fn denom(&self) -> &BigUint {
        &self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.numer == self.denom
    }

    /// `1 - p`, exactly. Stays in lowest terms because
    /// `gcd(d - n, d) = gcd(n, d) = 1`.
    pub fn complement(&self) -> ExactP {
        ExactP {
            numer: &self.denom - &self.numer,
            denom: self.denom.clone(),
        }
    }

    /// Nearest-even rounding to double precision.
    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.numer, &self.denom)
    }

    /// Rounded value plus an underflow flag: set when a strictly positive
    /// rational is too small for the smallest subnormal and collapses to 0.
    pub fn to_f64_flagged(&self) -> (f64, bool) {
        let f = self.to_f64();
        (f, f == 0.0 && !self.numer.is_zero())
    }
}

impl fmt::Display for ExactP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer, self.denom)
    }
}

impl PartialOrd for ExactP {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactP {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.numer * &other.denom).cmp(&(&other.numer * &self.denom))
    }
}

/// Correctly rounded (nearest-even) conversion of `numer/denom` to `f64`.
///
/// Handles the full double range including subnormals; values at or below
/// half the smallest subnormal round to 0.
pub fn rational_to_f64(numer: &BigUint, denom: &BigUint) -> f64 {
    assert!(!denom.is_zero(), "denominator must be positive");
    if numer.is_zero() {
        return 0.0;
    }
    let t = numer.bits() as i64 - denom.bits() as i64;
    // e = floor(log2(numer/denom)); the bit-length difference is off by at
    // most one, settled by an exact comparison against 2^t
    let e = if at_least_pow2(numer, denom, t) { t } else { t - 1 };
    if e >= 1024 {
        return f64::INFINITY;
    }
    if e >= -1022 {
        // normal: round numer/denom * 2^(52-e) to an integer significand
        let shift = 52 - e;
        let (a, b) = if shift >= 0 {
            (numer << shift as u64, denom.clone())
        } else {
            (numer.clone(), denom << (-shift) as u64)
        };
        let mut sig = round_half_even(&a, &b);
        let mut e = e;
        if sig.bits() == 54 {
            // rounded up to 2^53: renormalize
            sig >>= 1;
            e += 1;
            if e >= 1024 {
                return f64::INFINITY;
            }
        }
        let sig = sig.to_u64().expect("53-bit significand");
        f64::from_bits((((e + 1023) as u64) << 52) | (sig & ((1u64 << 52) - 1)))
    } else {
        // subnormal: round to the 2^-1074 grid; k = 2^52 lands exactly on
        // the smallest normal and the bit pattern stays correct
        let a: BigUint = numer << 1074u64;
        let k = round_half_even(&a, denom);
        f64::from_bits(k.to_u64().expect("subnormal fits in 52 bits"))
    }
}

// `numer/denom >= 2^t`, exactly.
fn at_least_pow2(numer: &BigUint, denom: &BigUint, t: i64) -> bool {
    if t >= 0 {
        *numer >= (denom << t as u64)
    } else {
        (numer << (-t) as u64) >= *denom
    }
}

fn round_half_even(a: &BigUint, b: &BigUint) -> BigUint {
    let (q, r) = a.div_rem(b);
    match (&r << 1u32).cmp(b) {
        Ordering::Less => q,
        Ordering::Greater => q + 1u32,
        Ordering::Equal => {
            if q.is_odd() {
                q + 1u32
            } else {
                q
            }
        }
    }
}

/// Banded table of corridor-respecting path counts: `count(i, j)` is the
/// number of monotone paths from the origin to `(i, j)` that never touch an
/// outside point. Zero exactly on outside points.
#[derive(Debug, Clone)]
pub struct PathCountTable {
    spec: CorridorSpec,
    rows: Vec<CountRow>,
}

#[derive(Debug, Clone)]
struct CountRow {
    start_j: u64,
    counts: Vec<BigUint>,
}

impl CountRow {
    fn slot(&self, j: u64) -> Option<&BigUint> {
        if j < self.start_j {
            return None;
        }
        self.counts.get((j - self.start_j) as usize)
    }
}

impl PathCountTable {
    pub fn build(spec: &CorridorSpec) -> Self {
        let width = table_width(spec);
        let mut rows: Vec<CountRow> = Vec::with_capacity(spec.m() as usize + 1);
        for i in 0..=spec.m() {
            let row = count_row(spec, width, i, rows.last());
            rows.push(row);
        }
        Self { spec: *spec, rows }
    }

    /// Count at `(i, j)`; zero on outside points and beyond the band.
    pub fn count(&self, i: u64, j: u64) -> BigUint {
        self.rows[i as usize].slot(j).cloned().unwrap_or_else(BigUint::zero)
    }

    pub fn final_count(&self) -> BigUint {
        self.count(self.spec.m(), self.spec.n())
    }
}

fn table_width(spec: &CorridorSpec) -> u64 {
    if spec.all_outside() {
        1
    } else {
        spec.band_width()
    }
}

fn count_row(spec: &CorridorSpec, width: u64, i: u64, prev: Option<&CountRow>) -> CountRow {
    let start_j = if spec.all_outside() {
        0
    } else {
        spec.window_start(i, width)
    };
    let mut counts: Vec<BigUint> = Vec::with_capacity(width as usize);
    for k in 0..width {
        let j = start_j + k;
        let value = if spec.is_outside(i, j) {
            BigUint::zero()
        } else if i == 0 || j == 0 {
            BigUint::one()
        } else {
            // predecessors beyond either window are outside, hence zero
            let up = prev.and_then(|r| r.slot(j));
            let left = if k == 0 { None } else { Some(&counts[k as usize - 1]) };
            match (up, left) {
                (Some(u), Some(l)) => u + l,
                (Some(u), None) => u.clone(),
                (None, Some(l)) => l.clone(),
                (None, None) => BigUint::zero(),
            }
        };
        counts.push(value);
    }
    CountRow { start_j, counts }
}

/// Tail probability `P2 = Prob[D >= d]` as an exact rational, by the
/// classical counting recurrence: `1 - A(m, n) / binom(m+n, m)`.
pub fn p2_classical_exact(spec: &CorridorSpec) -> Result<ExactP, OracleError> {
    p2_classical_exact_with_cap(spec, DEFAULT_MAX_MN)
}

/// Same as [`p2_classical_exact`] with an explicit cap on `m + n`.
pub fn p2_classical_exact_with_cap(spec: &CorridorSpec, cap: u64) -> Result<ExactP, OracleError> {
    let sum = spec.m() + spec.n();
    if sum > cap {
        return Err(OracleError::ResourceLimit { sum, cap });
    }
    if spec.all_outside() {
        return Ok(ExactP::one());
    }
    if spec.none_outside() {
        return Ok(ExactP::zero());
    }
    let width = spec.band_width();
    let mut prev: Option<CountRow> = None;
    for i in 0..=spec.m() {
        prev = Some(count_row(spec, width, i, prev.as_ref()));
    }
    let last = prev.expect("at least one row");
    let a_mn = last.slot(spec.n()).cloned().unwrap_or_else(BigUint::zero);
    let total = binomial(spec.m() + spec.n(), spec.m());
    Ok(ExactP::new(&total - &a_mn, total))
}

/// `binom(a, b)` by running multiplication/division, avoiding factorials.
pub fn binomial(a: u64, b: u64) -> BigUint {
    num_integer::binomial(BigUint::from(a), BigUint::from(b))
}

/// Enumerates every monotone lattice path from `(0, 0)` to `(m, n)` and
/// counts those touching an outside point. Exact by construction; only for
/// tiny instances.
pub fn brute_force_p2(spec: &CorridorSpec) -> Result<ExactP, OracleError> {
    let sum = spec.m() + spec.n();
    if sum > MAX_BRUTE_FORCE_STEPS {
        return Err(OracleError::TooManyPaths {
            sum,
            max: MAX_BRUTE_FORCE_STEPS,
        });
    }
    let mut total = 0u64;
    let mut touching = 0u64;
    walk(spec, 0, 0, false, &mut total, &mut touching);
    let expected = binomial(spec.m() + spec.n(), spec.m());
    assert_eq!(BigUint::from(total), expected, "path enumeration is exhaustive");
    Ok(ExactP::new(BigUint::from(touching), expected))
}

fn walk(spec: &CorridorSpec, i: u64, j: u64, touched: bool, total: &mut u64, touching: &mut u64) {
    let touched = touched || spec.is_outside(i, j);
    if i == spec.m() && j == spec.n() {
        *total += 1;
        if touched {
            *touching += 1;
        }
        return;
    }
    if i < spec.m() {
        walk(spec, i + 1, j, touched, total, touching);
    }
    if j < spec.n() {
        walk(spec, i, j + 1, touched, total, touching);
    }
}
