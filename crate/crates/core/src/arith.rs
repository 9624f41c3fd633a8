//! Exact arbitrary-precision rationals, binomial coefficients with the
//! zero convention for out-of-range arguments, and tables of binomial
//! ratios `C(s,t)/C(n,t)`.
//!
//! Every bound value in this crate is a [`Rational`]; floating point is
//! used only when printing.

use std::sync::LazyLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational number, always reduced, denominator positive.
pub type Rational = num_rational::BigRational;

static ZERO_RAT: LazyLock<Rational> = LazyLock::new(Rational::zero);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArithError {
    #[error("ratio table requires t <= n, got t={t}, n={n}")]
    TExceedsN { n: usize, t: usize },
}

/// Binomial coefficient `C(a, b)`, with `C(a, b) = 0` whenever `b < 0`,
/// `a < 0`, or `b > a`.
///
/// Computed as a falling-factorial product with exact intermediate
/// divisions; full factorials are never materialized.
pub fn binom(a: i64, b: i64) -> BigInt {
    if b < 0 || a < 0 || b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut res = BigInt::one();
    // res stays integral: after the i-th step it equals C(a, i+1).
    for i in 0..b {
        res = res * (a - i) / (i + 1);
    }
    res
}

/// Exact rational `p/q` from machine integers.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Exact rational from an integer.
pub fn rat_int(p: impl Into<BigInt>) -> Rational {
    Rational::from_integer(p.into())
}

/// Exact floor, never routed through floating point.
pub fn floor_rat(x: &Rational) -> BigInt {
    x.floor().to_integer()
}

/// Exact ceiling, never routed through floating point.
pub fn ceil_rat(x: &Rational) -> BigInt {
    x.ceil().to_integer()
}

/// Table of the ratios `r[s] = C(s, t) / C(n, t)` for `s = 0..=n`.
///
/// Built by the downward recurrence `r[n] = 1`,
/// `r[s] = r[s+1] * (s+1-t) / (s+1)` in O(n) rational operations.
#[derive(Debug, Clone)]
pub struct RatioTable {
    n: usize,
    t: usize,
    r: Vec<Rational>,
}

impl RatioTable {
    pub fn new(n: usize, t: usize) -> Result<Self, ArithError> {
        if t > n {
            return Err(ArithError::TExceedsN { n, t });
        }
        let mut r = vec![Rational::zero(); n + 1];
        r[n] = Rational::one();
        for s in (t..n).rev() {
            r[s] = &r[s + 1] * rat((s + 1 - t) as i64, (s + 1) as i64);
        }
        // entries below t stay zero: C(s, t) = 0 for s < t
        Ok(RatioTable { n, t, r })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// `C(s, t) / C(n, t)`; zero for `s < 0` by the binomial convention.
    pub fn get(&self, s: i64) -> &Rational {
        if s < 0 {
            &ZERO_RAT
        } else {
            &self.r[s as usize]
        }
    }
}

/// A set of binomial-ratio columns `C(s, t - offset) / C(n, t)` that all
/// advance together as `t` increases by one.
///
/// This is the workhorse of the bound sweeps: each distinct row size `s`
/// appearing in a degree or pair-class histogram gets one column, so a
/// whole sweep over `t` costs O(columns) rational operations per step
/// instead of an O(n) table rebuild. Entries are kept reduced, which keeps
/// them small exactly when `n - s` is small (sparse graphs, named
/// families).
#[derive(Debug, Clone)]
pub struct SweepCols {
    n: usize,
    t: usize,
    cols: Vec<Col>,
}

#[derive(Debug, Clone)]
struct Col {
    s: i64,
    offset: usize,
    val: Rational,
}

/// Handle to a column of a [`SweepCols`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColRef(usize);

impl SweepCols {
    /// Starts a sweep at `t = t0`. Columns registered later are
    /// initialized at the current `t`, so register them before advancing
    /// (or pay an O(t) binomial evaluation).
    pub fn new(n: usize, t0: usize) -> Self {
        assert!(t0 <= n);
        SweepCols {
            n,
            t: t0,
            cols: Vec::new(),
        }
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Registers (or reuses) the column `C(s, t - offset) / C(n, t)`.
    pub fn column(&mut self, s: i64, offset: usize) -> ColRef {
        assert!(offset <= self.t);
        if let Some(i) = self
            .cols
            .iter()
            .position(|c| c.s == s && c.offset == offset)
        {
            return ColRef(i);
        }
        let numer = binom(s, (self.t - offset) as i64);
        let denom = binom(self.n as i64, self.t as i64);
        let val = Rational::new(numer, denom);
        self.cols.push(Col {
            s,
            offset,
            val,
        });
        ColRef(self.cols.len() - 1)
    }

    /// Advances every column from `t` to `t + 1`.
    ///
    /// Uses `C(s, u+1) = C(s, u) * (s-u) / (u+1)` on the numerator and
    /// `C(n, t+1) = C(n, t) * (n-t) / (t+1)` on the denominator, i.e. each
    /// column is multiplied by `(s-u) (t+1) / ((u+1) (n-t))` with
    /// `u = t - offset`.
    pub fn advance(&mut self) {
        let t = self.t as i64;
        let n = self.n as i64;
        assert!(t < n, "cannot advance past t = n");
        for c in &mut self.cols {
            if c.val.is_zero() {
                continue;
            }
            let u = t - c.offset as i64;
            let num = (c.s - u) * (t + 1);
            let den = (u + 1) * (n - t);
            c.val = &c.val * rat(num, den);
            // the (s - u) factor reaches zero before it could go negative
            debug_assert!(!c.val.is_negative());
        }
        self.t += 1;
    }

    pub fn value(&self, col: ColRef) -> &Rational {
        &self.cols[col.0].val
    }

    /// `sum over (col, w) of w * value(col)`, skipping zero columns.
    pub fn weighted_sum(&self, terms: &[(ColRef, Rational)]) -> Rational {
        let mut acc = Rational::zero();
        for (col, w) in terms {
            let v = self.value(*col);
            if !v.is_zero() {
                acc += v * w;
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        rat(p, q)
    }

    #[test]
    fn binom_small_values() {
        assert_eq!(binom(5, 2), BigInt::from(10));
        assert_eq!(binom(3, 5), BigInt::zero());
        assert_eq!(binom(-2, 1), BigInt::zero());
        assert_eq!(binom(0, 0), BigInt::one());
        assert_eq!(binom(7, 0), BigInt::one());
        assert_eq!(binom(1000, 2), BigInt::from(499500));
    }

    #[test]
    fn binom_matches_pascal_triangle() {
        // brute-force oracle: Pascal recursion over 0 <= b <= a <= 64
        let mut row: Vec<BigInt> = vec![BigInt::one()];
        for a in 0..=64i64 {
            for (b, expect) in row.iter().enumerate() {
                assert_eq!(binom(a, b as i64), *expect, "C({a},{b})");
            }
            let mut next = vec![BigInt::one()];
            for i in 1..row.len() {
                next.push(&row[i - 1] + &row[i]);
            }
            next.push(BigInt::one());
            row = next;
        }
    }

    #[test]
    fn ratio_table_examples() {
        let t = RatioTable::new(3, 1).unwrap();
        assert_eq!(t.get(0), &r(0, 1));
        assert_eq!(t.get(1), &r(1, 3));
        assert_eq!(t.get(2), &r(2, 3));
        assert_eq!(t.get(3), &r(1, 1));

        let t = RatioTable::new(4, 2).unwrap();
        assert_eq!(t.get(1), &r(0, 1));

        let t = RatioTable::new(7, 0).unwrap();
        for s in 0..=7 {
            assert_eq!(t.get(s), &r(1, 1));
        }

        assert_eq!(
            RatioTable::new(3, 4).unwrap_err(),
            ArithError::TExceedsN { n: 3, t: 4 }
        );
    }

    #[test]
    fn ratio_table_matches_binomials() {
        // r[s] * C(n,t) = C(s,t), spot-checked for pseudo-random (n, s, t)
        let mut x: u64 = 0x9e3779b97f4a7c15;
        let mut next = move || {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            x
        };
        for _ in 0..40 {
            let n = (next() % 200 + 1) as usize;
            let t = (next() % (n as u64 + 1)) as usize;
            let table = RatioTable::new(n, t).unwrap();
            let s = (next() % (n as u64 + 1)) as i64;
            let lhs = table.get(s) * rat_int(binom(n as i64, t as i64));
            assert_eq!(lhs, rat_int(binom(s, t as i64)));
        }
    }

    #[test]
    fn ratio_table_monotone_in_s() {
        let table = RatioTable::new(12, 4).unwrap();
        for s in 0..12i64 {
            assert!(table.get(s) <= table.get(s + 1));
        }
        // recurrence identity r[s] = r[s+1] * (s+1-t) / (s+1) for s >= t
        for s in 4..12i64 {
            let rhs = table.get(s + 1) * r(s + 1 - 4, s + 1);
            assert_eq!(table.get(s), &rhs);
        }
    }

    #[test]
    fn floor_ceil_examples() {
        assert_eq!(floor_rat(&r(5, 3)), BigInt::from(1));
        assert_eq!(ceil_rat(&r(5, 3)), BigInt::from(2));
        assert_eq!(floor_rat(&r(-2, 3)), BigInt::from(-1));
        assert_eq!(ceil_rat(&r(-2, 3)), BigInt::from(0));
        assert_eq!(floor_rat(&r(2, 1)), BigInt::from(2));
        assert_eq!(ceil_rat(&r(2, 1)), BigInt::from(2));
    }

    #[test]
    fn sweep_cols_track_binomial_ratios() {
        // oracle: direct binomial evaluation at every step
        for n in [5usize, 9, 17] {
            let mut cols = SweepCols::new(n, 2);
            let specs: Vec<(i64, usize)> = vec![
                (0, 0),
                (1, 1),
                (n as i64 - 1, 0),
                (n as i64 - 2, 1),
                (n as i64 / 2, 2),
                (-3, 0),
            ];
            let refs: Vec<ColRef> = specs.iter().map(|&(s, o)| cols.column(s, o)).collect();
            loop {
                let t = cols.t();
                for (&(s, o), cref) in specs.iter().zip(&refs) {
                    let expect = Rational::new(
                        binom(s, (t - o) as i64),
                        binom(n as i64, t as i64),
                    );
                    assert_eq!(cols.value(*cref), &expect, "n={n} t={t} s={s} off={o}");
                }
                if t == n - 1 {
                    break;
                }
                cols.advance();
            }
        }
    }

    #[test]
    fn rational_addition_is_exact_and_associative() {
        let xs = [r(1, 3), r(-7, 5), r(22, 7), r(0, 1), r(13, 11)];
        for x in &xs {
            for y in &xs {
                for z in &xs {
                    assert_eq!((x + y) + z, x + (y + z));
                }
            }
        }
    }
}
