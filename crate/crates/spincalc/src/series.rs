//! Truncated formal power series over exact integers.
//!
//! A [`Series`] stores the coefficients of `t^0 .. t^N` for a fixed
//! truncation degree `N`; arithmetic is exact on those coefficients and the
//! truncation of a binary operation is the minimum of the operands'. The
//! truncation is the *only* approximation anywhere in the calculator, so it
//! is tracked explicitly and never silently widened.
//!
//! Infinite products enter through [`FactorList`], the symbolic form
//! `prod_k (1 - t^k)^{e_k}`. [`expand`] applies each factor by an in-place
//! linear pass:
//!
//! ```text
//! (1 - t^k)^{-1}:  c[i] += c[i - k]   for i = k..=N   (ascending)
//! (1 - t^k):       c[i] -= c[i - k]   for i = N..=k   (descending)
//! ```
//!
//! so a factor costs `O(N)` big-integer additions. This is the hot path for
//! full-depth tables.
//!
//! [`divide_exact`] performs long division from the constant term upward and
//! demands that every quotient coefficient come out as an exact integer;
//! a failed divisibility step raises [`SeriesError::NonExactDivision`].
//! Downstream, division is only ever applied to identities that must hold on
//! the nose, so that error is a correctness alarm, never a recoverable
//! condition.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    /// `invert` needs a constant term of +1 or -1; `divide_exact` needs a
    /// nonzero constant term.
    #[error("constant coefficient {0} is not invertible here")]
    NonUnitConstant(BigInt),
    /// Long division hit a coefficient not divisible by the divisor's
    /// constant term: the two series do not stand in an exact ratio over
    /// the integers. Callers treat this as an inconsistency alarm.
    #[error("non-exact division: remainder first appears at degree {degree}")]
    NonExactDivision { degree: usize },
}

/// Coefficients of `t^0 .. t^truncation`, exact integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    truncation: usize,
    coeffs: Vec<BigInt>,
}

impl Series {
    /// The zero series at truncation `n`.
    pub fn zero(n: usize) -> Series {
        Series {
            truncation: n,
            coeffs: vec![BigInt::zero(); n + 1],
        }
    }

    /// The constant series 1 at truncation `n`.
    pub fn one(n: usize) -> Series {
        let mut s = Series::zero(n);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// `t^d` at truncation `n` (zero if `d > n`).
    pub fn monomial(d: usize, n: usize) -> Series {
        let mut s = Series::zero(n);
        if d <= n {
            s.coeffs[d] = BigInt::one();
        }
        s
    }

    /// Series from explicit coefficients, zero-padded or truncated to `n`.
    pub fn from_coeffs<I>(coeffs: I, n: usize) -> Series
    where
        I: IntoIterator<Item = BigInt>,
    {
        let mut c: Vec<BigInt> = coeffs.into_iter().take(n + 1).collect();
        c.resize(n + 1, BigInt::zero());
        Series {
            truncation: n,
            coeffs: c,
        }
    }

    /// Polynomial from small machine integers (test/readability helper).
    pub fn poly(coeffs: &[i64], n: usize) -> Series {
        Series::from_coeffs(coeffs.iter().map(|&v| BigInt::from(v)), n)
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// Coefficient of `t^k`. Panics if `k` exceeds the truncation.
    pub fn coeff(&self, k: usize) -> &BigInt {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Degree of the first negative coefficient, if any. Count series must
    /// stay nonnegative; consumers promote a hit here to a hard error.
    pub fn first_negative(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| c.is_negative())
    }

    /// Degree of the first nonzero coefficient, if any (connectivity).
    pub fn first_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Restrict to a smaller truncation (prefix of the coefficients).
    pub fn truncated(&self, n: usize) -> Series {
        assert!(n <= self.truncation, "cannot raise a truncation");
        Series {
            truncation: n,
            coeffs: self.coeffs[..=n].to_vec(),
        }
    }

    pub fn add(&self, other: &Series) -> Series {
        let n = self.truncation.min(other.truncation);
        let coeffs = (0..=n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect();
        Series {
            truncation: n,
            coeffs,
        }
    }

    pub fn sub(&self, other: &Series) -> Series {
        let n = self.truncation.min(other.truncation);
        let coeffs = (0..=n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect();
        Series {
            truncation: n,
            coeffs,
        }
    }

    /// Convolution product, truncated to the minimum truncation.
    pub fn mul(&self, other: &Series) -> Series {
        let n = self.truncation.min(other.truncation);
        let mut coeffs = vec![BigInt::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        Series {
            truncation: n,
            coeffs,
        }
    }

    /// Multiply by `t^d`: low coefficients become zero, the tail is cut.
    pub fn shift(&self, d: usize) -> Series {
        let n = self.truncation;
        let mut coeffs = vec![BigInt::zero(); n + 1];
        if d <= n {
            for i in 0..=(n - d) {
                coeffs[i + d] = self.coeffs[i].clone();
            }
        }
        Series {
            truncation: n,
            coeffs,
        }
    }

    /// Multiplicative inverse up to truncation, by the standard recurrence
    ///
    /// ```text
    /// q_0 = a_0,   q_n = -a_0 * sum_{k=1..n} a_k q_{n-k}
    /// ```
    ///
    /// valid because `a_0` is required to be +1 or -1 (its own inverse).
    pub fn invert(&self) -> Result<Series, SeriesError> {
        let a0 = &self.coeffs[0];
        if !(a0 == &BigInt::one() || a0 == &(-BigInt::one())) {
            return Err(SeriesError::NonUnitConstant(a0.clone()));
        }
        let n = self.truncation;
        let mut q = vec![BigInt::zero(); n + 1];
        q[0] = a0.clone();
        let nonzero: Vec<(usize, &BigInt)> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| !c.is_zero())
            .collect();
        for m in 1..=n {
            let mut acc = BigInt::zero();
            for &(k, c) in &nonzero {
                if k > m {
                    break;
                }
                if !q[m - k].is_zero() {
                    acc += c * &q[m - k];
                }
            }
            if !acc.is_zero() {
                q[m] = -(a0 * acc);
            }
        }
        Ok(Series {
            truncation: n,
            coeffs: q,
        })
    }

    /// Exact quotient `q` with `q * den = self` up to the common truncation.
    ///
    /// Long division from the constant term upward: at each degree the
    /// leading residual coefficient must be exactly divisible by `den`'s
    /// constant term, and the final residual must vanish identically. Any
    /// violation raises [`SeriesError::NonExactDivision`] — a signal that
    /// the two series do not satisfy the identity the caller believes in.
    ///
    /// With a unit constant term (`+1`/`-1`, the documented contract for
    /// every call in this crate) divisibility always holds and the check
    /// reduces to the residual audit; general nonzero constants are also
    /// accepted so the error path stays honest and testable.
    pub fn divide_exact(&self, den: &Series) -> Result<Series, SeriesError> {
        let d0 = &den.coeffs[0];
        if d0.is_zero() {
            return Err(SeriesError::NonUnitConstant(d0.clone()));
        }
        let n = self.truncation.min(den.truncation);
        let mut rem: Vec<BigInt> = self.coeffs[..=n].to_vec();
        let mut q = vec![BigInt::zero(); n + 1];
        let dnz: Vec<(usize, &BigInt)> = den
            .coeffs
            .iter()
            .enumerate()
            .take(n + 1)
            .skip(1)
            .filter(|(_, c)| !c.is_zero())
            .collect();
        for m in 0..=n {
            if rem[m].is_zero() {
                continue;
            }
            if !(&rem[m] % d0).is_zero() {
                return Err(SeriesError::NonExactDivision { degree: m });
            }
            let quot = &rem[m] / d0;
            for &(j, c) in &dnz {
                if m + j > n {
                    break;
                }
                rem[m + j] -= &quot * c;
            }
            rem[m] = BigInt::zero();
            q[m] = quot;
        }
        debug_assert!(rem.iter().all(Zero::is_zero), "residual survived division");
        Ok(Series {
            truncation: n,
            coeffs: q,
        })
    }
}

/// Symbolic Euler product `prod_k (1 - t^k)^{e_k}`.
///
/// Keys are part sizes `k >= 1`; exponents are signed and zero exponents are
/// never stored. Composing two lists adds exponents.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FactorList {
    factors: BTreeMap<usize, i64>,
}

impl FactorList {
    pub fn new() -> FactorList {
        FactorList::default()
    }

    /// Merge `(1 - t^k)^e` into the product. `k = 0` is not a factor.
    pub fn push(&mut self, k: usize, e: i64) -> &mut FactorList {
        assert!(k >= 1, "factor degree must be >= 1");
        let slot = self.factors.entry(k).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.factors.remove(&k);
        }
        self
    }

    /// `prod (1 - t^k)^{-1}` over the given part sizes.
    pub fn inverse_parts<I: IntoIterator<Item = usize>>(parts: I) -> FactorList {
        let mut fl = FactorList::new();
        for k in parts {
            fl.push(k, -1);
        }
        fl
    }

    /// `prod (1 - t^k)` over the given part sizes.
    pub fn parts<I: IntoIterator<Item = usize>>(parts: I) -> FactorList {
        let mut fl = FactorList::new();
        for k in parts {
            fl.push(k, 1);
        }
        fl
    }

    /// Product of the two symbolic products: exponents add.
    pub fn compose(&self, other: &FactorList) -> FactorList {
        let mut out = self.clone();
        for (&k, &e) in &other.factors {
            out.push(k, e);
        }
        out
    }

    pub fn factors(&self) -> &BTreeMap<usize, i64> {
        &self.factors
    }
}

/// Apply `(1 - t^k)^{-1}` in place: ascending `c[i] += c[i-k]`.
pub(crate) fn apply_inverse_factor(c: &mut [BigInt], k: usize) {
    if k == 0 || k >= c.len() {
        return;
    }
    for i in k..c.len() {
        let (low, high) = c.split_at_mut(i);
        if !low[i - k].is_zero() {
            high[0] += &low[i - k];
        }
    }
}

/// Apply `(1 - t^k)` in place: descending `c[i] -= c[i-k]`.
pub(crate) fn apply_factor(c: &mut [BigInt], k: usize) {
    if k == 0 || k >= c.len() {
        return;
    }
    for i in (k..c.len()).rev() {
        let (low, high) = c.split_at_mut(i);
        if !low[i - k].is_zero() {
            high[0] -= &low[i - k];
        }
    }
}

/// Expand an Euler product to a [`Series`] at truncation `n`.
///
/// Each factor `(1 - t^k)^{+-1}` costs one `O(n)` in-place pass; factors
/// with `k > n` cannot touch coefficients below the truncation and are
/// skipped outright.
pub fn expand(fl: &FactorList, n: usize) -> Series {
    let mut c = vec![BigInt::zero(); n + 1];
    c[0] = BigInt::one();
    for (&k, &e) in fl.factors() {
        if k > n {
            continue;
        }
        for _ in 0..e.unsigned_abs() {
            if e < 0 {
                apply_inverse_factor(&mut c, k);
            } else {
                apply_factor(&mut c, k);
            }
        }
    }
    Series {
        truncation: n,
        coeffs: c,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::build_partition_table;
    use proptest::prelude::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn mul_binomials() {
        let a = Series::poly(&[1, 1], 4);
        let b = Series::poly(&[1, -1], 4);
        assert_eq!(a.mul(&b), Series::poly(&[1, 0, -1], 4));
    }

    #[test]
    fn geometric_times_complement_is_one() {
        let geo = expand(&FactorList::inverse_parts([1]), 6);
        assert_eq!(geo, Series::poly(&[1, 1, 1, 1, 1, 1, 1], 6));
        let one = geo.mul(&Series::poly(&[1, -1], 6));
        assert_eq!(one, Series::one(6));
    }

    #[test]
    fn invert_examples() {
        let s = Series::poly(&[1, -1], 8);
        assert_eq!(
            s.invert().unwrap(),
            Series::poly(&[1, 1, 1, 1, 1, 1, 1, 1, 1], 8)
        );
        assert_eq!(Series::one(4).invert().unwrap(), Series::one(4));
        assert_eq!(
            Series::poly(&[2, 1], 4).invert(),
            Err(SeriesError::NonUnitConstant(big(2)))
        );
        // Negative unit constant.
        let s = Series::poly(&[-1, 1], 6);
        assert_eq!(s.mul(&s.invert().unwrap()), Series::one(6));
    }

    #[test]
    fn invert_full_euler_product_gives_partition_numbers() {
        let n = 120;
        let prod = expand(&FactorList::parts(1..=n), n);
        let inv = prod.invert().unwrap();
        let table = build_partition_table(n);
        for k in 0..=n {
            assert_eq!(inv.coeff(k), &BigInt::from(table.p(k).clone()), "p({k})");
        }
    }

    #[test]
    fn divide_exact_examples() {
        let q = Series::poly(&[1, 0, -1], 5)
            .divide_exact(&Series::poly(&[1, -1], 5))
            .unwrap();
        assert_eq!(q, Series::poly(&[1, 1], 5));

        // An infinite integer quotient is still exact in the truncated ring:
        // (1 + t) / (1 + t + t^2) = 1 - t^2 + t^3 - t^5 + t^6 - ...
        let n = 8;
        let q = Series::poly(&[1, 1], n)
            .divide_exact(&Series::poly(&[1, 1, 1], n))
            .unwrap();
        assert_eq!(q, Series::poly(&[1, 0, -1, 1, 0, -1, 1, 0, -1], n));
        assert_eq!(q.mul(&Series::poly(&[1, 1, 1], n)), Series::poly(&[1, 1], n));
    }

    #[test]
    fn divide_exact_detects_nonintegral_quotients() {
        // (1 + t) / (2 + 2t) = 1/2: not an integer series.
        let err = Series::poly(&[1, 1], 5).divide_exact(&Series::poly(&[2, 2], 5));
        assert_eq!(err, Err(SeriesError::NonExactDivision { degree: 0 }));
        // (2 + t) / (2 + 2t): constant divides, degree 1 does not.
        let err = Series::poly(&[2, 1], 5).divide_exact(&Series::poly(&[2, 2], 5));
        assert_eq!(err, Err(SeriesError::NonExactDivision { degree: 1 }));
        // (2 + 2t + 2t^2) / (2 + 2t) is exact with a non-unit constant.
        let q = Series::poly(&[2, 2, 2], 5)
            .divide_exact(&Series::poly(&[2, 2], 5))
            .unwrap();
        assert_eq!(q.mul(&Series::poly(&[2, 2], 5)), Series::poly(&[2, 2, 2], 5));
        // Division by an identically-zero constant term is rejected.
        let err = Series::poly(&[1], 3).divide_exact(&Series::poly(&[0, 1], 3));
        assert_eq!(err, Err(SeriesError::NonUnitConstant(big(0))));
    }

    #[test]
    fn expand_examples() {
        assert_eq!(
            expand(&FactorList::inverse_parts([1]), 4),
            Series::poly(&[1, 1, 1, 1, 1], 4)
        );
        // Exponents cancel on composition.
        let fl = FactorList::parts([2]).compose(&FactorList::inverse_parts([2]));
        assert!(fl.factors().is_empty());
        assert_eq!(expand(&fl, 5), Series::one(5));
        // Factors beyond the truncation are no-ops.
        assert_eq!(expand(&FactorList::parts([9]), 4), Series::one(4));
    }

    #[test]
    fn expand_matches_partition_numbers() {
        let n = 100;
        let s = expand(&FactorList::inverse_parts(1..=n), n);
        let table = build_partition_table(n);
        for k in 0..=n {
            assert_eq!(s.coeff(k), &BigInt::from(table.p(k).clone()));
        }
    }

    #[test]
    fn expand_agrees_with_naive_binomial_products() {
        let n = 50;
        let fl = FactorList::inverse_parts([2, 3, 7]).compose(&FactorList::parts([4, 5]));
        let fast = expand(&fl, n);
        let mut naive = Series::one(n);
        for (&k, &e) in fl.factors() {
            let mut binom = Series::zero(n);
            binom = binom.add(&Series::one(n));
            binom = binom.sub(&Series::monomial(k, n));
            for _ in 0..e.unsigned_abs() {
                naive = if e < 0 {
                    naive.mul(&binom.invert().unwrap())
                } else {
                    naive.mul(&binom)
                };
            }
        }
        assert_eq!(fast, naive);
    }

    #[test]
    fn shift_examples() {
        assert_eq!(Series::one(5).shift(3), Series::monomial(3, 5));
        let s = Series::poly(&[4, 7, 9], 5);
        assert_eq!(s.shift(0), s);
        assert_eq!(s.shift(2).shift(3), s.shift(5));
        assert_eq!(s.shift(9), Series::zero(5));
    }

    #[test]
    fn truncation_takes_minimum() {
        let a = Series::one(10);
        let b = Series::one(4);
        assert_eq!(a.add(&b).truncation(), 4);
        assert_eq!(a.mul(&b).truncation(), 4);
    }

    proptest! {
        #[test]
        fn ring_axioms(
            a in proptest::collection::vec(-50i64..50, 1..20),
            b in proptest::collection::vec(-50i64..50, 1..20),
            c in proptest::collection::vec(-50i64..50, 1..20),
        ) {
            let n = 24;
            let a = Series::poly(&a, n);
            let b = Series::poly(&b, n);
            let c = Series::poly(&c, n);
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&Series::one(n)), a.clone());
            prop_assert_eq!(a.add(&Series::zero(n)), a.clone());
        }

        #[test]
        fn divide_undoes_mul(
            f in proptest::collection::vec(-40i64..40, 1..16),
            g in proptest::collection::vec(-40i64..40, 0..15),
            unit in prop_oneof![Just(1i64), Just(-1i64)],
        ) {
            let n = 32;
            let f = Series::poly(&f, n);
            let mut gc = vec![unit];
            gc.extend_from_slice(&g);
            let g = Series::poly(&gc, n);
            let q = f.mul(&g).divide_exact(&g).unwrap();
            prop_assert_eq!(q, f);
        }

        #[test]
        fn invert_is_two_sided(
            tail in proptest::collection::vec(-30i64..30, 0..14),
            unit in prop_oneof![Just(1i64), Just(-1i64)],
        ) {
            let n = 24;
            let mut c = vec![unit];
            c.extend_from_slice(&tail);
            let a = Series::poly(&c, n);
            let inv = a.invert().unwrap();
            prop_assert_eq!(a.mul(&inv), Series::one(n));
            prop_assert_eq!(inv.mul(&a), Series::one(n));
        }

        #[test]
        fn shift_composes(
            coeffs in proptest::collection::vec(-50i64..50, 1..12),
            d1 in 0usize..8,
            d2 in 0usize..8,
        ) {
            let s = Series::poly(&coeffs, 20);
            prop_assert_eq!(s.shift(d1).shift(d2), s.shift(d1 + d2));
        }
    }
}
