//! The named Hilbert–Poincaré series of the calculator.
//!
//! Every entry is the graded-dimension generating function of an explicit
//! graded F2 module, produced exactly at a requested truncation:
//!
//! * `P(A) = prod_{n>=1} (1 - t^{2^n - 1})^{-1}` — the mod-2 Steenrod
//!   algebra ([`hp_steenrod`]);
//! * the polynomial generators of the Thom-spectrum cohomologies: degrees
//!   `i >= 2` minus one excluded degree family per flavor
//!   ([`hp_mspin`], [`hp_mspinc`], [`hp_mspinh`]);
//! * the cyclic quotients `A/A Sq^3` and `A/(A Sq^1 + A Sq^2)`
//!   ([`hp_a_mod_sq3`], [`hp_a_mod_sq1sq2`]);
//! * the summand-cohomology series for the symplectic covers and the
//!   suspended-module covers ([`hp_ksp_cover`], [`hp_elephant_cover`]);
//! * the induced-module formula `P(A (x)_{A1} B) = P(A) P(B) / P(A1)`
//!   ([`hp_induced`]), with `P(A1) = (1+t)(1+t^2)(1+t^3)`.
//!
//! Exclusion sets are generated from powers of two at the requested
//! truncation (a 20000-degree run needs over a dozen excluded degrees);
//! nothing is a hard-coded list except the seven-term polynomial `P(A1)`,
//! which is asserted against its factored form once at startup.
//!
//! The dense products over *all* generator degrees are expanded through the
//! pentagonal-recurrence partition table (`prod_{k>=1}(1-t^k)^{-1}`
//! coefficient-wise equals `p(k)`) followed by one linear pass per excluded
//! degree — the same series the factor-by-factor route produces, orders of
//! magnitude faster at full depth. The two routes are checked against each
//! other in tests.
//!
//! All outputs are memoized per `(entry, truncation)` and shared.

use crate::partitions;
use crate::series::{apply_factor, expand, FactorList, Series, SeriesError};
use num_bigint::BigInt;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// `P(A1)` as plain coefficients: `(1+t)(1+t^2)(1+t^3) = 1+t+t^2+2t^3+t^4+t^5+t^6`.
const P_A1_COEFFS: [i64; 7] = [1, 1, 1, 2, 1, 1, 1];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Entry {
    Steenrod,
    MSpin,
    MSpinC,
    MSpinH,
    AModSq3,
    AModSq1Sq2,
    KspCover0,
    ElephantCore,
    Ku,
}

fn cache() -> &'static Mutex<HashMap<(Entry, usize), Arc<Series>>> {
    static CACHE: OnceLock<Mutex<HashMap<(Entry, usize), Arc<Series>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn memoized(entry: Entry, n: usize, build: impl FnOnce() -> Series) -> Arc<Series> {
    if let Some(hit) = cache().lock().unwrap().get(&(entry, n)) {
        return Arc::clone(hit);
    }
    // Build outside the lock; concurrent duplicate fills are idempotent.
    let value = Arc::new(build());
    let mut map = cache().lock().unwrap();
    Arc::clone(map.entry((entry, n)).or_insert(value))
}

/// Degrees `2^m - 1 <= n` for `m >= first`, ascending: 1, 3, 7, 15, ...
fn two_power_minus_one_degrees(first: u32, n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut m = first;
    loop {
        let d = match 1usize.checked_shl(m) {
            Some(p) => p - 1,
            None => break,
        };
        if d > n {
            break;
        }
        out.push(d);
        m += 1;
    }
    out
}

/// Degrees `2^k + 1 <= n` for `k >= first`, ascending: 2, 3, 5, 9, 17, ...
fn two_power_plus_one_degrees(first: u32, n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut k = first;
    loop {
        let d = match 1usize.checked_shl(k) {
            Some(p) => p + 1,
            None => break,
        };
        if d > n {
            break;
        }
        out.push(d);
        k += 1;
    }
    out
}

/// `prod_{i=2..=n, i not excluded} (1 - t^i)^{-1}` via the partition table:
/// multiply `sum p(m) t^m` by `(1 - t^1)` and by `(1 - t^x)` per exclusion.
fn dense_generator_product(n: usize, excluded: &[usize]) -> Series {
    let table = partitions::shared_table(n);
    let mut c: Vec<BigInt> = table.p_values()[..=n]
        .iter()
        .map(|p| BigInt::from(p.clone()))
        .collect();
    apply_factor(&mut c, 1);
    for &x in excluded {
        apply_factor(&mut c, x);
    }
    Series::from_coeffs(c, n)
}

/// `P(A) = prod_{n>=1} (1 - t^{2^n-1})^{-1}`: dimensions of the Steenrod
/// algebra, i.e. partitions into parts 1, 3, 7, 15, ...
pub fn hp_steenrod(n: usize) -> Arc<Series> {
    memoized(Entry::Steenrod, n, || {
        expand(
            &FactorList::inverse_parts(two_power_minus_one_degrees(1, n)),
            n,
        )
    })
}

/// Polynomial algebra on generators in degrees `i >= 2`, `i != 2^k + 1`
/// (`k >= 0`): excluded degrees 2, 3, 5, 9, 17, ...
pub fn hp_mspin(n: usize) -> Arc<Series> {
    memoized(Entry::MSpin, n, || {
        dense_generator_product(n, &two_power_plus_one_degrees(0, n))
    })
}

/// Polynomial algebra on generators in degrees `i >= 2`, `i != 2^{k+1} + 1`
/// (`k >= 0`): excluded degrees 3, 5, 9, 17, ...
pub fn hp_mspinc(n: usize) -> Arc<Series> {
    memoized(Entry::MSpinC, n, || {
        dense_generator_product(n, &two_power_plus_one_degrees(1, n))
    })
}

/// Polynomial algebra on generators in degrees `i >= 2`, `i != 2^{k+2} + 1`
/// (`k >= 0`): excluded degrees 5, 9, 17, ... — equivalently
/// `prod_{i>=2}(1-t^i)^{-1} * prod_{r>=2}(1-t^{2^r+1})`.
pub fn hp_mspinh(n: usize) -> Arc<Series> {
    memoized(Entry::MSpinH, n, || {
        dense_generator_product(n, &two_power_plus_one_degrees(2, n))
    })
}

/// `P(A/(A Sq^1 + A Sq^2)) = (1-t^4)^{-1}(1-t^6)^{-1} prod_{n>=3}(1-t^{2^n-1})^{-1}`:
/// partitions into parts 4, 6, 7, 15, 31, ...
pub fn hp_a_mod_sq1sq2(n: usize) -> Arc<Series> {
    memoized(Entry::AModSq1Sq2, n, || {
        let mut fl = FactorList::inverse_parts([4, 6]);
        let tail = FactorList::inverse_parts(two_power_minus_one_degrees(3, n));
        fl = fl.compose(&tail);
        expand(&fl, n)
    })
}

/// `P(A/A Sq^3) = (1+t+t^2+t^3+t^4) * P(A/(A Sq^1 + A Sq^2))`.
pub fn hp_a_mod_sq3(n: usize) -> Arc<Series> {
    memoized(Entry::AModSq3, n, || {
        Series::poly(&[1, 1, 1, 1, 1], n).mul(&hp_a_mod_sq1sq2(n))
    })
}

/// Cohomology series of the `8k`-based symplectic cover:
/// `t^{8k}(1+t^2+t^3)/((1-t^4)(1-t^6)) * prod_{n>=3}(1-t^{2^n-1})^{-1}`.
///
/// Requires `8k <= n` so the summand is visible below the truncation.
pub fn hp_ksp_cover(k: usize, n: usize) -> Arc<Series> {
    assert!(8 * k <= n, "cover base 8*{k} exceeds truncation {n}");
    let base = memoized(Entry::KspCover0, n, || {
        Series::poly(&[1, 0, 1, 1], n).mul(&hp_a_mod_sq1sq2(n))
    });
    if k == 0 {
        base
    } else {
        Arc::new(base.shift(8 * k))
    }
}

/// The unshifted core of the suspended-cover series:
/// `(1+t+2t^2+t^3+t^4+t^5)/((1-t^4)(1-t^6)) * prod_{n>=3}(1-t^{2^n-1})^{-1}`.
///
/// The numerator's coefficients are the graded dimensions of the elephant
/// module (see [`crate::a1_margolis`]); the cover itself sits `8k+4`
/// degrees up, see [`hp_elephant_cover`].
pub fn hp_elephant_core(n: usize) -> Arc<Series> {
    memoized(Entry::ElephantCore, n, || {
        Series::poly(&[1, 1, 2, 1, 1, 1], n).mul(&hp_a_mod_sq1sq2(n))
    })
}

/// Cohomology series of the `8k+4`-based suspended cover:
/// `t^{8k+4} * ` [`hp_elephant_core`]. Requires `8k + 4 <= n`.
pub fn hp_elephant_cover(k: usize, n: usize) -> Arc<Series> {
    assert!(8 * k + 4 <= n, "cover base 8*{k}+4 exceeds truncation {n}");
    Arc::new(hp_elephant_core(n).shift(8 * k + 4))
}

/// `P(A1)` extended (by zeros) to truncation `n`, hard-coded and asserted
/// equal to `(1+t)(1+t^2)(1+t^3)` on first use.
pub fn p_a1(n: usize) -> Series {
    static CHECK: OnceLock<()> = OnceLock::new();
    CHECK.get_or_init(|| {
        let factored = Series::poly(&[1, 1], 6)
            .mul(&Series::poly(&[1, 0, 1], 6))
            .mul(&Series::poly(&[1, 0, 0, 1], 6));
        assert_eq!(
            factored,
            Series::poly(&P_A1_COEFFS, 6),
            "hard-coded P(A1) disagrees with (1+t)(1+t^2)(1+t^3)"
        );
    });
    Series::poly(&P_A1_COEFFS, n)
}

/// Induced-module series: `P(A (x)_{A1} B) = P(A) * P(B) / P(A1)`,
/// computed by exact division (the quotient is a genuine Hilbert series
/// because `A` is free as a right `A1`-module, so the division must leave
/// no remainder; an error here is a correctness alarm).
///
/// `pb` must have nonnegative coefficients (it is a Hilbert series).
pub fn hp_induced(pb: &Series, n: usize) -> Result<Series, SeriesError> {
    debug_assert!(
        pb.first_negative().is_none(),
        "hp_induced input must be a Hilbert series"
    );
    hp_steenrod(n).mul(pb).divide_exact(&p_a1(n))
}

/// Cohomology series of the unitary summand family: the module `C`
/// (cells in degrees 0 and 2) induced up, `P(A) (1 + t^2) / P(A1)`.
///
/// Coefficient-wise this equals partitions into parts 2, 6, 7, 15, 31, ...;
/// there is no independent closed form in the catalog — its end-to-end
/// validation is the reproduction of the reference tables.
pub fn hp_ku(n: usize) -> Result<Arc<Series>, SeriesError> {
    if let Some(hit) = cache().lock().unwrap().get(&(Entry::Ku, n)) {
        return Ok(Arc::clone(hit));
    }
    let value = Arc::new(hp_induced(&Series::poly(&[1, 0, 1], n), n)?);
    let mut map = cache().lock().unwrap();
    Ok(Arc::clone(map.entry((Entry::Ku, n)).or_insert(value)))
}
