//! Integer partition counts, exact and memoized.
//!
//! Two counting functions drive every summand census in this crate:
//!
//! * `p(n)` — the number of partitions of `n`;
//! * `p1(n)` — the number of partitions of `n` with no part equal to 1,
//!   satisfying `p1(n) = p(n) - p(n-1)` for `n >= 1`.
//!
//! `p` is computed by Euler's pentagonal-number recurrence
//!
//! ```text
//! p(n) = sum_{k>=1} (-1)^{k+1} [ p(n - k(3k-1)/2) + p(n - k(3k+1)/2) ]
//! ```
//!
//! with `p(m) = 0` for `m < 0` as the boundary. Values are arbitrary
//! precision: `p(n)` reaches ~160 decimal digits by `n ~ 20000`, far past
//! machine width.
//!
//! An independent brute-force enumeration oracle ([`partition_oracle`])
//! recounts small `n` by explicitly walking every partition; it exists so
//! the recurrence is never the only witness to its own correctness.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use std::sync::{Arc, Mutex, OnceLock};
use thiserror::Error;

/// Largest `n` accepted by [`partition_oracle`]: the walk visits every
/// partition once, and `p(60) = 966_467` is a comfortable ceiling.
pub const ORACLE_MAX_N: usize = 60;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    /// The enumeration oracle is for small inputs only; larger `n` must use
    /// [`build_partition_table`].
    #[error("partition_oracle accepts n <= {ORACLE_MAX_N}, got {0}")]
    OracleBound(usize),
}

/// Memoized table of `p(0..=max_n)` and `p1(0..=max_n)`.
///
/// Invariants (checked in tests):
/// * `p[0] = 1`, `p1[0] = 1`, `p1[1] = 0`;
/// * `p1[n] = p[n] - p[n-1] >= 0` for `n >= 1`;
/// * `p` is nondecreasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionTable {
    max_n: usize,
    p_values: Vec<BigUint>,
    p1_values: Vec<BigUint>,
}

impl PartitionTable {
    pub fn max_n(&self) -> usize {
        self.max_n
    }

    /// `p(n)`. Panics if `n > max_n`.
    pub fn p(&self, n: usize) -> &BigUint {
        &self.p_values[n]
    }

    /// `p1(n)`, partitions of `n` with no part 1. Panics if `n > max_n`.
    pub fn p1(&self, n: usize) -> &BigUint {
        &self.p1_values[n]
    }

    pub fn p_values(&self) -> &[BigUint] {
        &self.p_values
    }

    pub fn p1_values(&self) -> &[BigUint] {
        &self.p1_values
    }
}

/// Build the full prefix table `p(0..=max_n)`, `p1(0..=max_n)` by the
/// pentagonal recurrence. Every consumer needs whole prefixes (the rank
/// formulas are prefix sums), so single values are never memoized alone.
pub fn build_partition_table(max_n: usize) -> PartitionTable {
    // Signed intermediates: the recurrence alternates signs, so accumulate
    // in BigInt and convert once at the end.
    let mut p: Vec<BigInt> = Vec::with_capacity(max_n + 1);
    p.push(BigInt::from(1u32));
    for n in 1..=max_n {
        let mut acc = BigInt::zero();
        let mut k = 1usize;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > n {
                break;
            }
            let positive = k % 2 == 1;
            if positive {
                acc += &p[n - g1];
            } else {
                acc -= &p[n - g1];
            }
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= n {
                if positive {
                    acc += &p[n - g2];
                } else {
                    acc -= &p[n - g2];
                }
            }
            k += 1;
        }
        p.push(acc);
    }

    let p_values: Vec<BigUint> = p
        .iter()
        .map(|v| {
            v.to_biguint()
                .expect("pentagonal recurrence produced a negative partition count")
        })
        .collect();
    let mut p1_values = Vec::with_capacity(max_n + 1);
    p1_values.push(BigUint::from(1u32));
    for n in 1..=max_n {
        p1_values.push(&p_values[n] - &p_values[n - 1]);
    }

    PartitionTable {
        max_n,
        p_values,
        p1_values,
    }
}

/// Process-wide shared partition table, grown monotonically: returns a
/// table covering at least `0..=at_least`. Rebuilds (and replaces) the
/// shared copy only when a caller outgrows it, so repeated large runs
/// reuse one allocation.
pub fn shared_table(at_least: usize) -> Arc<PartitionTable> {
    static SHARED: OnceLock<Mutex<Arc<PartitionTable>>> = OnceLock::new();
    let slot = SHARED.get_or_init(|| Mutex::new(Arc::new(build_partition_table(0))));
    {
        let held = slot.lock().unwrap();
        if held.max_n() >= at_least {
            return Arc::clone(&held);
        }
    }
    // Build outside the lock; a concurrent larger fill is kept instead.
    let fresh = Arc::new(build_partition_table(at_least));
    let mut held = slot.lock().unwrap();
    if held.max_n() < at_least {
        *held = Arc::clone(&fresh);
        fresh
    } else {
        Arc::clone(&held)
    }
}

/// Count partitions of `n` by explicit recursive enumeration over the
/// largest part — the independent test oracle for the pentagonal route.
///
/// # Edge cases
/// * `n = 0` counts the empty partition: returns 1.
/// * `n > ORACLE_MAX_N` is rejected; the walk is linear in the number of
///   partitions, which grows subexponentially.
pub fn partition_oracle(n: usize) -> Result<BigUint, PartitionError> {
    if n > ORACLE_MAX_N {
        return Err(PartitionError::OracleBound(n));
    }
    fn walk(remaining: usize, largest: usize) -> u64 {
        if remaining == 0 {
            return 1;
        }
        let mut count = 0u64;
        for part in (1..=largest.min(remaining)).rev() {
            count += walk(remaining - part, part);
        }
        count
    }
    Ok(BigUint::from(walk(n, n)))
}
