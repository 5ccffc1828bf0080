//! Group assembly, reference verification, and the on-disk table cache.
//!
//! A cobordism group in this calculator is `π_n ≅ Z^r × (Z/2)^t`, carried
//! as a [`GroupDescriptor`]: `r` comes from the closed rank formulas
//! ([`crate::summand_counts::rank`]) and `t` is the degree-`n` coefficient
//! of the total torsion series. [`table`] computes a whole prefix from one
//! shared series truncation; [`all_tables`] runs the three theories on
//! separate threads (each theory's pipeline is sequential internally).
//!
//! Reference data through degree 99 for all three theories is embedded in
//! [`golden`] (guarded by a checksum) and [`verify_golden`] replays the
//! calculator against every row. A mismatch report — rather than a panic —
//! lets callers show all deviations at once.
//!
//! Large tables can be cached on disk as tab-separated text, one file per
//! `(theory, n_max)`, with a header recording the producing version; a
//! header mismatch (or any malformed content) is treated as a cache miss.

mod golden;

use crate::summand_counts::{self, Theory};
use num_bigint::BigUint;
use std::fmt;
use std::io::{self, BufRead, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

/// `π_n ≅ Z^rank × (Z/2)^torsion_rank`, exactly.
///
/// Invariants: the rank vanishes except in degrees `n ≡ 0 (mod 4)` (spin,
/// spin^h) or `n ≡ 0, 2 (mod 4)` (spin^c); the torsion subgroup is
/// elementary abelian of exponent 2, so one exact integer describes it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupDescriptor {
    pub n: usize,
    pub rank: BigUint,
    pub torsion_rank: BigUint,
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z^{} + (Z/2)^{}", self.rank, self.torsion_rank)
    }
}

/// The group in one degree. Equivalent to the last row of
/// [`table`]`(theory, n)` but stated independently.
pub fn group(theory: Theory, n: usize) -> GroupDescriptor {
    GroupDescriptor {
        n,
        rank: summand_counts::rank(theory, n),
        torsion_rank: summand_counts::torsion_series(theory, n)
            .coeff(n)
            .to_biguint()
            .expect("torsion counts are nonnegative"),
    }
}

/// Groups in degrees `0..=n_max`, from a single torsion series at
/// truncation `n_max` (so a table is always a prefix of any longer table).
pub fn table(theory: Theory, n_max: usize) -> Vec<GroupDescriptor> {
    let torsion = summand_counts::torsion_series(theory, n_max);
    (0..=n_max)
        .map(|n| GroupDescriptor {
            n,
            rank: summand_counts::rank(theory, n),
            torsion_rank: torsion
                .coeff(n)
                .to_biguint()
                .expect("torsion counts are nonnegative"),
        })
        .collect()
}

/// All three tables through `n_max`, one thread per theory.
pub fn all_tables(n_max: usize) -> [(Theory, Vec<GroupDescriptor>); 3] {
    std::thread::scope(|scope| {
        let handles = Theory::ALL
            .map(|theory| scope.spawn(move || (theory, table(theory, n_max))));
        handles.map(|h| h.join().expect("table thread panicked"))
    })
}

/// One disagreement between the calculator and the embedded tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub theory: Theory,
    pub n: usize,
    pub expected: (u64, u64),
    pub got: (BigUint, BigUint),
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} n={}: expected (r, t) = ({}, {}), got ({}, {})",
            self.theory, self.n, self.expected.0, self.expected.1, self.got.0, self.got.1
        )
    }
}

/// Outcome of replaying the calculator against the embedded tables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub rows_checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "{}/{} reference rows match", self.rows_checked, self.rows_checked)
        } else {
            writeln!(
                f,
                "{} of {} reference rows mismatch:",
                self.mismatches.len(),
                self.rows_checked
            )?;
            for m in &self.mismatches {
                writeln!(f, "  {m}")?;
            }
            Ok(())
        }
    }
}

/// The embedded reference rows for one theory (degrees 0..=99), checksum
/// verified on first access.
pub fn golden_rows(theory: Theory) -> &'static [(u32, u64, u64); 100] {
    static CHECKED: OnceLock<()> = OnceLock::new();
    CHECKED.get_or_init(|| {
        for (rows, expected) in [
            (&golden::GOLDEN_SPIN, golden::GOLDEN_SPIN_FNV1A),
            (&golden::GOLDEN_SPINC, golden::GOLDEN_SPINC_FNV1A),
            (&golden::GOLDEN_SPINH, golden::GOLDEN_SPINH_FNV1A),
        ] {
            assert_eq!(
                fnv1a_rows(rows),
                expected,
                "embedded reference table failed its checksum"
            );
        }
    });
    match theory {
        Theory::Spin => &golden::GOLDEN_SPIN,
        Theory::SpinC => &golden::GOLDEN_SPINC,
        Theory::SpinH => &golden::GOLDEN_SPINH,
    }
}

/// FNV-1a over the rows' little-endian `(n, r, t)` words.
fn fnv1a_rows(rows: &[(u32, u64, u64)]) -> u64 {
    let mut hash = 0xcbf29ce484222325u64;
    let mut eat = |word: u64| {
        for b in word.to_le_bytes() {
            hash ^= u64::from(b);
            hash = hash.wrapping_mul(0x100000001b3);
        }
    };
    for &(n, r, t) in rows {
        eat(u64::from(n));
        eat(r);
        eat(t);
    }
    hash
}

/// Compare computed rows against reference rows, accumulating mismatches.
fn compare_rows(
    theory: Theory,
    reference: &[(u32, u64, u64)],
    computed: &[GroupDescriptor],
    report: &mut VerificationReport,
) {
    for (&(n, r, t), desc) in reference.iter().zip(computed) {
        assert_eq!(n as usize, desc.n, "row alignment");
        report.rows_checked += 1;
        if desc.rank != BigUint::from(r) || desc.torsion_rank != BigUint::from(t) {
            report.mismatches.push(Mismatch {
                theory,
                n: desc.n,
                expected: (r, t),
                got: (desc.rank.clone(), desc.torsion_rank.clone()),
            });
        }
    }
}

/// Recompute every embedded reference row (all three theories, degrees
/// 0..=99) and report each `(theory, n, expected, got)` disagreement.
pub fn verify_golden() -> VerificationReport {
    verify_golden_upto(99)
}

/// Prefix variant of [`verify_golden`]: rows `0..=min(n_max, 99)` per
/// theory, so `n_max = 0` checks exactly three rows.
pub fn verify_golden_upto(n_max: usize) -> VerificationReport {
    let n_max = n_max.min(99);
    let mut report = VerificationReport::default();
    for (theory, computed) in all_tables(n_max) {
        compare_rows(theory, &golden_rows(theory)[..=n_max], &computed, &mut report);
    }
    report
}

/// Version stamp written into cache headers; bump via the crate version.
const CACHE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Cache file path for one `(theory, n_max)` table.
pub fn cache_path(dir: &Path, theory: Theory, n_max: usize) -> PathBuf {
    dir.join(format!("{}-{n_max}.tsv", theory.label()))
}

/// Write a table to its cache file: a header line
/// `#theory=<name> nmax=<n> version=<v>` followed by one `n<TAB>r<TAB>t`
/// line per degree, big integers in decimal.
pub fn write_cache(
    dir: &Path,
    theory: Theory,
    n_max: usize,
    rows: &[GroupDescriptor],
) -> io::Result<PathBuf> {
    let path = cache_path(dir, theory, n_max);
    let mut out = BufWriter::new(std::fs::File::create(&path)?);
    writeln!(
        out,
        "#theory={} nmax={} version={}",
        theory.label(),
        n_max,
        CACHE_VERSION
    )?;
    for row in rows {
        writeln!(out, "{}\t{}\t{}", row.n, row.rank, row.torsion_rank)?;
    }
    out.flush()?;
    Ok(path)
}

/// Read a cached table back. `None` means "recompute": the file is absent,
/// from another version, for different parameters, or malformed.
pub fn read_cache(dir: &Path, theory: Theory, n_max: usize) -> Option<Vec<GroupDescriptor>> {
    let file = std::fs::File::open(cache_path(dir, theory, n_max)).ok()?;
    let mut lines = io::BufReader::new(file).lines();
    let header = lines.next()?.ok()?;
    let expected = format!(
        "#theory={} nmax={} version={}",
        theory.label(),
        n_max,
        CACHE_VERSION
    );
    if header != expected {
        return None;
    }
    let mut rows = Vec::with_capacity(n_max + 1);
    for (n, line) in lines.enumerate() {
        let line = line.ok()?;
        let mut fields = line.split('\t');
        let n_field: usize = fields.next()?.parse().ok()?;
        let rank: BigUint = fields.next()?.parse().ok()?;
        let torsion_rank: BigUint = fields.next()?.parse().ok()?;
        if n_field != n || fields.next().is_some() {
            return None;
        }
        rows.push(GroupDescriptor {
            n,
            rank,
            torsion_rank,
        });
    }
    if rows.len() != n_max + 1 {
        return None;
    }
    Some(rows)
}

/// Cached table: read a valid cache file if one exists, otherwise compute
/// and write one.
pub fn table_cached(dir: &Path, theory: Theory, n_max: usize) -> io::Result<Vec<GroupDescriptor>> {
    if let Some(rows) = read_cache(dir, theory, n_max) {
        return Ok(rows);
    }
    let rows = table(theory, n_max);
    write_cache(dir, theory, n_max, &rows)?;
    Ok(rows)
}
