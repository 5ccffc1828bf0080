//! Finite graded modules over the subalgebra `A1 = <Sq^1, Sq^2>` of the
//! mod-2 Steenrod algebra, and their Margolis homology.
//!
//! An [`A1Module`] stores a basis per degree and the two actions as F2
//! matrices per degree (`Sq^1` raises degree by 1, `Sq^2` by 2). The module
//! laws are the two defining relations of `A1`,
//!
//! ```text
//! Sq^1 Sq^1 = 0,        Sq^2 Sq^2 = Sq^1 Sq^2 Sq^1,
//! ```
//!
//! checked matrix-wise by [`validate`]. The Margolis differentials are
//! `Q0 = Sq^1` and `Q1 = Sq^1 Sq^2 + Sq^2 Sq^1` (the latter equals
//! `Sq^3 + Sq^2 Sq^1` via `Sq^3 = Sq^1 Sq^2`, so only the two stored
//! actions are needed); both square to zero, and [`margolis`] computes the
//! homology of the resulting two-step complexes degree by degree with F2
//! Gaussian elimination.
//!
//! [`builtin`] provides the five named modules of the calculator:
//!
//! * `A1` — the algebra itself, constructed honestly as the free algebra
//!   on `Sq^1, Sq^2` modulo the two relations (words modulo the relation
//!   span, by elimination), producing graded dims `[1,1,1,2,1,1,1]`;
//! * `TrivialF2` — one cell in degree 0;
//! * `Elephant` — six-cell module with dims `[1,1,2,1,1,1]`, actions from
//!   its cell diagram; equals the augmentation ideal of `A1` shifted down
//!   one degree (a test reconstructs it that way);
//! * `QuestionMark` — three cells `[1,0,1,1]`, `Sq^2` then `Sq^1`; equals
//!   `A1 Sq^3` shifted down three degrees. Its usual presentation as a
//!   cyclic quotient involves `Sq^5`, which does not live in `A1`, so the
//!   cell diagram is the definition here;
//! * `C` — two cells `[1,0,1]` joined by `Sq^2`.
//!
//! These are exactly the modules whose induced-up Hilbert series populate
//! [`crate::hp_catalog`]; [`A1Module::hilbert`] bridges the two worlds,
//! and [`submodule_generated`] / [`quotient_by_submodule`] /
//! [`desuspend`] let tests rebuild each small module from `A1` itself and
//! replay the short exact sequences that the catalog identities encode.

use crate::series::Series;
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

/// Anything bigger than this is outside the module's desk-scale remit.
const MAX_TOTAL_DIM: usize = 10_000;

// ---------------------------------------------------------------------------
// Packed F2 vectors and matrices
// ---------------------------------------------------------------------------

fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

fn get_bit(v: &[u64], i: usize) -> bool {
    v[i / 64] >> (i % 64) & 1 == 1
}

fn set_bit(v: &mut [u64], i: usize) {
    v[i / 64] |= 1 << (i % 64);
}

fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

fn is_zero_vec(v: &[u64]) -> bool {
    v.iter().all(|&w| w == 0)
}

fn first_set(v: &[u64]) -> Option<usize> {
    v.iter()
        .position(|&w| w != 0)
        .map(|i| i * 64 + v[i].trailing_zeros() as usize)
}

/// Dense F2 matrix, one packed bit-row per matrix row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<u64>>,
}

impl F2Matrix {
    pub fn zero(rows: usize, cols: usize) -> F2Matrix {
        F2Matrix {
            rows,
            cols,
            data: vec![vec![0; words_for(cols)]; rows],
        }
    }

    /// Matrix with 1-entries at the given `(row, col)` positions.
    pub fn from_entries(rows: usize, cols: usize, entries: &[(usize, usize)]) -> F2Matrix {
        let mut m = F2Matrix::zero(rows, cols);
        for &(r, c) in entries {
            m.set(r, c, true);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        get_bit(&self.data[r], c)
    }

    pub fn set(&mut self, r: usize, c: usize, bit: bool) {
        assert!(r < self.rows && c < self.cols, "entry out of range");
        if bit {
            set_bit(&mut self.data[r], c);
        } else {
            self.data[r][c / 64] &= !(1 << (c % 64));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|row| is_zero_vec(row))
    }

    /// `self + other` over F2 (entrywise xor). Shapes must match.
    pub fn add(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (dst, src) in out.data.iter_mut().zip(&other.data) {
            xor_into(dst, src);
        }
        out
    }

    /// `self · other` (composition: apply `other` first). `self` is
    /// `a×b`, `other` is `b×c`, result `a×c`: each result row is the xor
    /// of the `other`-rows selected by the bits of the `self`-row.
    pub fn mul(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = F2Matrix::zero(self.rows, other.cols);
        for (out_row, self_row) in out.data.iter_mut().zip(&self.data) {
            for j in 0..self.cols {
                if get_bit(self_row, j) {
                    xor_into(out_row, &other.data[j]);
                }
            }
        }
        out
    }

    /// Apply to a packed column vector of `cols` bits.
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), words_for(self.cols));
        let mut out = vec![0u64; words_for(self.rows)];
        for (i, row) in self.data.iter().enumerate() {
            let parity = row.iter().zip(v).fold(0u64, |acc, (a, b)| acc ^ (a & b));
            if parity.count_ones() % 2 == 1 {
                set_bit(&mut out, i);
            }
        }
        out
    }

    /// Rank over F2 by row elimination.
    pub fn rank(&self) -> usize {
        let mut elim = Eliminator::new(self.cols);
        for row in &self.data {
            elim.insert(row.clone());
        }
        elim.rank()
    }
}

/// Incremental reduced row echelon form over F2: rows keep distinct pivot
/// columns and every pivot column is cleared in all other rows, so
/// [`Eliminator::reduce`] is a canonical normal form modulo the row space.
#[derive(Debug, Clone)]
struct Eliminator {
    cols: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Eliminator {
    fn new(cols: usize) -> Eliminator {
        Eliminator {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Normal form of `v` modulo the current row space.
    fn reduce(&self, mut v: Vec<u64>) -> Vec<u64> {
        debug_assert_eq!(v.len(), words_for(self.cols));
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if get_bit(&v, p) {
                xor_into(&mut v, row);
            }
        }
        v
    }

    /// Insert `v`; returns `false` if it was already in the span.
    fn insert(&mut self, v: Vec<u64>) -> bool {
        let v = self.reduce(v);
        let Some(p) = first_set(&v) else {
            return false;
        };
        // Back-substitute to keep the form fully reduced.
        for row in &mut self.rows {
            if get_bit(row, p) {
                xor_into(row, &v);
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    fn is_pivot(&self, col: usize) -> bool {
        self.pivots.contains(&col)
    }
}

/// Coordinates of `v` in the independent list `basis` (all packed to
/// `bits`); `None` if `v` is outside the span.
fn coordinates_in(basis: &[Vec<u64>], bits: usize, v: &[u64]) -> Option<Vec<u64>> {
    // Augment each basis vector with an indicator tail; the tail of the
    // reduced target then reads off the (unique) combination.
    let tail = basis.len();
    let total = bits + tail;
    let mut elim = Eliminator::new(total);
    for (i, b) in basis.iter().enumerate() {
        let mut aug = vec![0u64; words_for(total)];
        for j in 0..bits {
            if get_bit(b, j) {
                set_bit(&mut aug, j);
            }
        }
        set_bit(&mut aug, bits + i);
        assert!(elim.insert(aug), "basis list is not independent");
    }
    let mut target = vec![0u64; words_for(total)];
    for j in 0..bits {
        if get_bit(v, j) {
            set_bit(&mut target, j);
        }
    }
    let reduced = elim.reduce(target);
    if (0..bits).any(|j| get_bit(&reduced, j)) {
        return None;
    }
    let mut coords = vec![0u64; words_for(tail)];
    for i in 0..tail {
        if get_bit(&reduced, bits + i) {
            set_bit(&mut coords, i);
        }
    }
    Some(coords)
}

// ---------------------------------------------------------------------------
// Modules
// ---------------------------------------------------------------------------

/// A finite graded F2 module with `Sq^1` and `Sq^2` actions.
///
/// `sq1[d]` maps degree `d` to `d+1` (shape `dims[d+1] × dims[d]`),
/// `sq2[d]` maps `d` to `d+2`; degrees past the top are zero. The fields
/// are public plain data — mutate freely, then [`validate`] to check the
/// module laws again.
#[derive(Debug, Clone)]
pub struct A1Module {
    pub name: String,
    /// `dims[d]` = dimension in degree `d`.
    pub dims: Vec<usize>,
    /// One label per basis element, `labels[d][i]`.
    pub labels: Vec<Vec<String>>,
    pub sq1: Vec<F2Matrix>,
    pub sq2: Vec<F2Matrix>,
}

impl A1Module {
    /// The zero module.
    pub fn zero(name: &str) -> A1Module {
        A1Module {
            name: name.to_string(),
            dims: Vec::new(),
            labels: Vec::new(),
            sq1: Vec::new(),
            sq2: Vec::new(),
        }
    }

    /// Dimension in degree `d` (zero outside the stored range).
    pub fn dim(&self, d: usize) -> usize {
        self.dims.get(d).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// The action matrix out of degree `d` (owned; zero outside range).
    fn action(&self, step: usize, d: usize) -> F2Matrix {
        let stored = match step {
            1 => self.sq1.get(d),
            2 => self.sq2.get(d),
            _ => unreachable!("A1 is generated in degrees 1 and 2"),
        };
        stored
            .cloned()
            .unwrap_or_else(|| F2Matrix::zero(self.dim(d + step), self.dim(d)))
    }

    /// Index of a label within its degree.
    pub fn basis_index(&self, d: usize, label: &str) -> Option<usize> {
        self.labels.get(d)?.iter().position(|l| l == label)
    }

    /// Graded-dimension generating function, zero-extended to truncation `n`.
    pub fn hilbert(&self, n: usize) -> Series {
        Series::from_coeffs(
            self.dims
                .iter()
                .take(n + 1)
                .map(|&d| num_bigint::BigInt::from(d)),
            n,
        )
    }
}

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: [&str; 5] = ["A1", "TrivialF2", "Elephant", "QuestionMark", "C"];

/// Error for unknown [`builtin`] names.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("unknown module `{0}`; expected one of A1, TrivialF2, Elephant, QuestionMark, C")]
pub struct UnknownModule(String);

/// Construct a named builtin module. Every builtin satisfies the module
/// laws ([`validate`] passes) and matches the graded dimensions used by
/// the Hilbert-series catalog.
pub fn builtin(name: &str) -> Result<A1Module, UnknownModule> {
    let module = match name {
        "A1" => a1_from_presentation(),
        "TrivialF2" => A1Module {
            name: "TrivialF2".into(),
            dims: vec![1],
            labels: vec![vec!["x0".into()]],
            sq1: vec![F2Matrix::zero(0, 1)],
            sq2: vec![F2Matrix::zero(0, 1)],
        },
        // Cells e0..e5 with the doubled degree 2 split as e2a (the Sq^1
        // image) and e2b (the Sq^2 image).
        "Elephant" => A1Module {
            name: "Elephant".into(),
            dims: vec![1, 1, 2, 1, 1, 1],
            labels: vec![
                vec!["e0".into()],
                vec!["e1".into()],
                vec!["e2a".into(), "e2b".into()],
                vec!["e3".into()],
                vec!["e4".into()],
                vec!["e5".into()],
            ],
            sq1: vec![
                F2Matrix::zero(1, 1),
                F2Matrix::from_entries(2, 1, &[(0, 0)]), // e1 -> e2a
                F2Matrix::from_entries(1, 2, &[(0, 1)]), // e2b -> e3
                F2Matrix::zero(1, 1),
                F2Matrix::from_entries(1, 1, &[(0, 0)]), // e4 -> e5
                F2Matrix::zero(0, 1),
            ],
            sq2: vec![
                F2Matrix::from_entries(2, 1, &[(1, 0)]), // e0 -> e2b
                F2Matrix::from_entries(1, 1, &[(0, 0)]), // e1 -> e3
                F2Matrix::from_entries(1, 2, &[(0, 0)]), // e2a -> e4
                F2Matrix::from_entries(1, 1, &[(0, 0)]), // e3 -> e5
                F2Matrix::zero(0, 1),
                F2Matrix::zero(0, 1),
            ],
        },
        // Cells in degrees 0, 2, 3: Sq^2 up from the bottom, then Sq^1.
        "QuestionMark" => A1Module {
            name: "QuestionMark".into(),
            dims: vec![1, 0, 1, 1],
            labels: vec![
                vec!["q0".into()],
                vec![],
                vec!["q2".into()],
                vec!["q3".into()],
            ],
            sq1: vec![
                F2Matrix::zero(0, 1),
                F2Matrix::zero(1, 0),
                F2Matrix::from_entries(1, 1, &[(0, 0)]), // q2 -> q3
                F2Matrix::zero(0, 1),
            ],
            sq2: vec![
                F2Matrix::from_entries(1, 1, &[(0, 0)]), // q0 -> q2
                F2Matrix::zero(1, 0),
                F2Matrix::zero(0, 1),
                F2Matrix::zero(0, 1),
            ],
        },
        // Two cells joined by Sq^2.
        "C" => A1Module {
            name: "C".into(),
            dims: vec![1, 0, 1],
            labels: vec![vec!["c0".into()], vec![], vec!["c2".into()]],
            sq1: vec![
                F2Matrix::zero(0, 1),
                F2Matrix::zero(1, 0),
                F2Matrix::zero(0, 1),
            ],
            sq2: vec![
                F2Matrix::from_entries(1, 1, &[(0, 0)]), // c0 -> c2
                F2Matrix::zero(0, 0),
                F2Matrix::zero(0, 1),
            ],
        },
        other => return Err(UnknownModule(other.to_string())),
    };
    debug_assert!(validate(&module).passed(), "builtin {name} is broken");
    Ok(module)
}

/// Build `A1` itself from its presentation: the free associative F2
/// algebra on `Sq^1, Sq^2` modulo the two-sided relation span of
/// `u·Sq^1Sq^1·v` and `u·(Sq^2Sq^2 + Sq^1Sq^2Sq^1)·v`.
///
/// Words are reduced by elimination per degree; the surviving (non-pivot)
/// words form the basis, and left multiplication by a generator is read
/// off from each extended word's normal form. Degrees 7..9 are computed
/// too and must come out zero-dimensional — that check is what certifies
/// `Sq^1`/`Sq^2` really annihilate the top class.
fn a1_from_presentation() -> A1Module {
    const MAX_DEG: usize = 9;
    // Words of each degree as digit strings over {1, 2}.
    let mut words: Vec<Vec<Vec<u8>>> = vec![vec![Vec::new()]];
    for d in 1..=MAX_DEG {
        let mut at_d = Vec::new();
        for first in [1u8, 2] {
            if d >= first as usize {
                for w in &words[d - first as usize] {
                    let mut ext = vec![first];
                    ext.extend_from_slice(w);
                    at_d.push(ext);
                }
            }
        }
        words.push(at_d);
    }
    let index: Vec<HashMap<&[u8], usize>> = words
        .iter()
        .map(|ws| ws.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect())
        .collect();

    // Relation span per degree.
    let mut relations: Vec<Eliminator> = words.iter().map(|ws| Eliminator::new(ws.len())).collect();
    let indicator = |d: usize, w: &[u8]| -> Vec<u64> {
        let mut v = vec![0u64; words_for(words[d].len())];
        set_bit(&mut v, index[d][w]);
        v
    };
    // u · Sq^1 Sq^1 · v = 0 (the inserted relation has degree 2).
    for d in 2..=MAX_DEG {
        for left in 0..=(d - 2) {
            let right = d - 2 - left;
            for u in &words[left] {
                for v in &words[right] {
                    let w = [u.as_slice(), &[1, 1], v.as_slice()].concat();
                    relations[d].insert(indicator(d, &w));
                }
            }
        }
    }
    // u · (Sq^2 Sq^2 + Sq^1 Sq^2 Sq^1) · v = 0 (degree 4).
    for d in 4..=MAX_DEG {
        for left in 0..=(d - 4) {
            let right = d - 4 - left;
            for u in &words[left] {
                for v in &words[right] {
                    let a = [u.as_slice(), &[2, 2], v.as_slice()].concat();
                    let b = [u.as_slice(), &[1, 2, 1], v.as_slice()].concat();
                    let mut rel = indicator(d, &a);
                    xor_into(&mut rel, &indicator(d, &b));
                    relations[d].insert(rel);
                }
            }
        }
    }

    // Basis per degree: the non-pivot words.
    let basis: Vec<Vec<usize>> = (0..=MAX_DEG)
        .map(|d| {
            (0..words[d].len())
                .filter(|&i| !relations[d].is_pivot(i))
                .collect()
        })
        .collect();
    let dims: Vec<usize> = basis.iter().map(|b| b.len()).collect();
    assert_eq!(
        dims,
        [1, 1, 1, 2, 1, 1, 1, 0, 0, 0],
        "A1 presentation produced wrong graded dimensions"
    );

    // Left multiplication by Sq^step, in basis coordinates.
    let act = |step: usize, d: usize| -> F2Matrix {
        let target = d + step;
        if target > MAX_DEG {
            assert_eq!(dims[d], 0, "action would leave the computed range");
            return F2Matrix::zero(0, 0);
        }
        let mut m = F2Matrix::zero(dims[target], dims[d]);
        for (col, &wi) in basis[d].iter().enumerate() {
            let mut ext = vec![step as u8];
            ext.extend_from_slice(&words[d][wi]);
            let nf = relations[target].reduce(indicator(target, &ext));
            for (row, &bj) in basis[target].iter().enumerate() {
                if get_bit(&nf, bj) {
                    m.set(row, col, true);
                }
            }
            // Normal forms live entirely on basis words.
            for i in 0..words[target].len() {
                if get_bit(&nf, i) {
                    assert!(basis[target].contains(&i));
                }
            }
        }
        m
    };

    let top = 6;
    let label = |w: &[u8]| -> String {
        if w.is_empty() {
            "1".to_string()
        } else {
            w.iter().map(|&c| format!("Sq{c}")).collect()
        }
    };
    A1Module {
        name: "A1".into(),
        dims: dims[..=top].to_vec(),
        labels: (0..=top)
            .map(|d| basis[d].iter().map(|&i| label(&words[d][i])).collect())
            .collect(),
        sq1: (0..=top).map(|d| act(1, d)).collect(),
        sq2: (0..=top).map(|d| act(2, d)).collect(),
    }
}

/// Outcome of checking the module laws.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub module: String,
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "{}: module laws hold", self.module)
        } else {
            writeln!(f, "{}: {} violation(s):", self.module, self.violations.len())?;
            for v in &self.violations {
                writeln!(f, "  {v}")?;
            }
            Ok(())
        }
    }
}

/// Check the `A1` module laws matrix-wise: shape conformity, then
/// `Sq^1 Sq^1 = 0` and `Sq^2 Sq^2 = Sq^1 Sq^2 Sq^1` out of every degree.
/// Violations are reported, not panicked, so callers can show them all.
pub fn validate(m: &A1Module) -> ValidationReport {
    let mut report = ValidationReport {
        module: m.name.clone(),
        ..Default::default()
    };
    if m.total_dim() > MAX_TOTAL_DIM {
        report.violations.push(format!(
            "total dimension {} exceeds the supported cap {MAX_TOTAL_DIM}",
            m.total_dim()
        ));
        return report;
    }
    for (step, mats, name) in [(1usize, &m.sq1, "sq1"), (2, &m.sq2, "sq2")] {
        if mats.len() != m.dims.len() {
            report.violations.push(format!(
                "{name} stores {} degrees but the module has {}",
                mats.len(),
                m.dims.len()
            ));
            return report;
        }
        for (d, mat) in mats.iter().enumerate() {
            if (mat.rows(), mat.cols()) != (m.dim(d + step), m.dim(d)) {
                report.violations.push(format!(
                    "{name}[{d}] has shape {}x{}, expected {}x{}",
                    mat.rows(),
                    mat.cols(),
                    m.dim(d + step),
                    m.dim(d)
                ));
            }
        }
        if !report.violations.is_empty() {
            return report; // relation checks need conforming shapes
        }
    }
    if let Some(labels_bad) = m
        .dims
        .iter()
        .enumerate()
        .find(|&(d, &dim)| m.labels.get(d).map(|l| l.len()) != Some(dim))
    {
        report.violations.push(format!(
            "labels in degree {} do not match the dimension",
            labels_bad.0
        ));
    }
    for d in 0..m.dims.len() {
        let sq1sq1 = m.action(1, d + 1).mul(&m.action(1, d));
        if !sq1sq1.is_zero() {
            report
                .violations
                .push(format!("Sq1 Sq1 != 0 out of degree {d}"));
        }
        let sq2sq2 = m.action(2, d + 2).mul(&m.action(2, d));
        let adem = m.action(1, d + 3).mul(&m.action(2, d + 1)).mul(&m.action(1, d));
        if sq2sq2 != adem {
            report
                .violations
                .push(format!("Sq2 Sq2 != Sq1 Sq2 Sq1 out of degree {d}"));
        }
    }
    report
}

/// The two Margolis differentials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Differential {
    /// `Q0 = Sq^1`, degree +1.
    Q0,
    /// `Q1 = Sq^1 Sq^2 + Sq^2 Sq^1`, degree +3.
    Q1,
}

impl Differential {
    pub fn step(self) -> usize {
        match self {
            Differential::Q0 => 1,
            Differential::Q1 => 3,
        }
    }
}

impl fmt::Display for Differential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Differential::Q0 => "Q0",
            Differential::Q1 => "Q1",
        })
    }
}

/// Margolis homology dimensions per degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MargolisResult {
    pub differential: Differential,
    pub homology_dims: Vec<usize>,
}

impl MargolisResult {
    pub fn total(&self) -> usize {
        self.homology_dims.iter().sum()
    }
}

/// Homology of `(M, Q)` degree by degree: `dim ker − dim im`, computed as
/// `dim_d − rank Q_d − rank Q_{d−step}` after verifying `Q ∘ Q = 0`
/// (a failure there means the module data is invalid, and panics).
pub fn margolis(m: &A1Module, differential: Differential) -> MargolisResult {
    let step = differential.step();
    let q = |d: usize| -> F2Matrix {
        match differential {
            Differential::Q0 => m.action(1, d),
            Differential::Q1 => m
                .action(1, d + 2)
                .mul(&m.action(2, d))
                .add(&m.action(2, d + 1).mul(&m.action(1, d))),
        }
    };
    let qs: Vec<F2Matrix> = (0..m.dims.len()).map(q).collect();
    for d in 0..m.dims.len() {
        if d + step < m.dims.len() && !qs[d + step].mul(&qs[d]).is_zero() {
            panic!(
                "{}: {differential} does not square to zero out of degree {d}",
                m.name
            );
        }
    }
    let homology_dims = (0..m.dims.len())
        .map(|d| {
            let kernel = m.dim(d) - qs[d].rank();
            let image = if d >= step { qs[d - step].rank() } else { 0 };
            kernel
                .checked_sub(image)
                .expect("image exceeds kernel despite Q^2 = 0")
        })
        .collect();
    MargolisResult {
        differential,
        homology_dims,
    }
}

// ---------------------------------------------------------------------------
// Submodules, quotients, desuspension
// ---------------------------------------------------------------------------

/// Drop trailing zero-dimensional degrees (and their empty matrices).
fn trim_top(mut m: A1Module) -> A1Module {
    let len = m.dims.iter().rposition(|&d| d != 0).map_or(0, |i| i + 1);
    m.dims.truncate(len);
    m.labels.truncate(len);
    m.sq1.truncate(len);
    m.sq2.truncate(len);
    m
}

/// Per-degree reduced spans of the submodule generated by the given basis
/// elements, closed under both actions.
fn span_closure(m: &A1Module, generators: &[(usize, usize)]) -> Vec<Eliminator> {
    let mut spans: Vec<Eliminator> = m.dims.iter().map(|&d| Eliminator::new(d)).collect();
    let mut worklist: Vec<(usize, Vec<u64>)> = generators
        .iter()
        .map(|&(d, i)| {
            assert!(i < m.dim(d), "generator index out of range");
            let mut v = vec![0u64; words_for(m.dim(d))];
            set_bit(&mut v, i);
            (d, v)
        })
        .collect();
    while let Some((d, v)) = worklist.pop() {
        if d >= m.dims.len() || !spans[d].insert(v.clone()) {
            continue;
        }
        for step in [1, 2] {
            if d + step < m.dims.len() {
                let image = m.action(step, d).apply(&v);
                if !is_zero_vec(&image) {
                    worklist.push((d + step, image));
                }
            }
        }
    }
    spans
}

/// The submodule of `m` generated by the named basis elements, as a module
/// in its own right (basis: the closure's span vectors; actions induced by
/// expressing images in that basis).
pub fn submodule_generated(m: &A1Module, generators: &[(usize, usize)], name: &str) -> A1Module {
    let spans = span_closure(m, generators);
    let bases: Vec<Vec<Vec<u64>>> = spans.iter().map(|e| e.rows.clone()).collect();
    let dims: Vec<usize> = bases.iter().map(|b| b.len()).collect();
    let induced = |step: usize, d: usize| -> F2Matrix {
        let target_dim = dims.get(d + step).copied().unwrap_or(0);
        let mut mat = F2Matrix::zero(target_dim, dims[d]);
        for (col, v) in bases[d].iter().enumerate() {
            let image = m.action(step, d).apply(v);
            if is_zero_vec(&image) {
                continue;
            }
            let coords = coordinates_in(&bases[d + step], m.dim(d + step), &image)
                .expect("closure is closed under the actions");
            for row in 0..target_dim {
                if get_bit(&coords, row) {
                    mat.set(row, col, true);
                }
            }
        }
        mat
    };
    trim_top(A1Module {
        name: name.to_string(),
        labels: dims
            .iter()
            .enumerate()
            .map(|(d, &k)| (0..k).map(|i| format!("s{d}_{i}")).collect())
            .collect(),
        sq1: (0..dims.len()).map(|d| induced(1, d)).collect(),
        sq2: (0..dims.len()).map(|d| induced(2, d)).collect(),
        dims,
    })
}

/// The quotient of `m` by the submodule generated by the named basis
/// elements. Quotient coordinates are the non-pivot coordinates of the
/// span; the induced action projects each image back to those.
pub fn quotient_by_submodule(
    m: &A1Module,
    generators: &[(usize, usize)],
    name: &str,
) -> A1Module {
    let spans = span_closure(m, generators);
    // Surviving (non-pivot) coordinates per degree.
    let survivors: Vec<Vec<usize>> = spans
        .iter()
        .enumerate()
        .map(|(d, e)| (0..m.dim(d)).filter(|&i| !e.is_pivot(i)).collect())
        .collect();
    let dims: Vec<usize> = survivors.iter().map(|s| s.len()).collect();
    let induced = |step: usize, d: usize| -> F2Matrix {
        let target_dim = dims.get(d + step).copied().unwrap_or(0);
        let mut mat = F2Matrix::zero(target_dim, dims[d]);
        for (col, &i) in survivors[d].iter().enumerate() {
            let mut v = vec![0u64; words_for(m.dim(d))];
            set_bit(&mut v, i);
            if d + step >= m.dims.len() {
                continue;
            }
            let projected = spans[d + step].reduce(m.action(step, d).apply(&v));
            for (row, &j) in survivors[d + step].iter().enumerate() {
                if get_bit(&projected, j) {
                    mat.set(row, col, true);
                }
            }
        }
        mat
    };
    trim_top(A1Module {
        name: name.to_string(),
        labels: survivors
            .iter()
            .enumerate()
            .map(|(d, surv)| surv.iter().map(|&i| m.labels[d][i].clone()).collect())
            .collect(),
        sq1: (0..dims.len()).map(|d| induced(1, d)).collect(),
        sq2: (0..dims.len()).map(|d| induced(2, d)).collect(),
        dims,
    })
}

/// Shift a module down by `s` degrees; the bottom `s` degrees must be
/// zero-dimensional.
pub fn desuspend(m: &A1Module, s: usize, name: &str) -> A1Module {
    assert!(
        m.dims.iter().take(s).all(|&d| d == 0),
        "cannot desuspend {s} degrees: module is nonzero below degree {s}"
    );
    let take = |mats: &[F2Matrix]| mats.get(s..).map(<[F2Matrix]>::to_vec).unwrap_or_default();
    A1Module {
        name: name.to_string(),
        dims: m.dims.get(s..).map(<[usize]>::to_vec).unwrap_or_default(),
        labels: m.labels.get(s..).map(<[Vec<String>]>::to_vec).unwrap_or_default(),
        sq1: take(&m.sq1),
        sq2: take(&m.sq2),
    }
}
