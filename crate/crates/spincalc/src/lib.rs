//! Exact calculator for the 2-primary spin, spin^c, and spin^h cobordism
//! groups, presented as `Z^r x (Z/2)^t` per degree.
//!
//! The computation runs entirely on generating functions: the homotopy of
//! each Thom spectrum is read off from a stable splitting into connective
//! K-theory-type covers plus suspended mod-2 Eilenberg–Mac Lane summands,
//! and every count in that splitting is a coefficient of an explicit
//! Hilbert–Poincaré series. Concretely:
//!
//! * [`partitions`] — exact partition counts `p(n)` and `p1(n)` (no part 1),
//!   which enumerate the summands of each family.
//! * [`series`] — truncated formal power series over arbitrary-precision
//!   integers: the engine that expands Euler products, inverts units, and
//!   performs exact (remainder-checked) division.
//! * [`hp_catalog`] — the named Hilbert–Poincaré series of the graded
//!   modules in play (the Steenrod algebra, the Thom spectra, and the
//!   cohomology of each summand family).
//! * [`summand_counts`] — solves the splitting identity for the
//!   Eilenberg–Mac Lane series `R(t)`, adds the Bott-periodic K-theory
//!   torsion, and produces ranks and the total torsion series `S(t)`.
//! * [`group_tables`] — assembles per-degree group descriptors, verifies
//!   them against the embedded degree-0..99 reference tables, and caches
//!   large runs on disk.
//! * [`asymptotics`] — Hardy–Ramanujan/Gupta growth estimates with
//!   convergence diagnostics against the exact engine.
//! * [`a1_margolis`] — finite graded modules over the subalgebra A(1) with
//!   validated `Sq^1`/`Sq^2` actions and their Margolis homology, used to
//!   cross-check the structural algebra behind the catalog at desk scale.
//!
//! All group-theoretic coefficients are exact big integers; floating point
//! appears only in the (clearly separated) asymptotic estimates.

pub mod a1_margolis;
pub mod asymptotics;
pub mod group_tables;
pub mod hp_catalog;
pub mod partitions;
pub mod series;
pub mod summand_counts;
