//! `spincalc` — command-line surface of the exact cobordism calculator.
//!
//! Subcommands: `table` (full n/r/t table for one theory), `group` (one
//! degree), `series` (named generating-function coefficient dumps),
//! `verify` / `verify-margolis` (consistency suites), `bench` (timed
//! three-theory run), and `asymptotics` (estimator reports).
//!
//! Exit codes: 0 on success, 1 when a verification suite fails or the
//! engine reports an error, 2 on usage errors (including unknown series
//! names and out-of-range degrees).

use clap::{Parser, Subcommand, ValueEnum};
use spincalc::a1_margolis::{self, Differential};
use spincalc::asymptotics::{
    gupta_check, partition_report, ranksum_report, AsymptoticReport, AsymptoticTolerances,
    AsymptoticsError,
};
use spincalc::group_tables::{self, GroupDescriptor};
use spincalc::hp_catalog;
use spincalc::series::Series;
use spincalc::summand_counts::{self, Theory};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

/// Hard ceiling on requested degrees; far above this the exact tables stop
/// being a desk-scale computation.
const MAX_N_LIMIT: u64 = 1_000_000;

fn degree_range() -> clap::builder::RangedU64ValueParser {
    clap::value_parser!(u64).range(0..=MAX_N_LIMIT)
}

fn positive_degree_range() -> clap::builder::RangedU64ValueParser {
    clap::value_parser!(u64).range(1..=MAX_N_LIMIT)
}

#[derive(Debug, Parser)]
#[command(
    name = "spincalc",
    version,
    about = "Exact 2-primary spin/spin^c/spin^h cobordism groups",
    long_about = "Computes pi_n MSpin, pi_n MSpin^c, and pi_n MSpin^h at the prime 2 as \
                  Z^r x (Z/2)^t, exactly, from the connective-cover splittings and their \
                  generating functions."
)]
struct CliConfig {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Md,
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the group table for degrees 0..=max-n as Markdown, CSV, or JSON.
    Table {
        /// Cobordism theory: spin, spinc, or spinh.
        #[arg(long)]
        theory: Theory,
        /// Largest degree to tabulate.
        #[arg(long = "max-n", value_name = "N", value_parser = degree_range())]
        max_n: u64,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
        /// Directory for table caches; reused when a valid cache exists,
        /// populated otherwise.
        #[arg(long = "cache-dir", value_name = "DIR")]
        cache_dir: Option<PathBuf>,
        /// Raise the internal series truncation above max-n. Tables are
        /// exact either way; accepted for parity with `series`.
        #[arg(long, value_name = "N", value_parser = degree_range())]
        truncation: Option<u64>,
    },
    /// Print a single group, e.g. `pi_20 MSpin^h = Z^19 + (Z/2)^2`.
    Group {
        /// Cobordism theory: spin, spinc, or spinh.
        #[arg(long)]
        theory: Theory,
        /// Degree to compute.
        #[arg(short = 'n', value_name = "N", value_parser = degree_range())]
        n: u64,
    },
    /// Dump a named series, one `k<TAB>coefficient` line per degree.
    ///
    /// Names: P_A, P_A1, P_mspin, P_mspinc, P_mspinh, P_A_mod_sq3,
    /// P_A_mod_sq1sq2, P_ksp_cover0, P_elephant_cover0, P_ku, and
    /// R_<theory>, S_<theory>, Ktors_<theory> for theory in
    /// {spin, spinc, spinh}.
    Series {
        /// Series name (see the list above).
        name: String,
        /// Largest coefficient degree to print.
        #[arg(long = "max-n", value_name = "N", value_parser = degree_range())]
        max_n: u64,
        /// Compute at a higher internal truncation than max-n.
        #[arg(long, value_name = "N", value_parser = degree_range())]
        truncation: Option<u64>,
    },
    /// Run the table/series consistency suite; exit 0 iff every check passes.
    Verify,
    /// Validate the builtin A1-modules and their Margolis homology.
    VerifyMargolis,
    /// Time a full three-theory table computation.
    Bench {
        /// Largest degree to tabulate.
        #[arg(long = "max-n", value_name = "N", value_parser = degree_range())]
        max_n: u64,
        /// Cache directory; a second run against a warm cache is faster.
        #[arg(long = "cache-dir", value_name = "DIR")]
        cache_dir: Option<PathBuf>,
    },
    /// Print estimator reports and check the convergence tolerances.
    Asymptotics {
        /// Degrees to report on (repeatable). Defaults to 100, 500, 2000.
        #[arg(short = 'n', value_name = "N", value_parser = positive_degree_range())]
        degrees: Vec<u64>,
        /// Degree at which every estimator must be inside the error bound.
        #[arg(long, value_name = "N", default_value_t = 500, value_parser = positive_degree_range())]
        checkpoint_n: u64,
        /// Relative-error bound at the checkpoint.
        #[arg(long, value_name = "E", default_value_t = 0.10)]
        max_relative_error: f64,
        /// Degree at which every estimator must beat its checkpoint error.
        #[arg(long, value_name = "N", default_value_t = 2000, value_parser = positive_degree_range())]
        improvement_n: u64,
    },
}

fn main() -> ExitCode {
    match CliConfig::parse().command {
        Command::Table {
            theory,
            max_n,
            format,
            cache_dir,
            truncation: _,
        } => cmd_table(theory, max_n as usize, format, cache_dir.as_deref()),
        Command::Group { theory, n } => {
            println!(
                "pi_{} {} = {}",
                n,
                theory.spectrum(),
                group_tables::group(theory, n as usize)
            );
            ExitCode::SUCCESS
        }
        Command::Series {
            name,
            max_n,
            truncation,
        } => cmd_series(&name, max_n as usize, truncation.map(|t| t as usize)),
        Command::Verify => cmd_verify(),
        Command::VerifyMargolis => cmd_verify_margolis(),
        Command::Bench { max_n, cache_dir } => cmd_bench(max_n as usize, cache_dir.as_deref()),
        Command::Asymptotics {
            degrees,
            checkpoint_n,
            max_relative_error,
            improvement_n,
        } => cmd_asymptotics(
            &degrees,
            AsymptoticTolerances {
                checkpoint_n: checkpoint_n as usize,
                max_relative_error,
                improvement_n: improvement_n as usize,
            },
        ),
    }
}

fn cmd_table(
    theory: Theory,
    max_n: usize,
    format: Format,
    cache_dir: Option<&std::path::Path>,
) -> ExitCode {
    let rows = match cache_dir {
        Some(dir) => match group_tables::table_cached(dir, theory, max_n) {
            Ok(rows) => rows,
            Err(err) => {
                eprintln!("error: table cache in {}: {err}", dir.display());
                return ExitCode::from(1);
            }
        },
        None => group_tables::table(theory, max_n),
    };
    print!("{}", render_rows(theory, &rows, format));
    ExitCode::SUCCESS
}

/// All three formats carry exactly the triples (n, r, t); big integers are
/// rendered in full decimal (they outgrow u64 near degree 1400).
fn render_rows(theory: Theory, rows: &[GroupDescriptor], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Md => {
            out.push_str("| n | r | t |\n| ---: | ---: | ---: |\n");
            for row in rows {
                out.push_str(&format!("| {} | {} | {} |\n", row.n, row.rank, row.torsion_rank));
            }
        }
        Format::Csv => {
            out.push_str("n,r,t\n");
            for row in rows {
                out.push_str(&format!("{},{},{}\n", row.n, row.rank, row.torsion_rank));
            }
        }
        Format::Json => {
            let groups: Vec<serde_json::Value> = rows
                .iter()
                .map(|row| {
                    serde_json::json!({
                        "n": row.n,
                        "rank": row.rank.to_string(),
                        "torsion": row.torsion_rank.to_string(),
                    })
                })
                .collect();
            let doc = serde_json::json!({ "theory": theory.label(), "groups": groups });
            out.push_str(&serde_json::to_string_pretty(&doc).expect("table serializes"));
            out.push('\n');
        }
    }
    out
}

fn cmd_series(name: &str, max_n: usize, truncation: Option<usize>) -> ExitCode {
    let trunc = truncation.unwrap_or(max_n).max(max_n);
    match named_series(name, trunc) {
        Some(series) => {
            for k in 0..=max_n {
                println!("{k}\t{}", series.coeff(k));
            }
            ExitCode::SUCCESS
        }
        None => {
            eprintln!("error: unknown series name '{name}'");
            eprintln!(
                "known names: P_A, P_A1, P_mspin, P_mspinc, P_mspinh, P_A_mod_sq3, \
                 P_A_mod_sq1sq2, P_ksp_cover0, P_elephant_cover0, P_ku, plus R_<theory>, \
                 S_<theory>, Ktors_<theory> with theory one of spin, spinc, spinh"
            );
            ExitCode::from(2)
        }
    }
}

fn named_series(name: &str, trunc: usize) -> Option<Series> {
    Some(match name {
        "P_A" => hp_catalog::hp_steenrod(trunc).as_ref().clone(),
        "P_A1" => hp_catalog::p_a1(trunc),
        "P_mspin" => hp_catalog::hp_mspin(trunc).as_ref().clone(),
        "P_mspinc" => hp_catalog::hp_mspinc(trunc).as_ref().clone(),
        "P_mspinh" => hp_catalog::hp_mspinh(trunc).as_ref().clone(),
        "P_A_mod_sq3" => hp_catalog::hp_a_mod_sq3(trunc).as_ref().clone(),
        "P_A_mod_sq1sq2" => hp_catalog::hp_a_mod_sq1sq2(trunc).as_ref().clone(),
        "P_ksp_cover0" => hp_catalog::hp_ksp_cover(0, trunc).as_ref().clone(),
        // The cover sits in degrees >= 4; compute high enough, then trim.
        "P_elephant_cover0" => hp_catalog::hp_elephant_cover(0, trunc.max(4)).truncated(trunc),
        "P_ku" => hp_catalog::hp_ku(trunc)
            .expect("ku series divides exactly")
            .as_ref()
            .clone(),
        _ => {
            let (kind, label) = name.split_once('_')?;
            let theory = Theory::from_str(label).ok()?;
            match kind {
                "R" => summand_counts::em_series(theory, trunc).as_ref().clone(),
                "S" => summand_counts::torsion_series(theory, trunc),
                "Ktors" => summand_counts::ktheory_torsion_series(theory, trunc)
                    .as_ref()
                    .clone(),
                _ => return None,
            }
        }
    })
}

fn status_line(all_ok: &mut bool, name: &str, passed: bool, detail: &str) {
    if passed {
        println!("[pass] {name}: {detail}");
    } else {
        *all_ok = false;
        println!("[FAIL] {name}: {detail}");
    }
}

fn cmd_verify() -> ExitCode {
    const N: usize = 300;
    let mut ok = true;

    let golden = group_tables::verify_golden();
    status_line(&mut ok, "reference tables", golden.passed(), &golden.to_string());

    let solved = summand_counts::em_series(Theory::SpinH, N);
    let closed = summand_counts::closed_form_em_spinh(N);
    status_line(
        &mut ok,
        "spinh closed form",
        solved.coeffs() == closed.coeffs(),
        &format!("solved and closed-form R agree through degree {N}"),
    );

    let mut nonneg = true;
    for theory in Theory::ALL {
        nonneg &= summand_counts::em_series(theory, N).first_negative().is_none();
        nonneg &= summand_counts::ktheory_torsion_series(theory, N)
            .first_negative()
            .is_none();
        nonneg &= summand_counts::torsion_series(theory, N).first_negative().is_none();
    }
    status_line(
        &mut ok,
        "nonnegativity",
        nonneg,
        &format!("R, S, and K-torsion coefficients through degree {N}"),
    );

    let coincide = (0..=50).all(|m| {
        let a = summand_counts::rank(Theory::SpinC, 4 * m);
        a == summand_counts::rank(Theory::SpinH, 4 * m)
            && a == summand_counts::rank(Theory::SpinC, 4 * m + 2)
    });
    status_line(
        &mut ok,
        "rank coincidence",
        coincide,
        "spinc/spinh ranks agree at 4m and 4m+2 for m <= 50",
    );

    let census_route = Theory::ALL.iter().all(|&theory| {
        (0..=200).all(|n| {
            summand_counts::rank(theory, n) == summand_counts::rank_from_census(theory, n)
        })
    });
    status_line(
        &mut ok,
        "rank routes",
        census_route,
        "partition formula matches the summand census through degree 200",
    );

    let r_spinc = summand_counts::em_series(Theory::SpinC, N);
    let s_spinc = summand_counts::torsion_series(Theory::SpinC, N);
    status_line(
        &mut ok,
        "spinc torsion",
        r_spinc.coeffs() == s_spinc.coeffs(),
        "S equals R (the ku summands are torsion-free)",
    );

    finish(ok)
}

fn trim_zeros(dims: &[usize]) -> &[usize] {
    let end = dims.iter().rposition(|&d| d != 0).map_or(0, |i| i + 1);
    &dims[..end]
}

fn cmd_verify_margolis() -> ExitCode {
    let mut ok = true;
    // Homology dimensions by degree, trailing zeros trimmed.
    let expected: [(&str, &[usize], &[usize]); 5] = [
        ("A1", &[], &[]),
        ("TrivialF2", &[1], &[1]),
        ("Elephant", &[1], &[0, 0, 1]),
        ("QuestionMark", &[1], &[0, 0, 1]),
        ("C", &[1, 0, 1], &[1, 0, 1]),
    ];
    for (name, q0_expected, q1_expected) in expected {
        let module = a1_margolis::builtin(name).expect("builtin module");
        let validation = a1_margolis::validate(&module);
        status_line(&mut ok, "module laws", validation.passed(), &validation.to_string());

        let q0 = a1_margolis::margolis(&module, Differential::Q0);
        let q1 = a1_margolis::margolis(&module, Differential::Q1);
        let matches = trim_zeros(&q0.homology_dims) == q0_expected
            && trim_zeros(&q1.homology_dims) == q1_expected;
        status_line(
            &mut ok,
            "Margolis homology",
            matches,
            &format!(
                "{name}: H(Q0) dims {:?}, H(Q1) dims {:?}",
                trim_zeros(&q0.homology_dims),
                trim_zeros(&q1.homology_dims)
            ),
        );
    }

    let a1 = a1_margolis::builtin("A1").expect("builtin module");
    let elephant = a1_margolis::builtin("Elephant").expect("builtin module");
    let bridge = a1.hilbert(6) == hp_catalog::p_a1(6);
    status_line(
        &mut ok,
        "Hilbert bridge",
        bridge,
        "hilbert(A1) equals the catalog polynomial P_A1",
    );
    let suspension = a1.hilbert(7).sub(&Series::one(7)) == elephant.hilbert(7).shift(1);
    status_line(
        &mut ok,
        "suspension identity",
        suspension,
        "hilbert(A1) - 1 equals t * hilbert(Elephant)",
    );

    finish(ok)
}

fn finish(ok: bool) -> ExitCode {
    if ok {
        println!("all checks passed");
        ExitCode::SUCCESS
    } else {
        println!("FAILURES detected");
        ExitCode::from(1)
    }
}

fn cmd_bench(max_n: usize, cache_dir: Option<&std::path::Path>) -> ExitCode {
    let start = Instant::now();
    let row_count: usize = match cache_dir {
        Some(dir) => {
            let mut total = 0;
            for theory in Theory::ALL {
                match group_tables::table_cached(dir, theory, max_n) {
                    Ok(rows) => total += rows.len(),
                    Err(err) => {
                        eprintln!("error: table cache in {}: {err}", dir.display());
                        return ExitCode::from(1);
                    }
                }
            }
            total
        }
        None => group_tables::all_tables(max_n).iter().map(|(_, rows)| rows.len()).sum(),
    };
    let elapsed = start.elapsed();
    println!(
        "three-theory table through degree {max_n}: {row_count} rows in {:.3} s",
        elapsed.as_secs_f64()
    );
    println!("peak series truncation: {max_n}");
    if let Some(dir) = cache_dir {
        println!("cache directory: {}", dir.display());
    }
    ExitCode::SUCCESS
}

fn cmd_asymptotics(degrees: &[u64], tolerances: AsymptoticTolerances) -> ExitCode {
    let degrees: Vec<usize> = if degrees.is_empty() {
        vec![100, 500, 2000]
    } else {
        degrees.iter().map(|&n| n as usize).collect()
    };
    let estimators: [(&str, fn(usize) -> Result<AsymptoticReport, AsymptoticsError>); 3] = [
        ("hr-partition", partition_report),
        ("hr-ranksum", ranksum_report),
        ("gupta", gupta_check),
    ];
    println!("| estimator | n | exact | estimate | relative error |");
    println!("| --- | ---: | ---: | ---: | ---: |");
    for &n in &degrees {
        for (label, make) in estimators {
            let report = make(n).expect("degree parser enforces n >= 1");
            println!(
                "| {label} | {} | {} | {:.6e} | {:.6} |",
                report.n, report.exact_value, report.estimate, report.relative_error
            );
        }
    }
    match tolerances.check() {
        Ok(()) => {
            println!(
                "tolerances: all estimators within {:.1}% at n = {} and improving at n = {}",
                tolerances.max_relative_error * 100.0,
                tolerances.checkpoint_n,
                tolerances.improvement_n
            );
            ExitCode::SUCCESS
        }
        Err(message) => {
            eprintln!("tolerance check failed:\n{message}");
            ExitCode::from(1)
        }
    }
}
