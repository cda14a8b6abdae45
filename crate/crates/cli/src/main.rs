//! `chord` — command-line front end for the chord-diagram library.
//!
//! Subcommands: `enumerate`, `table`, `gamma`, `verify
//! {dse,recurrences,bijection,lemmas}`, `fourterm`, `gevrey`.  Exit codes:
//! 0 on success / all checks passing, 1 on a verification failure, 2 on a
//! usage error.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num::BigRational;
use serde::Serialize;

use chord_core::analysis::{four_term_quads, four_term_sum, gevrey_check};
use chord_core::diagram::ChordDiagram;
use chord_core::enumerate::{
    enumerate_bruteforce, enumerate_constructive, Enumeration, BRUTE_LIMIT_ENV,
    CONSTRUCTIVE_LIMIT_ENV,
};
use chord_core::symbolic::gamma_series;
use chord_core::tree::to_tree;
use chord_core::verify::{
    check_bijection, check_count_reduction, check_decomposition_statistics, check_f_tables,
    check_gamma_recurrences, check_main_theorem, check_root_monomial, check_subtree_bound,
    check_subtree_counts, check_tree_image, CheckReport,
};

#[derive(Parser)]
#[command(name = "chord", version, about = "Rooted connected chord diagrams: enumeration, tree bijection, series expansions, and verification")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the rooted connected chord diagrams on n chords.
    Enumerate {
        /// Number of chords.
        #[arg(long)]
        n: usize,
        /// Which generator to run; `both` cross-checks them.
        #[arg(long, value_enum, default_value_t = Method::Constructive)]
        method: Method,
        /// Override the generator's hard size limit.
        #[arg(long)]
        limit: Option<usize>,
        /// Print only the count.
        #[arg(long)]
        count_only: bool,
    },
    /// Print the diagram/tree correspondence table for size n.
    Table {
        /// Number of chords.
        #[arg(long)]
        n: usize,
    },
    /// Print the expansion gamma_k as a truncated series in x.
    Gamma {
        /// Which gamma to compute.
        #[arg(long)]
        k: usize,
        /// Truncation order in x.
        #[arg(long, default_value_t = 6)]
        order: usize,
        /// JSON file mapping symbol index to a rational "p/q"; when given,
        /// coefficients are evaluated numerically.
        #[arg(long)]
        fvals: Option<PathBuf>,
    },
    /// Re-derive and cross-check the analytic results.
    Verify {
        #[command(subcommand)]
        what: VerifyWhat,
    },
    /// Search for four-term quadruples whose alternating sum fails to
    /// vanish.
    Fourterm {
        /// Number of chords.
        #[arg(long)]
        n: usize,
        /// Constant offset in the weight M_alpha(X) = f_X f_{b(X)-alpha}.
        #[arg(long)]
        alpha: usize,
        /// Write the full violation list as JSON.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Check Gevrey-1 growth of gamma_k under geometric weights
    /// f_j = c^{j+1}.
    Gevrey {
        /// Geometric base of the substituted weights.
        #[arg(long)]
        c: u32,
        /// Which gamma to analyze.
        #[arg(long)]
        k: usize,
        /// Largest diagram size to include.
        #[arg(long, default_value_t = 6)]
        order: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Constructive,
    Bruteforce,
    Both,
}

#[derive(Subcommand)]
enum VerifyWhat {
    /// The closed-form solution of the Dyson-Schwinger equation: the
    /// operator expansion must reproduce g_1 exactly.
    Dse {
        #[arg(long, default_value_t = 6)]
        order: usize,
        /// Write residual details as JSON.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// The series recurrences: the g/gamma ladder, the F-table
    /// constructions, and the f = 1 count reduction.
    Recurrences {
        #[arg(long, default_value_t = 6)]
        order: usize,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// The tree bijection: round-trip, b = fully-right leaf, and the
    /// P1/P2 image characterization.
    Bijection {
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// The structural lemmas on decompositions and root subtrees.
    Lemmas {
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(all_passed) => {
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Enumerate { n, method, limit, count_only } => {
            cmd_enumerate(n, method, limit, count_only, cli.format)
        }
        Command::Table { n } => cmd_table(n, cli.format),
        Command::Gamma { k, order, fvals } => cmd_gamma(k, order, fvals, cli.format),
        Command::Verify { what } => cmd_verify(what, cli.format),
        Command::Fourterm { n, alpha, report } => cmd_fourterm(n, alpha, report, cli.format),
        Command::Gevrey { c, k, order } => cmd_gevrey(c, k, order, cli.format),
    }
}

#[derive(Serialize)]
struct EnumerateOutput {
    n: usize,
    method: &'static str,
    count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    diagrams: Option<Vec<ChordDiagram>>,
}

fn cmd_enumerate(
    n: usize,
    method: Method,
    limit: Option<usize>,
    count_only: bool,
    format: Format,
) -> Result<bool> {
    if let Some(limit) = limit {
        // The library reads its limits from the environment; the flag is a
        // per-invocation override of both.
        std::env::set_var(BRUTE_LIMIT_ENV, limit.to_string());
        std::env::set_var(CONSTRUCTIVE_LIMIT_ENV, limit.to_string());
    }
    let (diagrams, name) = match method {
        Method::Constructive => {
            (enumerate_constructive(n)?.pop().unwrap(), "constructive")
        }
        Method::Bruteforce => (enumerate_bruteforce(n)?, "bruteforce"),
        Method::Both => {
            let constructive = enumerate_constructive(n)?.pop().unwrap();
            let brute = enumerate_bruteforce(n)?;
            if constructive != brute {
                bail!(
                    "generator mismatch at n = {n}: constructive {} vs bruteforce {}",
                    constructive.len(),
                    brute.len()
                );
            }
            (constructive, "both")
        }
    };
    match format {
        Format::Json => {
            let out = EnumerateOutput {
                n,
                method: name,
                count: diagrams.len(),
                diagrams: (!count_only).then_some(diagrams),
            };
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        Format::Text => {
            if !count_only {
                for d in &diagrams {
                    println!("{d}");
                }
            }
            println!("{} diagrams on {n} chords ({name})", diagrams.len());
        }
    }
    Ok(true)
}

#[derive(Serialize)]
struct TableRecord {
    diagram: ChordDiagram,
    sigma: Vec<usize>,
    b: usize,
    tree: chord_core::tree::LabeledTree,
}

fn cmd_table(n: usize, format: Format) -> Result<bool> {
    let diagrams = enumerate_constructive(n)?.pop().unwrap();
    let mut records = Vec::with_capacity(diagrams.len());
    for d in diagrams {
        let s = d.stats()?;
        let tree = to_tree(&d)?;
        records.push(TableRecord { diagram: d, sigma: s.sigma, b: s.b, tree });
    }
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&records)?),
        Format::Text => {
            for r in &records {
                println!(
                    "{:?} {}  sigma={:?}  b={}  tree={}",
                    r.diagram.pairing(),
                    r.diagram.bracket_string(),
                    r.sigma,
                    r.b,
                    r.tree
                );
            }
            println!("{} records", records.len());
        }
    }
    Ok(true)
}

fn parse_fvals(path: &PathBuf) -> Result<BTreeMap<usize, BigRational>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let raw: BTreeMap<String, String> =
        serde_json::from_str(&text).context("fvals must map symbol index to \"p/q\"")?;
    let mut out = BTreeMap::new();
    for (k, v) in raw {
        let j: usize = k.parse().with_context(|| format!("bad symbol index {k:?}"))?;
        let r = BigRational::from_str(&v).map_err(|e| {
            anyhow::anyhow!("bad rational {v:?} for symbol {j}: {e}")
        })?;
        out.insert(j, r);
    }
    Ok(out)
}

fn cmd_gamma(
    k: usize,
    order: usize,
    fvals: Option<PathBuf>,
    format: Format,
) -> Result<bool> {
    let e = Enumeration::up_to(order.max(1))?;
    let gamma = gamma_series(k, order, &e)?;
    match fvals {
        Some(path) => {
            let values = parse_fvals(&path)?;
            let coeffs: Vec<BigRational> = (0..=order)
                .map(|i| gamma.coeff(i).eval(&values))
                .collect::<chord_core::Result<_>>()?;
            match format {
                Format::Json => {
                    let map: BTreeMap<usize, String> =
                        coeffs.iter().enumerate().map(|(i, c)| (i, c.to_string())).collect();
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&serde_json::json!({
                            "k": k, "order": order, "coeffs": map
                        }))?
                    );
                }
                Format::Text => {
                    for (i, c) in coeffs.iter().enumerate() {
                        println!("[x^{i}] gamma_{k} = {c}");
                    }
                }
            }
        }
        None => match format {
            Format::Json => {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&serde_json::json!({
                        "k": k, "series": gamma
                    }))?
                );
            }
            Format::Text => println!("gamma_{k} = {gamma}"),
        },
    }
    Ok(true)
}

#[derive(Serialize)]
struct VerifyOutput<T: Serialize> {
    passed: bool,
    reports: T,
}

fn finish_verify<T: Serialize>(
    passed: bool,
    reports: T,
    summaries: &[String],
    report_path: Option<PathBuf>,
    format: Format,
) -> Result<bool> {
    let out = VerifyOutput { passed, reports };
    if let Some(path) = &report_path {
        std::fs::write(path, serde_json::to_string_pretty(&out)?)
            .with_context(|| format!("writing {}", path.display()))?;
    }
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&out)?),
        Format::Text => {
            for line in summaries {
                println!("{line}");
            }
            println!("overall: {}", if passed { "PASS" } else { "FAIL" });
        }
    }
    Ok(passed)
}

fn collect(reports: Vec<CheckReport>) -> (bool, Vec<String>, Vec<CheckReport>) {
    let passed = reports.iter().all(CheckReport::passed);
    let summaries = reports.iter().map(CheckReport::summary).collect();
    (passed, summaries, reports)
}

fn cmd_verify(what: VerifyWhat, format: Format) -> Result<bool> {
    match what {
        VerifyWhat::Dse { order, report } => {
            let e = Enumeration::up_to(order)?;
            let check = check_main_theorem(order, &e)?;
            let passed = check.passed();
            let summary = if passed {
                format!("dse: operator expansion matches g_1 through x^{order}")
            } else {
                format!("dse: residual {} through x^{order}", check.residual)
            };
            finish_verify(passed, check, &[summary], report, format)
        }
        VerifyWhat::Recurrences { order, report } => {
            let e = Enumeration::up_to(order)?;
            let reports = vec![
                check_gamma_recurrences(&e, order, order)?,
                check_f_tables(order.saturating_sub(1), order.saturating_sub(1), &e)?,
                check_count_reduction(&e)?,
            ];
            let (passed, summaries, reports) = collect(reports);
            finish_verify(passed, reports, &summaries, report, format)
        }
        VerifyWhat::Bijection { n, report } => {
            let e = Enumeration::up_to(n)?;
            let mut reports = vec![check_bijection(&e)?];
            for m in 1..=n.min(5) {
                reports.push(check_tree_image(m, &e)?);
            }
            let (passed, summaries, reports) = collect(reports);
            finish_verify(passed, reports, &summaries, report, format)
        }
        VerifyWhat::Lemmas { n, report } => {
            let e = Enumeration::up_to(n)?;
            let mut reports = vec![
                check_decomposition_statistics(&e)?,
                check_subtree_bound(&e)?,
                check_root_monomial(&e)?,
            ];
            for m in 2..=n.min(5) {
                reports.push(check_subtree_counts(m, &e)?);
            }
            let (passed, summaries, reports) = collect(reports);
            finish_verify(passed, reports, &summaries, report, format)
        }
    }
}

#[derive(Serialize)]
struct FourTermOutput {
    n: usize,
    alpha: usize,
    quadruples: usize,
    violations: Vec<ViolationRecord>,
}

#[derive(Serialize)]
struct ViolationRecord {
    members: Vec<ChordDiagram>,
    sum: chord_core::symbolic::FPolynomial,
}

fn cmd_fourterm(
    n: usize,
    alpha: usize,
    report: Option<PathBuf>,
    format: Format,
) -> Result<bool> {
    let quads = four_term_quads(n)?;
    let mut violations = Vec::new();
    for quad in &quads {
        let sum = four_term_sum(quad, alpha)?;
        if !sum.is_zero() {
            violations.push(ViolationRecord {
                members: quad.members.to_vec(),
                sum,
            });
        }
    }
    let out = FourTermOutput { n, alpha, quadruples: quads.len(), violations };
    if let Some(path) = &report {
        std::fs::write(path, serde_json::to_string_pretty(&out)?)
            .with_context(|| format!("writing {}", path.display()))?;
    }
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&out)?),
        Format::Text => {
            println!(
                "{} quadruples on {n} chords; {} violate the four-term sum at alpha = {alpha}",
                out.quadruples,
                out.violations.len()
            );
            if let Some(v) = out.violations.first() {
                println!("example violation:");
                for (sign, d) in ["+", "-", "+", "-"].iter().zip(&v.members) {
                    println!("  {sign} {d}");
                }
                println!("  sum = {}", v.sum);
            }
        }
    }
    Ok(true)
}

fn cmd_gevrey(c: u32, k: usize, order: usize, format: Format) -> Result<bool> {
    let e = Enumeration::up_to(order)?;
    let report = gevrey_check(c, k, &e)?;
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
        Format::Text => {
            for (n, r) in report.ratios.iter().enumerate() {
                println!("n = {:>2}: |[x^n] gamma_{k}| / n! = {r:.6}", n + 1);
            }
            println!(
                "bound base 4c^2 = {}, fitted rate = {:.4}: {}",
                report.bound_base,
                report.fitted_rate,
                if report.passed() { "PASS" } else { "FAIL" }
            );
        }
    }
    Ok(report.passed())
}
