//! Command-line front end: run identity suites, emit dimension tables,
//! and print the check catalogue.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use k3fock::suites::{catalogue_text, default_gram, dimension_table, run_suite, SuiteConfig, SUITES};
use k3fock::taut::{DivisorLattice, Faults, Ring};
use k3fock::{qi, Rat};

#[derive(Parser)]
#[command(name = "k3fock", version, about = "Exact checks on the tautological Fock model")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run identity suites and report one line per check.
    Verify(VerifyArgs),
    /// Emit the bigraded dimension table for a fixed n.
    Tables(TablesArgs),
    /// Print the catalogue of checked identities.
    Catalogue,
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// Largest weight n to check (smaller checks are run, larger skipped).
    #[arg(long)]
    n: Option<i64>,
    /// Rank of the divisor lattice (ignored when --gram is given).
    #[arg(long)]
    rho: Option<usize>,
    /// Gram matrix, rows separated by ';', e.g. "0 1; 1 0".
    #[arg(long)]
    gram: Option<String>,
    /// Suite to run (repeatable); defaults to all suites.
    #[arg(long = "suite")]
    suites: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for the randomized confluence check.
    #[arg(long)]
    seed: Option<u64>,
    /// Optional JSON config file; explicit flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Inject a named defect (testing fixture).
    #[arg(long, hide = true)]
    fault: Option<String>,
}

#[derive(clap::Args)]
struct TablesArgs {
    /// Weight n of the table.
    #[arg(long)]
    n: Option<i64>,
    #[arg(long)]
    rho: Option<usize>,
    #[arg(long)]
    gram: Option<String>,
    /// Write the table to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    n: Option<i64>,
    rho: Option<usize>,
    gram: Option<String>,
    suites: Option<Vec<String>>,
    seed: Option<u64>,
}

fn parse_gram(text: &str) -> Result<Vec<Vec<Rat>>> {
    let rows: Vec<Vec<Rat>> = text
        .split(';')
        .map(|row| {
            row.split_whitespace()
                .map(|e| {
                    e.parse::<i64>()
                        .map(qi)
                        .with_context(|| format!("bad gram entry {e:?}"))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let r = rows.len();
    if r == 0 || rows.iter().any(|row| row.len() != r) {
        bail!("gram matrix must be square");
    }
    for i in 0..r {
        for j in 0..i {
            if rows[i][j] != rows[j][i] {
                bail!("gram matrix must be symmetric");
            }
        }
    }
    Ok(rows)
}

fn build_config(args: &VerifyArgs) -> Result<SuiteConfig> {
    let file: FileConfig = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("cannot read {}", path.display()))?;
            serde_json::from_str(&text).context("bad config file")?
        }
        None => FileConfig::default(),
    };
    let mut cfg = SuiteConfig::default();
    if let Some(n) = args.n.or(file.n) {
        if n < 0 {
            bail!("--n must be nonnegative");
        }
        cfg.n_max = n;
    }
    let gram_text = args.gram.clone().or(file.gram);
    let rho = args.rho.or(file.rho);
    cfg.gram = match (gram_text, rho) {
        (Some(text), rho) => {
            let gram = parse_gram(&text)?;
            if let Some(r) = rho {
                if gram.len() != r {
                    bail!("--rho {} does not match a {}x{} gram matrix", r, gram.len(), gram.len());
                }
            }
            gram
        }
        (None, Some(r)) => {
            if r == 0 {
                bail!("--rho must be positive");
            }
            default_gram(r)
        }
        (None, None) => cfg.gram,
    };
    let suites = if args.suites.is_empty() { file.suites.unwrap_or_default() } else { args.suites.clone() };
    for name in &suites {
        if !SUITES.iter().any(|(s, _)| s == name) {
            bail!(
                "unknown suite {name:?}; available: {}",
                SUITES.iter().map(|(s, _)| *s).collect::<Vec<_>>().join(", ")
            );
        }
    }
    if !suites.is_empty() {
        cfg.suites = suites;
    }
    if let Some(seed) = args.seed.or(file.seed) {
        cfg.seed = seed;
    }
    if let Some(name) = &args.fault {
        cfg.faults = Faults::by_name(name).with_context(|| format!("unknown fault {name:?}"))?;
    }
    Ok(cfg)
}

fn emit(text: String, out: &Option<PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run_verify(args: &VerifyArgs) -> Result<bool> {
    let cfg = build_config(args)?;
    let report = run_suite(&cfg).map_err(|e| anyhow::anyhow!("{e}"))?;
    let text = match args.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.checks)?;
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            for c in &report.checks {
                s.push_str(&format!("{:4} {} ({}) [{} ms]\n", c.status.label(), c.id, c.params, c.millis));
                if let Some(w) = &c.witness {
                    s.push_str(&format!("     witness: {w}\n"));
                }
            }
            let (pass, fail, skip) = report.counts();
            s.push_str(&format!("{pass} passed, {fail} failed, {skip} skipped\n"));
            s
        }
    };
    emit(text, &args.out)?;
    Ok(report.all_passed())
}

/// Render the joint-grading dimension table as CSV followed by an aligned grid.
fn render_tables(table: &BTreeMap<(usize, i64), usize>, n: i64) -> String {
    let mut s = format!("# bigraded dimensions at n = {n}\n");
    s.push_str("i,s,dim\n");
    for (&(i, sh), &d) in table {
        s.push_str(&format!("{i},{sh},{d}\n"));
    }
    let imax = table.keys().map(|&(i, _)| i).max().unwrap_or(0);
    let smin = table.keys().map(|&(_, sh)| sh).min().unwrap_or(0);
    let smax = table.keys().map(|&(_, sh)| sh).max().unwrap_or(0);
    s.push('\n');
    s.push_str(&format!("{:>4}", "i\\s"));
    for sh in smin..=smax {
        s.push_str(&format!("{sh:>6}"));
    }
    s.push('\n');
    for i in 0..=imax {
        s.push_str(&format!("{i:>4}"));
        for sh in smin..=smax {
            match table.get(&(i, sh)) {
                Some(d) => s.push_str(&format!("{d:>6}")),
                None => s.push_str(&format!("{:>6}", ".")),
            }
        }
        s.push('\n');
    }
    s
}

fn run_tables(args: &TablesArgs) -> Result<()> {
    let n = args.n.unwrap_or(3);
    if n < 0 {
        bail!("--n must be nonnegative");
    }
    let gram = match (&args.gram, args.rho) {
        (Some(text), rho) => {
            let gram = parse_gram(text)?;
            if let Some(r) = rho {
                if gram.len() != r {
                    bail!("--rho {} does not match a {}x{} gram matrix", r, gram.len(), gram.len());
                }
            }
            gram
        }
        (None, Some(r)) => {
            if r == 0 {
                bail!("--rho must be positive");
            }
            default_gram(r)
        }
        (None, None) => vec![vec![qi(2)]],
    };
    let lattice = DivisorLattice::new(gram).map_err(|e| anyhow::anyhow!("{e}"))?;
    let ring = Ring::new(lattice);
    let table = dimension_table(&ring, n).map_err(|e| anyhow::anyhow!(e))?;
    emit(render_tables(&table, n), &args.out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.cmd {
        Cmd::Verify(args) => run_verify(args),
        Cmd::Tables(args) => run_tables(args).map(|()| true),
        Cmd::Catalogue => emit(catalogue_text(), &None).map(|()| true),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
