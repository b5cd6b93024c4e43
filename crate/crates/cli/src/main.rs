//! Command-line front end: prolongation and curvature computations on
//! named families, holonomy of supermetrics stored as JSON, and
//! verification of the reference tables.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use skewberger::catalog::{
    build_cli_rep, catalog_table_json, catalog_table_text, parse_tables, verify_with_jobs,
};
use skewberger::curvature::{curvature_space, lagrangian_pair_analysis, skew_berger_test};
use skewberger::liealg::MatrixRep;
use skewberger::prolong::prolongation;
use skewberger::supergeo::{holonomy, unrestricted_span_dim, SuperMetric};
use skewberger::{CurvatureKind, ProlongationKind};

#[derive(Parser)]
#[command(
    name = "skewberger",
    version,
    about = "Exact-arithmetic prolongations, curvature tests, and supermetric holonomy"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension of a prolongation space of a family representation.
    Prolong(ProlongArgs),
    /// Dimension of a curvature space of a family representation.
    Curvature(CurvatureArgs),
    /// Run the skew-Berger test on a family representation.
    SkewBerger(SkewBergerArgs),
    /// Analyse the symplectic doubling of a family representation.
    LagrangianPair(LagrangianPairArgs),
    /// Holonomy algebra of an odd Riemannian supermetric.
    Holonomy(HolonomyArgs),
    /// Re-derive the reference tables and report pass/fail per row.
    Verify(VerifyArgs),
    /// Print a reference table.
    Catalog(CatalogArgs),
}

/// Selection of a family representation shared by several subcommands.
#[derive(Args)]
struct RepArgs {
    /// Family name: gl, sl, so, so-split, so-star, sp, spin12half, spin7, su, u.
    #[arg(long)]
    family: String,
    /// Defining size (matrix size; quaternionic rank for so-star).
    #[arg(long)]
    n: usize,
    /// Signature part p (with --q; for so, su, u).
    #[arg(long)]
    p: Option<usize>,
    /// Signature part q (with --p; for so, su, u).
    #[arg(long)]
    q: Option<usize>,
    /// Adjoin a one-dimensional center acting as the identity.
    #[arg(long)]
    center: bool,
    /// Module descriptor: standard, dual, adjoint, sym2, ext2, ext3, ext3-primitive.
    #[arg(long, default_value = "standard")]
    rep: String,
}

impl RepArgs {
    fn build(&self) -> Result<MatrixRep, String> {
        build_cli_rep(
            &self.family,
            self.n,
            self.p,
            self.q,
            self.center,
            &self.rep,
        )
        .map_err(|e| e.to_string())
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SkewOrSym {
    Skew,
    Sym,
}

#[derive(Clone, Copy, ValueEnum)]
enum OddOrEven {
    Odd,
    Even,
}

#[derive(Args)]
struct ProlongArgs {
    #[command(flatten)]
    rep: RepArgs,
    /// Symmetry type of the prolongation.
    #[arg(long, value_enum)]
    kind: SkewOrSym,
    /// Prolongation order.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    order: u8,
    /// Write a JSON report to this path.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct CurvatureArgs {
    #[command(flatten)]
    rep: RepArgs,
    /// Curvature space type.
    #[arg(long, value_enum)]
    kind: OddOrEven,
    /// Write a JSON report to this path.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct SkewBergerArgs {
    #[command(flatten)]
    rep: RepArgs,
    /// Write the JSON report to this path.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct LagrangianPairArgs {
    #[command(flatten)]
    rep: RepArgs,
    /// Write the JSON report to this path.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct HolonomyArgs {
    /// Path to a supermetric JSON file.
    #[arg(long)]
    metric: PathBuf,
    /// Also print the span dimension before imposing bracket closure checks.
    #[arg(long)]
    debug_span: bool,
    /// Write the JSON report to this path.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Table selection, e.g. `1-8`, `5`, or `1,3,7-8`.
    #[arg(long, default_value = "1-8")]
    tables: String,
    /// Size bound: matrix size for tables 5-6, module dimension for 7-8.
    #[arg(long, default_value_t = 6)]
    max_size: usize,
    /// Number of worker threads for the expensive checks.
    #[arg(long)]
    jobs: Option<usize>,
    /// Write the JSON report to this path.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CatalogFormat {
    Text,
    Json,
}

#[derive(Args)]
struct CatalogArgs {
    /// Table number, 1-8.
    #[arg(long)]
    table: u8,
    /// Output format.
    #[arg(long, value_enum, default_value_t = CatalogFormat::Text)]
    format: CatalogFormat,
}

fn write_json(path: &PathBuf, text: &str) -> Result<(), String> {
    fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Prolong(args) => {
            let rep = args.rep.build()?;
            let kind = match args.kind {
                SkewOrSym::Skew => ProlongationKind::Skew,
                SkewOrSym::Sym => ProlongationKind::Symmetric,
            };
            let space = prolongation(&rep, kind, args.order);
            let (dim_g, dim_v, dim) = space.dims();
            println!("dim {dim}");
            if let Some(path) = &args.json {
                let mut report = serde_json::json!({
                    "algebra": rep.name(),
                    "kind": match args.kind { SkewOrSym::Skew => "skew", SkewOrSym::Sym => "sym" },
                    "order": args.order,
                    "dim_g": dim_g,
                    "dimV": dim_v,
                    "dim": dim,
                });
                if args.order == 2 {
                    report["dim_order1"] =
                        serde_json::json!(space.order1().map(|s| s.dim()));
                }
                write_json(path, &serde_json::to_string_pretty(&report).unwrap())?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Curvature(args) => {
            let rep = args.rep.build()?;
            let kind = match args.kind {
                OddOrEven::Odd => CurvatureKind::Odd,
                OddOrEven::Even => CurvatureKind::Even,
            };
            let space = curvature_space(&rep, kind);
            println!("dim {}", space.dim());
            if let Some(path) = &args.json {
                let report = serde_json::json!({
                    "algebra": rep.name(),
                    "kind": match args.kind { OddOrEven::Odd => "odd", OddOrEven::Even => "even" },
                    "dim": space.dim(),
                });
                write_json(path, &serde_json::to_string_pretty(&report).unwrap())?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::SkewBerger(args) => {
            let rep = args.rep.build()?;
            let report = skew_berger_test(&rep).map_err(|e| e.to_string())?;
            println!("algebra {}", report.algebra);
            println!("dimV {}", report.dim_v);
            println!("curvature dim {}", report.curvature_dim);
            println!("derivative dim {}", report.derivative_dim);
            println!("skew-berger {}", report.is_skew_berger);
            println!("symmetric {}", report.is_symmetric);
            if let Some(path) = &args.json {
                write_json(path, &report.to_json())?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::LagrangianPair(args) => {
            let rep = args.rep.build()?;
            let report = lagrangian_pair_analysis(&rep).map_err(|e| e.to_string())?;
            println!("algebra {}", report.algebra);
            println!("dim L {}", report.dim_l);
            println!("first prolongation dim {}", report.dim_first_prolongation);
            println!("curvature dim {}", report.curvature_dim);
            println!(
                "vanishes on lagrangian pairs {}",
                report.vanishes_on_lagrangian_pairs
            );
            if let Some(path) = &args.json {
                write_json(path, &serde_json::to_string_pretty(&report).unwrap())?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Holonomy(args) => {
            let text = fs::read_to_string(&args.metric)
                .map_err(|e| format!("cannot read {}: {e}", args.metric.display()))?;
            let metric = SuperMetric::from_json(&text).map_err(|e| e.to_string())?;
            let report = holonomy(&metric).map_err(|e| e.to_string())?;
            println!("dim {}", report.dim);
            println!("contained in sp {}", report.contained_in_sp);
            println!("bracket closed {}", report.bracket_closed);
            if args.debug_span {
                let span = unrestricted_span_dim(&metric).map_err(|e| e.to_string())?;
                println!("unrestricted span dim {span}");
            }
            if let Some(path) = &args.json {
                write_json(path, &report.to_json())?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => {
            let tables = parse_tables(&args.tables).map_err(|e| e.to_string())?;
            let report = verify_with_jobs(&tables, args.max_size, args.jobs);
            print!("{}", report.text());
            if let Some(path) = &args.json {
                write_json(path, &report.to_json())?;
            }
            if report.all_pass() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::FAILURE)
            }
        }
        Command::Catalog(args) => match args.format {
            CatalogFormat::Json => {
                let raw = catalog_table_json(args.table)
                    .ok_or_else(|| format!("table {} does not exist; choose from 1-8", args.table))?;
                print!("{raw}");
                Ok(ExitCode::SUCCESS)
            }
            CatalogFormat::Text => {
                let text = catalog_table_text(args.table)
                    .ok_or_else(|| format!("table {} does not exist; choose from 1-8", args.table))?;
                print!("{text}");
                Ok(ExitCode::SUCCESS)
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
