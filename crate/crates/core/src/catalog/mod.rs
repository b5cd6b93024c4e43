//! The reference tables shipped with this crate, and the harness that
//! re-derives their contents.
//!
//! Eight JSON documents are embedded at compile time, one per table, and
//! are never hard-coded in logic; [`catalog_table`] exposes the parsed
//! form, [`catalog_table_json`] the raw document.  Each table belongs to
//! one of three groups, and [`verify`] dispatches on the group:
//!
//! * `super-complex` / `super-real` (tables 1-4): structural rows for Lie
//!   superalgebras.  Each row records the even part and the odd module
//!   both as display text and as machine-readable descriptors, plus a
//!   closed dimension formula per family.  Verification instantiates the
//!   pinned parameter tuples and checks that the dimensions computed from
//!   the descriptors match the family formulas.  These checks are pure
//!   bookkeeping and run at every bound.
//! * `prolongation` (tables 5-6): rows with nonzero first skew-symmetric
//!   prolongation.  Verification delegates to
//!   [`verify_prolongation_table`](crate::prolong::verify_prolongation_table)
//!   and folds its per-size entries back onto catalog rows through the
//!   `registry` name lists; here `max_size` bounds the matrix size.
//! * `berger` (tables 7-8): candidate holonomy rows.  Verification builds
//!   each recorded instance whose module dimension is within `max_size`,
//!   runs [`skew_berger_test`](crate::curvature::skew_berger_test), and
//!   compares the outcome against the frozen `computed` block and against
//!   the row's `claim`.  Instances beyond the bound are reported as
//!   skipped rather than silently extrapolated.
//!
//! Rows without an exact-arithmetic constructor are first-class catalog
//! entries: they appear in every report as explicit skips with a note, so
//! a report enumerates every row of every requested table exactly once.
//! Reports are deterministic: for a fixed input the JSON encoding is
//! byte-identical across runs and thread counts, up to the `generated_at`
//! timestamp.
//!
//! The module also hosts the descriptor-parsing helpers used by the
//! command-line front end ([`build_cli_rep`], [`parse_tables`]).

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curvature::{skew_berger_test, CurvatureReport};
use crate::exactlin::Mat;
use crate::liealg::{
    add_center, adjoint, dual, ext_power, ext_power_primitive, gl, sl, so_pq, so_split, so_star,
    sp, spin12_half, spin7, su_pq, sym_power2, tensor_product, u_pq, Field, LiealgError, MatrixRep,
};
use crate::prolong::{verify_prolongation_table, RowStatus, TableRow};

const RAW_TABLES: [&str; 8] = [
    include_str!("../../data/table1.json"),
    include_str!("../../data/table2.json"),
    include_str!("../../data/table3.json"),
    include_str!("../../data/table4.json"),
    include_str!("../../data/table5.json"),
    include_str!("../../data/table6.json"),
    include_str!("../../data/table7.json"),
    include_str!("../../data/table8.json"),
];

// ---------------------------------------------------------------------------
// Data model for the embedded documents.

/// One embedded table: header plus rows.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableFile {
    pub table: u8,
    pub group: String,
    pub title: String,
    pub columns: Vec<String>,
    #[serde(default)]
    pub measure_unit: Option<String>,
    pub rows: Vec<CatalogRow>,
}

/// One catalog row.  The populated fields depend on the table group; the
/// loader keeps a single shape so that rows can be listed uniformly.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogRow {
    pub id: String,
    pub algebra: String,
    pub restriction: String,
    pub constructible: bool,
    #[serde(default)]
    pub ambiguous: bool,
    #[serde(default)]
    pub notes: Vec<String>,

    // Structural rows (tables 1-4).
    #[serde(default)]
    pub family: Option<String>,
    #[serde(default)]
    pub parent_params: BTreeMap<String, String>,
    #[serde(default)]
    pub complexification: Option<String>,
    #[serde(default)]
    pub even: Option<AlgebraDescriptor>,
    #[serde(default)]
    pub odd: Option<ModuleDescriptor>,
    #[serde(default)]
    pub odd_minus: Option<ModuleDescriptor>,
    #[serde(default)]
    pub params: Vec<String>,

    // Module column shared by the prolongation and berger groups.
    #[serde(default)]
    pub module: Option<String>,

    // Prolongation rows (tables 5-6).
    #[serde(default)]
    pub prolongation1: Option<String>,
    #[serde(default)]
    pub prolongation2: Option<String>,
    #[serde(default)]
    pub registry: Option<Vec<String>>,

    // Berger rows (tables 7-8).
    #[serde(default)]
    pub builder: Option<String>,
    #[serde(default)]
    pub claim: Option<Claim>,

    /// Pinned instances: parameter tuples for structural rows, measured
    /// instances for berger rows.
    #[serde(default)]
    pub instances: Vec<RowInstance>,
}

/// Even-part descriptor: display text plus summand kinds.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDescriptor {
    pub text: String,
    pub parts: Vec<AlgebraPart>,
}

/// One direct summand of an even part.  `size` is an integer expression in
/// the row parameters giving the defining matrix size; kinds of fixed
/// dimension (`center`, `g2`) omit it.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraPart {
    pub kind: String,
    #[serde(default)]
    pub size: Option<String>,
}

/// Odd-module descriptor: display text plus tensor summands.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDescriptor {
    pub text: String,
    pub summands: Vec<ModuleSummand>,
}

/// One summand `W_1 ⊗ ... ⊗ W_k` over the base unit.  The factors are
/// integer expressions for the factor dimensions over the table's ground
/// field; a `k`-fold tensor over base `b` divides the plain product by
/// `dim b` to the power `k-1`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSummand {
    pub base: String,
    pub factors: Vec<String>,
}

/// The verdict a berger row asserts for its whole size range.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Claim {
    #[serde(default)]
    pub is_skew_berger: Option<bool>,
    #[serde(default)]
    pub is_symmetric: Option<bool>,
    #[serde(default)]
    pub curvature_dim: Option<usize>,
}

/// A pinned instance of a row.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum RowInstance {
    /// A measured berger instance with builder arguments.
    Berger(BergerInstance),
    /// A parameter binding for a structural row.
    Params(BTreeMap<String, i64>),
}

/// One berger instance: builder arguments, the module dimension used for
/// size gating, and the frozen outcome of a previous run (when one has
/// been recorded).
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BergerInstance {
    pub label: String,
    pub args: Vec<i64>,
    pub measure: usize,
    pub computed: Option<ComputedVerdict>,
}

/// Frozen outcome of the curvature test for one instance.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComputedVerdict {
    pub curvature_dim: usize,
    pub derivative_dim: usize,
    pub is_skew_berger: bool,
    pub is_symmetric: bool,
}

fn tables() -> &'static [TableFile] {
    static TABLES: OnceLock<Vec<TableFile>> = OnceLock::new();
    TABLES.get_or_init(|| {
        RAW_TABLES
            .iter()
            .map(|raw| serde_json::from_str(raw).expect("embedded table data is well-formed"))
            .collect()
    })
}

/// The parsed table `1..=8`, or `None` for any other number.
pub fn catalog_table(table: u8) -> Option<&'static TableFile> {
    tables().iter().find(|t| t.table == table)
}

/// The raw JSON document for table `1..=8`.
pub fn catalog_table_json(table: u8) -> Option<&'static str> {
    match table {
        1..=8 => Some(RAW_TABLES[table as usize - 1]),
        _ => None,
    }
}

/// A plain-text rendering of one table: title line plus one line per row.
pub fn catalog_table_text(table: u8) -> Option<String> {
    let t = catalog_table(table)?;
    let mut out = format!("Table {}: {} [{}]\n", t.table, t.title, t.group);
    for r in &t.rows {
        let module = r
            .module
            .clone()
            .or_else(|| r.odd.as_ref().map(|o| o.text.clone()))
            .unwrap_or_default();
        out.push_str(&format!("  {:<24} {:<28} {}", r.id, r.algebra, module));
        if !r.restriction.is_empty() {
            out.push_str(&format!("  [{}]", r.restriction));
        }
        if !r.constructible {
            out.push_str("  (catalog-only)");
        }
        if r.ambiguous {
            out.push_str("  (descriptor ambiguous)");
        }
        out.push('\n');
    }
    Some(out)
}

// ---------------------------------------------------------------------------
// Integer expression evaluator for the size formulas in the data files.

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<Tok>, String> {
    let mut toks = Vec::new();
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' => {
                chars.next();
            }
            '+' => {
                chars.next();
                toks.push(Tok::Plus);
            }
            '-' => {
                chars.next();
                toks.push(Tok::Minus);
            }
            '*' => {
                chars.next();
                toks.push(Tok::Star);
            }
            '/' => {
                chars.next();
                toks.push(Tok::Slash);
            }
            '(' => {
                chars.next();
                toks.push(Tok::LParen);
            }
            ')' => {
                chars.next();
                toks.push(Tok::RParen);
            }
            '0'..='9' => {
                let mut v: i64 = 0;
                while let Some(d) = chars.peek().and_then(|c| c.to_digit(10)) {
                    v = v * 10 + i64::from(d);
                    chars.next();
                }
                toks.push(Tok::Int(v));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        name.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Ident(name));
            }
            other => return Err(format!("unexpected character `{other}` in `{src}`")),
        }
    }
    Ok(toks)
}

struct ExprParser<'a> {
    toks: &'a [Tok],
    pos: usize,
    vars: &'a BTreeMap<String, i64>,
}

impl ExprParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expr(&mut self) -> Result<i64, String> {
        let mut v = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    v += self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    v -= self.term()?;
                }
                _ => return Ok(v),
            }
        }
    }

    fn term(&mut self) -> Result<i64, String> {
        let mut v = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    v *= self.factor()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let d = self.factor()?;
                    if d == 0 {
                        return Err("division by zero".into());
                    }
                    if v % d != 0 {
                        return Err(format!("inexact division {v}/{d}"));
                    }
                    v /= d;
                }
                _ => return Ok(v),
            }
        }
    }

    fn factor(&mut self) -> Result<i64, String> {
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(v)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                self.vars
                    .get(&name)
                    .copied()
                    .ok_or_else(|| format!("unbound variable `{name}`"))
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let v = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(v)
                    }
                    _ => Err("missing closing parenthesis".into()),
                }
            }
            _ => Err("expected a value".into()),
        }
    }
}

/// Evaluates an integer arithmetic expression (`+ - * /`, parentheses,
/// variables) over the given bindings.  Division must be exact.
fn eval_expr(src: &str, vars: &BTreeMap<String, i64>) -> Result<i64, String> {
    let toks = lex(src)?;
    let mut p = ExprParser {
        toks: &toks,
        pos: 0,
        vars,
    };
    let v = p.expr()?;
    if p.pos != toks.len() {
        return Err(format!("trailing input in `{src}`"));
    }
    Ok(v)
}

// ---------------------------------------------------------------------------
// Dimension formulas for the structural tables.

/// `(dim even, dim odd)` of a superalgebra family as closed formulas in its
/// defining parameters.  Real forms bind the parameters of their complex
/// parent via the row's `parent_params`, and their real dimensions equal
/// the parent's complex dimensions.
fn family_dims(family: &str, p: &BTreeMap<String, i64>) -> Result<(i64, i64), String> {
    let get = |k: &str| {
        p.get(k)
            .copied()
            .ok_or_else(|| format!("family `{family}` needs parameter `{k}`"))
    };
    Ok(match family {
        "osp" => {
            let n = get("n")?;
            let m = get("m")?;
            (n * (n - 1) / 2 + m * (2 * m + 1), 2 * n * m)
        }
        "osp_alpha" => (9, 8),
        "F4" => (24, 16),
        "G3" => (17, 14),
        "pq" => {
            let n = get("n")?;
            (n * n - 1, n * n - 1)
        }
        "sl_super" => {
            let n = get("n")?;
            let m = get("m")?;
            (n * n + m * m - 1, 2 * n * m)
        }
        "psl_super" => {
            let n = get("n")?;
            (2 * (n * n - 1), 2 * n * n)
        }
        "osp2" => {
            let m = get("m")?;
            (1 + m * (2 * m + 1), 4 * m)
        }
        "pe" => {
            let n = get("n")?;
            (n * n - 1, n * n)
        }
        other => return Err(format!("unknown family `{other}`")),
    })
}

/// Dimension of one even-part summand over the table's ground field.  The
/// `size` expression always gives the defining matrix size; quaternionic
/// kinds use the quaternionic rank.
fn part_dim(part: &AlgebraPart, vars: &BTreeMap<String, i64>) -> Result<i64, String> {
    let size = || -> Result<i64, String> {
        let e = part
            .size
            .as_deref()
            .ok_or_else(|| format!("part `{}` needs a size", part.kind))?;
        eval_expr(e, vars)
    };
    Ok(match part.kind.as_str() {
        "center" => 1,
        "g2" => 14,
        "so" | "so_pq" => {
            let s = size()?;
            s * (s - 1) / 2
        }
        "sp" | "sp_R" => {
            let s = size()?;
            s * (s + 1) / 2
        }
        "sl" | "sl_R" | "su_pq" => {
            let s = size()?;
            s * s - 1
        }
        "gl" => {
            let s = size()?;
            s * s
        }
        "sl_H" => {
            let s = size()?;
            4 * s * s - 1
        }
        "sl_C_real" => {
            let s = size()?;
            2 * (s * s - 1)
        }
        "so_H" => {
            let s = size()?;
            s * (2 * s - 1)
        }
        "sp_pq" => {
            let s = size()?;
            s * (2 * s + 1)
        }
        other => return Err(format!("unknown part kind `{other}`")),
    })
}

/// Total dimension of a module descriptor over the table's ground field.
/// In the real tables the base units are `R`, `C`, `H` of real dimension
/// 1, 2, 4; in the complex tables only `C` of complex dimension 1.
fn module_dim(
    d: &ModuleDescriptor,
    real_units: bool,
    vars: &BTreeMap<String, i64>,
) -> Result<i64, String> {
    let mut total = 0i64;
    for s in &d.summands {
        let unit: i64 = match (real_units, s.base.as_str()) {
            (false, "C") => 1,
            (true, "R") => 1,
            (true, "C") => 2,
            (true, "H") => 4,
            (_, other) => return Err(format!("base `{other}` is not valid here")),
        };
        let mut prod = 1i64;
        for f in &s.factors {
            prod *= eval_expr(f, vars)?;
        }
        let div = unit.pow(s.factors.len().saturating_sub(1) as u32);
        if prod % div != 0 {
            return Err(format!("summand dimension {prod} is not divisible by {div}"));
        }
        total += prod / div;
    }
    Ok(total)
}

// ---------------------------------------------------------------------------
// Builder registry for the berger tables.

/// Builds the representation named by a berger row's `builder` field.
fn build_rep(builder: &str, args: &[i64]) -> Result<MatrixRep, String> {
    let arg = |i: usize| -> Result<usize, String> {
        args.get(i)
            .map(|&v| v as usize)
            .ok_or_else(|| format!("builder `{builder}` expects more arguments"))
    };
    let rep: Result<MatrixRep, LiealgError> = match builder {
        "sp_R" => sp(2 * arg(0)?, Field::Rational),
        "sp_C" => sp(2 * arg(0)?, Field::Gaussian),
        "u_pq" => u_pq(arg(0)?, arg(1)?),
        "su_pq" => su_pq(arg(0)?, arg(1)?),
        "so_star" => so_star(arg(0)?),
        "sl2_so_pq" => {
            let (p, q) = (arg(0)?, arg(1)?);
            sl(2, Field::Rational).and_then(|a| so_pq(p, q).and_then(|b| tensor_product(&a, &b)))
        }
        "sl2_so_C" => {
            let m = arg(0)?;
            sl(2, Field::Gaussian)
                .and_then(|a| so_split(m, Field::Gaussian).and_then(|b| tensor_product(&a, &b)))
        }
        "so_sp_C" => {
            let (n, q) = (arg(0)?, arg(1)?);
            so_split(n, Field::Gaussian)
                .and_then(|a| sp(2 * q, Field::Gaussian).and_then(|b| tensor_product(&a, &b)))
        }
        "sl6R_ext3" => sl(6, Field::Rational).and_then(|r| ext_power(3, &r)),
        "sl6C_ext3" => sl(6, Field::Gaussian).and_then(|r| ext_power(3, &r)),
        "sp6R_V14" => sp(6, Field::Rational).and_then(|r| ext_power_primitive(3, &r)),
        "sp6C_V14" => sp(6, Field::Gaussian).and_then(|r| ext_power_primitive(3, &r)),
        "spin7_sl2C" => sl(2, Field::Gaussian).and_then(|a| spin7().and_then(|b| tensor_product(&a, &b))),
        "spin12C" => spin12_half(),
        other => return Err(format!("unknown builder `{other}`")),
    };
    rep.map_err(|e| e.to_string())
}

// ---------------------------------------------------------------------------
// Report types.

/// Outcome class of a verified catalog row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

/// One comparison performed while verifying a row.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

/// The verification outcome for one catalog row: the sizes that were
/// instantiated, every check that ran, and the resulting status.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RowResult {
    pub table: u8,
    pub row: String,
    pub sizes: Vec<String>,
    pub checks: Vec<CheckResult>,
    pub status: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// A full verification run over a set of tables: one [`RowResult`] per
/// catalog row of every requested table, in table order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    /// Seconds since the Unix epoch; the only nondeterministic field.
    pub generated_at: u64,
    pub tables: Vec<u8>,
    pub max_size: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub rows: Vec<RowResult>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// Human-readable aligned text table with a summary line.
    pub fn text(&self) -> String {
        let headers = ["table", "row", "sizes", "checks", "status", "note"];
        let mut cells: Vec<[String; 6]> = Vec::with_capacity(self.rows.len());
        for r in &self.rows {
            let ok = r.checks.iter().filter(|c| c.pass).count();
            let status = match r.status {
                Verdict::Pass => "pass",
                Verdict::Fail => "fail",
                Verdict::Skipped => "skipped",
            };
            cells.push([
                r.table.to_string(),
                r.row.clone(),
                if r.sizes.is_empty() {
                    "-".into()
                } else {
                    r.sizes.join("; ")
                },
                format!("{ok}/{}", r.checks.len()),
                status.into(),
                r.note.clone().unwrap_or_else(|| "-".into()),
            ]);
        }
        let mut widths = headers.map(str::len);
        for row in &cells {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.len());
            }
        }
        let mut out = String::new();
        let emit = |out: &mut String, row: &[String; 6]| {
            for (i, (w, c)) in widths.iter().zip(row).enumerate() {
                if i > 0 {
                    out.push_str("  ");
                }
                out.push_str(c);
                out.extend(std::iter::repeat(' ').take(w - c.len()));
            }
            while out.ends_with(' ') {
                out.pop();
            }
            out.push('\n');
        };
        emit(&mut out, &headers.map(String::from));
        for row in &cells {
            emit(&mut out, row);
        }
        out.push_str(&format!(
            "{} passed, {} failed, {} skipped (max size {})\n",
            self.passed, self.failed, self.skipped, self.max_size
        ));
        out
    }
}

fn status_of(checks: &[CheckResult]) -> Verdict {
    if checks.iter().any(|c| !c.pass) {
        Verdict::Fail
    } else if checks.is_empty() {
        Verdict::Skipped
    } else {
        Verdict::Pass
    }
}

// ---------------------------------------------------------------------------
// Verification per table group.

fn render_label(params: &[String], vars: &BTreeMap<String, i64>) -> String {
    if params.is_empty() {
        "fixed".into()
    } else {
        params
            .iter()
            .map(|p| format!("{p}={}", vars.get(p).copied().unwrap_or(0)))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

fn check_dim(name: String, expected: i64, got: Result<i64, String>) -> CheckResult {
    match got {
        Ok(v) => CheckResult {
            check: name,
            expected: expected.to_string(),
            got: v.to_string(),
            pass: v == expected,
        },
        Err(e) => CheckResult {
            check: name,
            expected: expected.to_string(),
            got: format!("error: {e}"),
            pass: false,
        },
    }
}

fn super_row(table: u8, group: &str, row: &CatalogRow) -> RowResult {
    let real_units = group == "super-real";
    let mut checks = Vec::new();
    let mut sizes = Vec::new();
    for inst in &row.instances {
        let vars = match inst {
            RowInstance::Params(m) => m.clone(),
            RowInstance::Berger(_) => BTreeMap::new(),
        };
        let label = render_label(&row.params, &vars);
        sizes.push(label.clone());
        let expected = row
            .family
            .as_deref()
            .ok_or_else(|| "row lists no family".to_string())
            .and_then(|fam| {
                let mut parent = BTreeMap::new();
                for (k, e) in &row.parent_params {
                    parent.insert(k.clone(), eval_expr(e, &vars)?);
                }
                family_dims(fam, &parent)
            });
        let (even_exp, odd_exp) = match expected {
            Ok(pair) => pair,
            Err(e) => {
                checks.push(CheckResult {
                    check: format!("{label}: family dimensions"),
                    expected: "closed formula".into(),
                    got: format!("error: {e}"),
                    pass: false,
                });
                continue;
            }
        };
        let even_got = row
            .even
            .as_ref()
            .ok_or_else(|| "row lists no even part".to_string())
            .and_then(|d| {
                d.parts
                    .iter()
                    .map(|p| part_dim(p, &vars))
                    .sum::<Result<i64, String>>()
            });
        checks.push(check_dim(format!("{label}: even dim"), even_exp, even_got));
        let odd_got = row
            .odd
            .as_ref()
            .ok_or_else(|| "row lists no odd module".to_string())
            .and_then(|d| {
                let mut total = module_dim(d, real_units, &vars)?;
                if let Some(minus) = &row.odd_minus {
                    total += module_dim(minus, real_units, &vars)?;
                }
                Ok(total)
            });
        checks.push(check_dim(format!("{label}: odd dim"), odd_exp, odd_got));
    }
    let status = status_of(&checks);
    RowResult {
        table,
        row: row.id.clone(),
        sizes,
        checks,
        status,
        note: row
            .ambiguous
            .then(|| "descriptor ambiguous; both readings are recorded in the table notes".into()),
    }
}

fn prolong_row(table: u8, row: &CatalogRow, entries: &[TableRow]) -> RowResult {
    let names: Vec<&str> = row
        .registry
        .as_ref()
        .map(|v| v.iter().map(String::as_str).collect())
        .unwrap_or_default();
    let mut checks = Vec::new();
    let mut sizes = Vec::new();
    let mut notes = Vec::new();
    for name in &names {
        for e in entries.iter().filter(|e| e.row == *name) {
            match e.status() {
                RowStatus::Skipped => {
                    if let Some(n) = &e.note {
                        if !notes.contains(n) {
                            notes.push(n.clone());
                        }
                    }
                }
                _ => {
                    let n = e.n.map(|s| s.to_string()).unwrap_or_default();
                    if !sizes.contains(&n) {
                        sizes.push(n.clone());
                    }
                    checks.push(CheckResult {
                        check: format!("{name}, n={n}, order {}", e.order.unwrap_or(0)),
                        expected: e.expected.map(|v| v.to_string()).unwrap_or_default(),
                        got: e.got.map(|v| v.to_string()).unwrap_or_default(),
                        pass: e.pass == Some(true),
                    });
                }
            }
        }
    }
    let status = status_of(&checks);
    let note = if checks.is_empty() {
        if notes.is_empty() {
            Some("no admissible size within the bound".into())
        } else {
            Some(notes.join("; "))
        }
    } else {
        None
    };
    RowResult {
        table,
        row: row.id.clone(),
        sizes,
        checks,
        status,
        note,
    }
}

fn berger_instance_label(inst: &BergerInstance) -> String {
    if inst.label.is_empty() {
        format!("dimV={}", inst.measure)
    } else {
        inst.label.clone()
    }
}

fn bool_check(name: String, expected: bool, got: bool) -> CheckResult {
    CheckResult {
        check: name,
        expected: expected.to_string(),
        got: got.to_string(),
        pass: expected == got,
    }
}

fn berger_checks(
    inst: &BergerInstance,
    claim: Option<&Claim>,
    outcome: &Result<CurvatureReport, String>,
) -> Vec<CheckResult> {
    let label = berger_instance_label(inst);
    let report = match outcome {
        Ok(r) => r,
        Err(e) => {
            return vec![CheckResult {
                check: format!("{label}: construction"),
                expected: "a representation".into(),
                got: format!("error: {e}"),
                pass: false,
            }]
        }
    };
    let mut checks = Vec::new();
    if let Some(frozen) = &inst.computed {
        checks.push(check_dim(
            format!("{label}: curvature dim"),
            frozen.curvature_dim as i64,
            Ok(report.curvature_dim as i64),
        ));
        checks.push(check_dim(
            format!("{label}: derivative dim"),
            frozen.derivative_dim as i64,
            Ok(report.derivative_dim as i64),
        ));
        checks.push(bool_check(
            format!("{label}: skew-berger flag"),
            frozen.is_skew_berger,
            report.is_skew_berger,
        ));
        checks.push(bool_check(
            format!("{label}: symmetric flag"),
            frozen.is_symmetric,
            report.is_symmetric,
        ));
    }
    if let Some(claim) = claim {
        if let Some(b) = claim.is_skew_berger {
            checks.push(bool_check(
                format!("{label}: claim is_skew_berger"),
                b,
                report.is_skew_berger,
            ));
        }
        if let Some(b) = claim.is_symmetric {
            checks.push(bool_check(
                format!("{label}: claim is_symmetric"),
                b,
                report.is_symmetric,
            ));
        }
        if let Some(d) = claim.curvature_dim {
            checks.push(check_dim(
                format!("{label}: claim curvature dim"),
                d as i64,
                Ok(report.curvature_dim as i64),
            ));
        }
    }
    checks
}

fn berger_rows(table: u8, rows: &[CatalogRow], max_size: usize) -> Vec<RowResult> {
    use rayon::prelude::*;

    let mut tasks: Vec<(usize, usize)> = Vec::new();
    for (ri, row) in rows.iter().enumerate() {
        if row.builder.is_none() || !row.constructible {
            continue;
        }
        for (ii, inst) in row.instances.iter().enumerate() {
            if let RowInstance::Berger(b) = inst {
                if b.measure <= max_size {
                    tasks.push((ri, ii));
                }
            }
        }
    }
    // Run the expensive curvature tests in parallel, then assemble the
    // report sequentially so the output does not depend on thread count.
    let outcomes: BTreeMap<(usize, usize), Result<CurvatureReport, String>> = tasks
        .par_iter()
        .map(|&(ri, ii)| {
            let row = &rows[ri];
            let inst = match &row.instances[ii] {
                RowInstance::Berger(b) => b,
                RowInstance::Params(_) => unreachable!("gated tasks are berger instances"),
            };
            let builder = row.builder.as_deref().expect("gated tasks have a builder");
            let outcome =
                build_rep(builder, &inst.args).and_then(|rep| skew_berger_test(&rep).map_err(|e| e.to_string()));
            ((ri, ii), outcome)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect();

    rows.iter()
        .enumerate()
        .map(|(ri, row)| {
            if row.builder.is_none() || !row.constructible {
                return RowResult {
                    table,
                    row: row.id.clone(),
                    sizes: Vec::new(),
                    checks: Vec::new(),
                    status: Verdict::Skipped,
                    note: Some(
                        "catalog-only row: no exact-arithmetic construction is available, so the recorded claim is not machine-checked"
                            .into(),
                    ),
                };
            }
            let mut checks = Vec::new();
            let mut sizes = Vec::new();
            let mut gated: Vec<String> = Vec::new();
            for (ii, inst) in row.instances.iter().enumerate() {
                let b = match inst {
                    RowInstance::Berger(b) => b,
                    RowInstance::Params(_) => continue,
                };
                if b.measure <= max_size {
                    sizes.push(berger_instance_label(b));
                    let outcome = &outcomes[&(ri, ii)];
                    checks.extend(berger_checks(b, row.claim.as_ref(), outcome));
                } else {
                    gated.push(format!("{} (needs bound {})", berger_instance_label(b), b.measure));
                }
            }
            let status = status_of(&checks);
            let note = if !gated.is_empty() {
                Some(format!("size-gated instances omitted: {}", gated.join(", ")))
            } else {
                None
            };
            RowResult {
                table,
                row: row.id.clone(),
                sizes,
                checks,
                status,
                note,
            }
        })
        .collect()
}

/// Verifies the requested tables up to `max_size` and reports one row
/// result per catalog row.  Numbers outside `1..=8` are ignored; the
/// meaning of `max_size` depends on the table group (see the module
/// documentation).
pub fn verify(requested: &[u8], max_size: usize) -> VerificationReport {
    let mut wanted: Vec<u8> = requested
        .iter()
        .copied()
        .filter(|t| (1..=8).contains(t))
        .collect();
    wanted.sort_unstable();
    wanted.dedup();

    let prolong_report = wanted
        .iter()
        .any(|&t| t == 5 || t == 6)
        .then(|| verify_prolongation_table(max_size));

    let mut rows = Vec::new();
    for &t in &wanted {
        let file = catalog_table(t).expect("tables 1..=8 are embedded");
        match file.group.as_str() {
            "super-complex" | "super-real" => {
                rows.extend(file.rows.iter().map(|r| super_row(t, &file.group, r)));
            }
            "prolongation" => {
                let entries: Vec<TableRow> = prolong_report
                    .as_ref()
                    .expect("prolongation report is built when tables 5-6 are requested")
                    .rows()
                    .iter()
                    .filter(|e| e.table == t)
                    .cloned()
                    .collect();
                rows.extend(file.rows.iter().map(|r| prolong_row(t, r, &entries)));
            }
            "berger" => rows.extend(berger_rows(t, &file.rows, max_size)),
            other => unreachable!("unknown table group `{other}`"),
        }
    }

    let passed = rows.iter().filter(|r| r.status == Verdict::Pass).count();
    let failed = rows.iter().filter(|r| r.status == Verdict::Fail).count();
    let skipped = rows.iter().filter(|r| r.status == Verdict::Skipped).count();
    VerificationReport {
        generated_at: std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        tables: wanted,
        max_size,
        passed,
        failed,
        skipped,
        rows,
    }
}

/// Like [`verify`], but runs inside a dedicated pool of `jobs` worker
/// threads.  The report is identical to the serial one.
pub fn verify_with_jobs(
    requested: &[u8],
    max_size: usize,
    jobs: Option<usize>,
) -> VerificationReport {
    match jobs {
        None | Some(0) => verify(requested, max_size),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map(|pool| pool.install(|| verify(requested, max_size)))
            .unwrap_or_else(|_| verify(requested, max_size)),
    }
}

// ---------------------------------------------------------------------------
// Descriptor parsing for the command-line front end.

/// Families the command line can instantiate directly.
pub const SUPPORTED_FAMILIES: &[&str] = &[
    "gl",
    "sl",
    "so",
    "so-split",
    "so-star",
    "sp",
    "spin12half",
    "spin7",
    "su",
    "u",
];

/// Module descriptors the command line can apply to a family.
pub const SUPPORTED_DESCRIPTORS: &[&str] = &[
    "standard",
    "dual",
    "adjoint",
    "sym2",
    "ext2",
    "ext3",
    "ext3-primitive",
];

/// Errors from catalog lookups and command-line descriptor parsing.
#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Liealg(#[from] LiealgError),
}

/// Parses a table selection such as `"3"`, `"1-4"`, or `"1,3,7-8"` into a
/// sorted list of table numbers.
pub fn parse_tables(spec: &str) -> Result<Vec<u8>, CatalogError> {
    let mut out = Vec::new();
    for token in spec.split(',') {
        let token = token.trim();
        if token.is_empty() {
            return Err(CatalogError::Usage(format!(
                "empty entry in table selection `{spec}`"
            )));
        }
        let parse_one = |s: &str| -> Result<u8, CatalogError> {
            let v: u8 = s
                .parse()
                .map_err(|_| CatalogError::Usage(format!("`{s}` is not a table number")))?;
            if (1..=8).contains(&v) {
                Ok(v)
            } else {
                Err(CatalogError::Usage(format!(
                    "table {v} does not exist; choose from 1-8"
                )))
            }
        };
        match token.split_once('-') {
            Some((a, b)) => {
                let (a, b) = (parse_one(a.trim())?, parse_one(b.trim())?);
                if a > b {
                    return Err(CatalogError::Usage(format!("range `{token}` is reversed")));
                }
                out.extend(a..=b);
            }
            None => out.push(parse_one(token)?),
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn adjoin_center(rep: &MatrixRep) -> Result<MatrixRep, LiealgError> {
    // Scalars rescale any invariant form, so the extended algebra has none.
    let mut stripped = rep.clone();
    stripped.set_form(None);
    add_center(&stripped, Mat::identity(rep.dim_v()), "center")
}

/// Builds the representation named on the command line: a family at size
/// `n` (with an optional signature `(p, q)` where the family admits one),
/// a derived module descriptor, and optionally an adjoined center acting
/// as the identity on the derived module.
pub fn build_cli_rep(
    family: &str,
    n: usize,
    p: Option<usize>,
    q: Option<usize>,
    center: bool,
    descriptor: &str,
) -> Result<MatrixRep, CatalogError> {
    let signature = match (p, q) {
        (None, None) => None,
        (Some(p), Some(q)) => {
            if p + q != n {
                return Err(CatalogError::Usage(format!(
                    "signature ({p},{q}) does not sum to n={n}"
                )));
            }
            Some((p, q))
        }
        _ => {
            return Err(CatalogError::Usage(
                "--p and --q must be given together".into(),
            ))
        }
    };
    let takes_signature = matches!(family, "so" | "su" | "u");
    if signature.is_some() && !takes_signature {
        return Err(CatalogError::Usage(format!(
            "family `{family}` does not take a signature"
        )));
    }
    let (p, q) = signature.unwrap_or((n, 0));
    let base = match family {
        "gl" => gl(n, Field::Gaussian)?,
        "sl" => sl(n, Field::Gaussian)?,
        "so" => so_pq(p, q)?,
        "so-split" => so_split(n, Field::Gaussian)?,
        "so-star" => so_star(n)?,
        "sp" => sp(n, Field::Gaussian)?,
        "su" => su_pq(p, q)?,
        "u" => u_pq(p, q)?,
        "spin7" => {
            if n != 7 {
                return Err(CatalogError::Usage("family `spin7` takes --n 7".into()));
            }
            spin7()?
        }
        "spin12half" => {
            if n != 12 {
                return Err(CatalogError::Usage(
                    "family `spin12half` takes --n 12".into(),
                ));
            }
            spin12_half()?
        }
        other => {
            return Err(CatalogError::Usage(format!(
                "unknown family `{other}`; supported families: {}",
                SUPPORTED_FAMILIES.join(", ")
            )))
        }
    };
    let derived = match descriptor {
        "standard" => base,
        "dual" => dual(&base),
        "adjoint" => adjoint(&base)?,
        "sym2" => sym_power2(&base),
        "ext2" => ext_power(2, &base)?,
        "ext3" => ext_power(3, &base)?,
        "ext3-primitive" => ext_power_primitive(3, &base)?,
        other => {
            return Err(CatalogError::Usage(format!(
                "unknown module descriptor `{other}`; supported descriptors: {}",
                SUPPORTED_DESCRIPTORS.join(", ")
            )))
        }
    };
    if center {
        Ok(adjoin_center(&derived)?)
    } else {
        Ok(derived)
    }
}
