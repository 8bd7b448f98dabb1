//! Command-line verbs and their output documents.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use matroid_minor::coalgebra::{irreducibles, r_basis, w_basis, CoalgebraError, FormalSum};
use matroid_minor::hopf::{
    class_name, disappearing_classes, iso_classes, p_basis, phi_matrix, word_of, HopfError, IsoSum,
};
use matroid_minor::weak::{weak_poset, WeakError};
use matroid_minor::{GroundSet, Matroid, MatroidError, PosetError};
use serde_json::{json, Value};
use thiserror::Error;

use crate::cache::{Cache, PosetDoc};
use crate::expr::{parse_matroid_expr, ExprError};
use crate::json::{
    format_rational, formal_sum_doc, iso_sum_doc, matrix_doc, matroid_doc, matroid_from_json,
    JsonError,
};
use crate::suite::{run_suite, SUITES};

/// Largest ground set accepted by the enumeration-backed verbs.
pub const DEFAULT_MAX_SIZE: usize = 6;

#[derive(Debug, Parser)]
#[command(name = "mmc", version, about = "Matroid-minor coalgebra and Hopf algebra computations")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Largest ground set to accept (default 6; `verify` defaults to 5).
    #[arg(long, global = true)]
    pub max_size: Option<usize>,
    /// Cache directory; overrides the MMC_CACHE_DIR environment variable.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Basis {
    W,
    R,
    P,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Order {
    W,
    R,
}

/// A target is a constructor expression such as `U(1,2;a,b)+I(c)` or a
/// matroid JSON document.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// List a rank stratum (`--size`, `--rank`) or an order filter
    /// (`--above`) with its Hasse edges.
    Enumerate {
        #[arg(long)]
        size: Option<usize>,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, conflicts_with_all = ["size", "rank"])]
        above: Option<String>,
    },
    /// Factor a matroid into irreducibles under the free product.
    Factor { target: String },
    /// Decide irreducibility, or list irreducible classes of a given size.
    Irreducible {
        #[arg(required_unless_present = "size")]
        target: Option<String>,
        #[arg(long, conflicts_with = "target")]
        size: Option<usize>,
    },
    /// Möbius values μ(M, N) on the order filter of M.
    Mobius {
        target: String,
        /// Report only μ(M, N) for this N.
        #[arg(long)]
        to: Option<String>,
        /// Whole filter (w) or its reducible part (r).
        #[arg(long, value_enum, default_value_t = Order::W)]
        order: Order,
    },
    /// Primitive element w_M, r_M, or p_M.
    Primitive {
        target: String,
        #[arg(long, value_enum, default_value_t = Basis::W)]
        basis: Basis,
        /// Also list classes whose coefficients cancel in π(r_M).
        #[arg(long)]
        cancellations: bool,
    },
    /// Chain-count matrix Φ on the classes above M, and its inverse.
    Phi { target: String },
    /// Run the verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Json(#[from] JsonError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Weak(#[from] WeakError),
    #[error(transparent)]
    Coalgebra(#[from] CoalgebraError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error("{0}")]
    Usage(String),
}

/// Output of a verb in both formats, with its exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub json: Value,
    pub text: String,
    pub exit_code: i32,
}

impl Document {
    fn ok(json: Value, text: String) -> Self {
        Document {
            json,
            text,
            exit_code: 0,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.json).expect("serializable") + "\n",
            Format::Text => self.text.clone(),
        }
    }
}

pub fn parse_target(text: &str) -> Result<Matroid, CliError> {
    if text.trim_start().starts_with('{') {
        Ok(matroid_from_json(text)?)
    } else {
        Ok(parse_matroid_expr(text)?)
    }
}

fn check_size(n: usize, max: usize) -> Result<(), CliError> {
    if n > max {
        Err(CliError::Usage(format!("ground set of size {n} exceeds --max-size {max}")))
    } else {
        Ok(())
    }
}

fn target_within(text: &str, max: usize) -> Result<Matroid, CliError> {
    let m = parse_target(text)?;
    check_size(m.size(), max)?;
    Ok(m)
}

pub fn run(cli: &Cli) -> Result<Document, CliError> {
    let max = cli.max_size.unwrap_or(DEFAULT_MAX_SIZE).min(DEFAULT_MAX_SIZE);
    let cache = Cache::from_env(cli.cache_dir.clone());
    match &cli.command {
        Command::Enumerate { size, rank, above } => enumerate(&cache, *size, *rank, above.as_deref(), max),
        Command::Factor { target } => factor(&parse_target(target)?),
        Command::Irreducible { target, size } => match (target, size) {
            (Some(t), _) => irreducible(&parse_target(t)?),
            (None, Some(n)) => {
                check_size(*n, max)?;
                irreducible_census(*n)
            }
            (None, None) => Err(CliError::Usage("give a target or --size".into())),
        },
        Command::Mobius { target, to, order } => {
            let m = target_within(target, max)?;
            let to = to.as_deref().map(parse_target).transpose()?;
            mobius(&cache, &m, to.as_ref(), *order)
        }
        Command::Primitive {
            target,
            basis,
            cancellations,
        } => primitive(&target_within(target, max)?, *basis, *cancellations),
        Command::Phi { target } => phi(&target_within(target, max)?),
        Command::Verify { suite } => verify(suite, cli.max_size.unwrap_or(5)),
    }
}

fn poset_text(doc: &PosetDoc) -> String {
    let mut out = format!("size {} rank {}: {} matroids\n", doc.size, doc.rank, doc.matroids.len());
    for (i, m) in doc.matroids.iter().enumerate() {
        let bases: Vec<String> = m.bases.iter().map(|b| format!("{{{}}}", b.join(","))).collect();
        let _ = writeln!(out, "{i:>5}  {}", bases.join(" "));
    }
    let edges: Vec<String> = doc.hasse.iter().map(|(a, b)| format!("{a}<{b}")).collect();
    let _ = writeln!(out, "hasse: {}", edges.join(" "));
    out
}

fn enumerate(
    cache: &Cache,
    size: Option<usize>,
    rank: Option<usize>,
    above: Option<&str>,
    max: usize,
) -> Result<Document, CliError> {
    if let Some(t) = above {
        let m = target_within(t, max)?;
        let (doc, _) = cache.filter(&m)?;
        let text = poset_text(&doc);
        return Ok(Document::ok(serde_json::to_value(&doc).expect("serializable"), text));
    }
    let n = size.ok_or_else(|| CliError::Usage("give --size or --above".into()))?;
    check_size(n, max)?;
    let ranks: Vec<usize> = match rank {
        Some(r) if r > n => return Err(CliError::Usage(format!("rank {r} exceeds size {n}"))),
        Some(r) => vec![r],
        None => (0..=n).collect(),
    };
    let mut docs = Vec::new();
    let mut text = String::new();
    for r in ranks {
        let (doc, _) = cache.stratum(n, r)?;
        text += &poset_text(&doc);
        docs.push(doc);
    }
    Ok(Document::ok(json!({ "size": n, "strata": docs }), text))
}

fn factor(m: &Matroid) -> Result<Document, CliError> {
    let factors = if m.is_empty() { Vec::new() } else { m.factor()? };
    let text: String = factors.iter().map(|f| format!("{f}\n")).collect();
    let docs: Vec<_> = factors.iter().map(matroid_doc).collect();
    Ok(Document::ok(json!({ "matroid": matroid_doc(m), "factors": docs }), text))
}

fn irreducible(m: &Matroid) -> Result<Document, CliError> {
    let irr = !m.is_empty() && m.is_irreducible()?;
    Ok(Document::ok(
        json!({ "matroid": matroid_doc(m), "irreducible": irr }),
        format!("{irr}\n"),
    ))
}

fn irreducible_census(n: usize) -> Result<Document, CliError> {
    let labeled = irreducibles(&GroundSet::standard(n))?.len();
    let mut classes = Vec::new();
    for c in iso_classes(n, None)? {
        if n > 0 && c.matroid().is_irreducible()? {
            classes.push(c);
        }
    }
    let mut text = format!("size {n}: {} classes, {labeled} labeled\n", classes.len());
    for c in &classes {
        let _ = writeln!(text, "{}", c.matroid());
    }
    let docs: Vec<_> = classes.iter().map(|c| matroid_doc(c.matroid())).collect();
    Ok(Document::ok(
        json!({ "size": n, "labeled_count": labeled, "classes": docs }),
        text,
    ))
}

fn mobius(cache: &Cache, m: &Matroid, to: Option<&Matroid>, order: Order) -> Result<Document, CliError> {
    let (doc, _) = cache.filter(m)?;
    let mut elements = doc.matroids()?;
    if order == Order::R {
        let mut kept = vec![elements[0].clone()];
        for n in elements.into_iter().skip(1) {
            if !n.is_irreducible()? {
                kept.push(n);
            }
        }
        elements = kept;
    }
    let p = weak_poset(elements);
    let x = p.index_of(m).expect("filter contains its minimum");
    let targets: Vec<usize> = match to {
        Some(n) => vec![p
            .index_of(n)
            .ok_or_else(|| CliError::Usage("--to matroid is not in the filter".into()))?],
        None => (0..p.len()).collect(),
    };
    let mut values = Vec::new();
    let mut text = String::new();
    for j in targets {
        let mu = p.mobius(x, j)?;
        if mu == 0 && to.is_none() {
            continue;
        }
        let _ = writeln!(text, "{mu:>6}  {}", p.element(j));
        values.push(json!({ "matroid": matroid_doc(p.element(j)), "mu": mu }));
    }
    Ok(Document::ok(json!({ "minimum": matroid_doc(m), "values": values }), text))
}

fn sum_text(x: &FormalSum) -> String {
    x.iter().map(|(m, c)| format!("{:>8}  {m}\n", c.to_string())).collect()
}

fn iso_text(x: &IsoSum) -> String {
    x.iter()
        .map(|(k, c)| format!("{:>8}  {}  {}\n", c.to_string(), word_of(k), k.matroid()))
        .collect()
}

fn primitive(m: &Matroid, basis: Basis, cancellations: bool) -> Result<Document, CliError> {
    let (terms, mut text) = match basis {
        Basis::W => {
            let w = w_basis(m)?;
            (serde_json::to_value(formal_sum_doc(&w)), sum_text(&w))
        }
        Basis::R => {
            let r = r_basis(m)?;
            (serde_json::to_value(formal_sum_doc(&r)), sum_text(&r))
        }
        Basis::P => {
            let p = p_basis(m)?;
            (serde_json::to_value(iso_sum_doc(&p)), iso_text(&p))
        }
    };
    let mut doc = json!({ "matroid": matroid_doc(m), "terms": terms.expect("serializable") });
    if cancellations {
        let cs = disappearing_classes(m)?;
        let _ = writeln!(text, "cancelling classes: {}", cs.len());
        for c in &cs {
            let _ = writeln!(text, "  {}", c.matroid());
        }
        doc["cancellations"] = Value::Array(cs.iter().map(|c| serde_json::to_value(matroid_doc(c.matroid())).expect("serializable")).collect());
    }
    Ok(Document::ok(doc, text))
}

fn phi(m: &Matroid) -> Result<Document, CliError> {
    let pm = phi_matrix(m)?;
    let mut text = String::new();
    for (i, c) in pm.classes.iter().enumerate() {
        let _ = writeln!(text, "e{}  {}  {}", i + 1, word_of(c), class_name(c));
    }
    for (title, mat) in [("phi", &pm.phi), ("phi_inv", &pm.phi_inv)] {
        let cells: Vec<Vec<String>> = mat
            .to_rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        let _ = writeln!(text, "{title}:");
        for row in &cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            let _ = writeln!(text, "  {}", line.join(" "));
        }
    }
    let p: Vec<String> = pm.phi_inv.row(0).iter().map(format_rational).collect();
    let _ = writeln!(text, "p_M: {}", p.join(" "));
    Ok(Document::ok(serde_json::to_value(matrix_doc(&pm)).expect("serializable"), text))
}

fn verify(suite: &str, max_size: usize) -> Result<Document, CliError> {
    let results = run_suite(suite, max_size).ok_or_else(|| {
        CliError::Usage(format!("unknown suite '{suite}'; expected one of {}", SUITES.join(", ")))
    })?;
    let passed = results.iter().all(|r| r.passed);
    let mut text = String::new();
    for r in &results {
        let status = if r.passed { "pass" } else { "FAIL" };
        let _ = write!(text, "{status}  {:<10} {:<48} {:>7} cases {:>7} ms", r.suite, r.name, r.cases, r.millis);
        if !r.passed {
            let _ = write!(text, "  {}", r.detail);
        }
        text.push('\n');
    }
    let _ = writeln!(text, "{}", if passed { "all checks passed" } else { "some checks failed" });
    Ok(Document {
        json: json!({ "suite": suite, "max_size": max_size, "passed": passed, "checks": results }),
        text,
        exit_code: if passed { 0 } else { 2 },
    })
}
