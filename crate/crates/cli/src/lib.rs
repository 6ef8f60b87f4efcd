//! Report builders behind the `artin-malcev` binary.
//!
//! Every command produces a [`Report`]: the inputs, the computed results and a
//! set of named cross-checks. Reports serialize with sorted keys, so identical
//! inputs give byte-identical output.

use std::collections::BTreeMap;
use std::fmt::{Display, Write as _};
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use artin_malcev::coxeter::CoxeterGraph;
use artin_malcev::crg::{self, ExceptionalTable, ReflectionGroupSpec};
use artin_malcev::dlhomology::{self, DlError};
use artin_malcev::fpnilq::{self, AbelianGroup, CollectionOrder, IntegerMatrix};
use artin_malcev::pclie::{
    self, bch, count_traces_bfs, CommutationGraph, PcError, PhiMap, TruncatedSeries,
};
use artin_malcev::word::GroupPresentation;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "artin-malcev", version, about = "Lower central quotients and Malcev completions of Artin and complex braid groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Add wall-clock time to the report (makes output non-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Odd partition, gr1/gr2, quotient RAAG and relator checks for a Coxeter graph file.
    Artin {
        path: PathBuf,
        #[arg(long, default_value_t = 8)]
        degree: usize,
    },
    /// Homological computation of gr2 for the dihedral Artin group with even label e.
    Dihedral { e: u32 },
    /// gr1 and gr2 of a finitely presented group.
    Nilq { path: PathBuf },
    /// Orbit count and completion descriptor of a complex reflection group, e.g. "G(4,2,2)" or "G15".
    Reflection {
        spec: String,
        /// Replacement for the bundled exceptional-group table.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Hilbert series, Lie dimensions and BCH samples for a right-angled Coxeter graph file.
    Raag {
        path: PathBuf,
        #[arg(long, default_value_t = 8)]
        degree: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: &'static str,
    pub inputs: Value,
    pub results: Value,
    pub checks: BTreeMap<String, bool>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.values().all(|&ok| ok)
    }

    pub fn to_value(&self, timing_ms: Option<f64>) -> Value {
        let mut v = json!({
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "checks": self.checks,
            "passed": self.passed(),
        });
        if let Some(ms) = timing_ms {
            v["timing_ms"] = json!(ms);
        }
        v
    }
}

/// Input errors: unreadable files, parse failures, invalid parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError(pub String);

impl Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn input_err(context: impl Display, e: impl Display) -> InputError {
    InputError(format!("{context}: {e}"))
}

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| input_err(path.display(), e))
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report values serialize")
}

/// Integers as JSON numbers when they fit in `i64`, strings otherwise.
fn int(x: &impl Display) -> Value {
    let s = x.to_string();
    s.parse::<i64>().map(Value::from).unwrap_or(Value::String(s))
}

fn ints<T: Display>(xs: &[T]) -> Value {
    Value::Array(xs.iter().map(int).collect())
}

fn graph_json(g: &CommutationGraph) -> Value {
    let edges: Vec<[&str; 2]> = g
        .edges()
        .into_iter()
        .map(|(a, b)| [g.vertices()[a].as_str(), g.vertices()[b].as_str()])
        .collect();
    json!({ "vertices": g.vertices(), "edges": edges })
}

fn nilq_json(q: &fpnilq::LowerCentralQuotients) -> Value {
    json!({
        "gr1": to_json(&q.gr1),
        "gr2": to_json(&q.gr2),
        "gr2_tensor_q_vanishes": q.gr2.free_rank == 0,
    })
}

pub fn artin_report(path: &Path, text: &str, degree: usize) -> Result<Report, InputError> {
    let g = CoxeterGraph::parse(text).map_err(|e| input_err(path.display(), e))?;
    let partition = g.odd_partition();
    let r = partition.len();
    let quotient = g.quotient_graph();
    let raag = CommutationGraph::from_coxeter(&quotient).expect("quotient graph is right-angled");
    let presentation = g.artin_presentation();
    let q = fpnilq::gr2(&presentation);
    let dims = pclie::lie_dimensions(&raag, degree).expect("clique polynomial of a graph");

    let phi = PhiMap::new(&g, degree).expect("quotient graph is right-angled");
    let mut relator_checks = Vec::new();
    let mut all_relators_trivial = true;
    for (s, t, label) in g.pairs() {
        let Some(m) = label.finite() else { continue };
        let image = phi
            .image(&CoxeterGraph::braid_relator(s, t, m))
            .expect("relator letters are generators");
        all_relators_trivial &= image.is_one();
        relator_checks.push(json!({
            "pair": [g.vertices()[s], g.vertices()[t]],
            "label": m,
            "maps_to_one": image.is_one(),
        }));
    }

    let d2 = dims.get(1).map(|d| d.to_string());
    let mut checks = BTreeMap::new();
    checks.insert("gr1_is_free_of_rank_r".into(), q.gr1 == AbelianGroup::free(r));
    checks.insert("lie_d1_equals_r".into(), degree < 1 || dims[0].to_string() == r.to_string());
    checks.insert(
        "gr2_rank_equals_lie_d2".into(),
        d2.is_none_or(|d| d == q.gr2.free_rank.to_string()),
    );
    checks.insert("relators_map_to_one".into(), all_relators_trivial);

    let verdict = if q.gr2.free_rank == 0 {
        "gr2 ⊗ Q = 0"
    } else {
        "gr2 ⊗ Q ≠ 0"
    };
    Ok(Report {
        command: "artin",
        inputs: json!({ "path": path.display().to_string(), "degree": degree, "graph": to_json(&g) }),
        results: json!({
            "odd_partition": partition.labelled_blocks(&g),
            "r": r,
            "quotient_graph": to_json(&quotient),
            "descriptor": graph_json(&raag),
            "nilq": nilq_json(&q),
            "verdict": verdict,
            "lie_dimensions": ints(&dims),
            "relators": relator_checks,
        }),
        checks,
    })
}

pub fn dihedral_report(e: u32) -> Result<Report, InputError> {
    let s = dlhomology::dihedral_summary(e).map_err(|err| match err {
        DlError::InvalidLabel(_) => InputError(format!("dihedral label must be even and at least 2, got {e}")),
        other => InputError(other.to_string()),
    })?;
    let mut checks = BTreeMap::new();
    checks.insert("d1_d2_zero".into(), s.identities.d1_d2_zero);
    checks.insert("augmentation_d1_zero".into(), s.identities.augmentation_d1_zero);
    checks.insert("chain_map_degree1".into(), s.identities.chain_map_degree1);
    checks.insert("chain_map_degree2".into(), s.identities.chain_map_degree2);
    checks.insert("homology_z_z2_z".into(), s.expected_homology());
    checks.insert(
        "h2_map_is_half_e".into(),
        s.h2_map == IntegerMatrix::from_rows(&[vec![e / 2]]),
    );
    checks.insert("agrees_with_nilq".into(), s.agrees());
    Ok(Report {
        command: "dihedral",
        inputs: json!({ "e": e }),
        results: to_json(&s),
        checks,
    })
}

pub fn nilq_report(path: &Path, text: &str) -> Result<Report, InputError> {
    let p = GroupPresentation::parse(text).map_err(|e| input_err(path.display(), e))?;
    let q = fpnilq::gr2(&p);
    let mirrored = fpnilq::gr2_with_order(&p, CollectionOrder::Descending);
    let mut checks = BTreeMap::new();
    checks.insert("collection_order_independent".into(), q == mirrored);
    Ok(Report {
        command: "nilq",
        inputs: json!({
            "path": path.display().to_string(),
            "generators": p.labels(),
            "relators": p.relators().iter().map(|r| p.format_word(r)).collect::<Vec<_>>(),
        }),
        results: nilq_json(&q),
        checks,
    })
}

pub fn reflection_report(spec_text: &str, table: Option<(&Path, &str)>) -> Result<Report, InputError> {
    let spec: ReflectionGroupSpec = spec_text.parse().map_err(|e| InputError(format!("{e}")))?;
    let table_source = table.map_or_else(|| "builtin".to_owned(), |(p, _)| p.display().to_string());
    let table = match table {
        Some((path, text)) => ExceptionalTable::parse(text).map_err(|e| input_err(path.display(), e))?,
        None => ExceptionalTable::builtin(),
    };
    let cl = crg::classify(&spec, &table).map_err(|e| InputError(e.to_string()))?;
    let dims = pclie::lie_dimensions(&cl.descriptor.graph, 2).expect("descriptor graph");
    let mut checks = BTreeMap::new();
    checks.insert("c_at_most_3".into(), cl.c <= 3);
    checks.insert("c3_only_in_rank_2".into(), cl.c != 3 || cl.rank == 2);
    checks.insert("ab_rank_equals_lie_d1".into(), dims[0].to_string() == cl.ab.free_rank.to_string());
    if cl.orbit_sizes.is_some() {
        checks.insert("closed_form_matches_orbits".into(), cl.oracle_agrees());
    }
    Ok(Report {
        command: "reflection",
        inputs: json!({
            "spec": spec_text,
            "table": table_source,
        }),
        results: json!({
            "group": spec.to_string(),
            "c": cl.c,
            "rank": cl.rank,
            "provenance": to_json(&cl.provenance),
            "ab": to_json(&cl.ab),
            "descriptor": to_json(&cl.descriptor),
            "orbit_sizes": cl.orbit_sizes,
            "lie_dimensions": ints(&dims),
        }),
        checks,
    })
}

/// Largest `n` with `|V|^n` small enough to enumerate words.
fn enumerable_length(vertices: usize, degree: usize) -> usize {
    let mut n = 0;
    while n < degree && (vertices as f64).powi(n as i32 + 1) <= 1e6 {
        n += 1;
    }
    n
}

pub fn raag_report(path: &Path, text: &str, degree: usize) -> Result<Report, InputError> {
    let g = CoxeterGraph::parse(text).map_err(|e| input_err(path.display(), e))?;
    let raag = CommutationGraph::from_coxeter(&g).map_err(|e| input_err(path.display(), e))?;
    let h = pclie::hilbert_series(&raag, degree);
    let dims = pclie::lie_dimensions(&raag, degree).map_err(|e| InputError(e.to_string()))?;
    let arc = Arc::new(raag.clone());

    let enumerable = enumerable_length(raag.len(), degree);
    let mut counts_match = true;
    for (n, hn) in h.iter().enumerate().take(enumerable + 1) {
        let bfs = count_traces_bfs(&raag, n).expect("within enumeration bound");
        counts_match &= hn.to_string() == bfs.to_string();
    }
    let mut clique = raag.clique_polynomial();
    clique.resize(degree + 1, Default::default());
    let witt_ok = pclie::witt_product(&dims, degree) == clique;

    let series_err = |e: PcError| InputError(e.to_string());
    let shown = degree.min(4);
    let sample: Vec<usize> = (0..raag.len().min(3)).collect();
    let mut bch_samples = Vec::new();
    let mut grouplike_ok = true;
    for &s in &sample {
        let xs = TruncatedSeries::generator(arc.clone(), degree, s).map_err(series_err)?;
        grouplike_ok &= xs.exp().map_err(series_err)?.is_grouplike();
        for &t in sample.iter().filter(|&&t| t > s) {
            let xt = TruncatedSeries::generator(arc.clone(), degree, t).map_err(series_err)?;
            let prod = xs.exp().and_then(|a| a.try_mul(&xt.exp()?)).map_err(series_err)?;
            grouplike_ok &= prod.is_grouplike();
            grouplike_ok &= prod.log().map_err(series_err)?.is_primitive();
            let xs_low = TruncatedSeries::generator(arc.clone(), shown, s).map_err(series_err)?;
            let xt_low = TruncatedSeries::generator(arc.clone(), shown, t).map_err(series_err)?;
            let z = bch(&xs_low, &xt_low).map_err(series_err)?;
            bch_samples.push(json!({
                "pair": [raag.vertices()[s], raag.vertices()[t]],
                "degree": shown,
                "series": z.to_string(),
            }));
        }
    }

    let mut checks = BTreeMap::new();
    checks.insert("hilbert_matches_trace_counts".into(), counts_match);
    checks.insert("witt_product_is_clique_polynomial".into(), witt_ok);
    checks.insert("exponentials_grouplike".into(), grouplike_ok);
    Ok(Report {
        command: "raag",
        inputs: json!({ "path": path.display().to_string(), "degree": degree, "graph": graph_json(&raag) }),
        results: json!({
            "clique_polynomial": ints(&raag.clique_polynomial()),
            "hilbert": ints(&h),
            "lie_dimensions": ints(&dims),
            "trace_counts_checked_to": enumerable,
            "bch": bch_samples,
        }),
        checks,
    })
}

pub fn build_report(command: &Command) -> Result<Report, InputError> {
    match command {
        Command::Artin { path, degree } => artin_report(path, &read(path)?, *degree),
        Command::Dihedral { e } => dihedral_report(*e),
        Command::Nilq { path } => nilq_report(path, &read(path)?),
        Command::Reflection { spec, table } => match table {
            Some(p) => reflection_report(spec, Some((p, &read(p)?))),
            None => reflection_report(spec, None),
        },
        Command::Raag { path, degree } => raag_report(path, &read(path)?, *degree),
    }
}

/// Indented `key: value` rendering; scalars and scalar arrays stay on one line.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    render_into(&mut out, v, 0);
    out
}

fn is_inline(v: &Value) -> bool {
    match v {
        Value::Array(xs) => xs.iter().all(|x| !x.is_object() && !x.is_array() || is_inline(x)),
        Value::Object(_) => false,
        _ => true,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(xs) => format!("[{}]", xs.iter().map(inline).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn render_into(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if is_inline(x) {
                    let _ = writeln!(out, "{pad}{k}: {}", inline(x));
                } else {
                    let _ = writeln!(out, "{pad}{k}:");
                    render_into(out, x, depth + 1);
                }
            }
        }
        Value::Array(xs) => {
            for x in xs {
                if is_inline(x) {
                    let _ = writeln!(out, "{pad}- {}", inline(x));
                } else {
                    let _ = writeln!(out, "{pad}-");
                    render_into(out, x, depth + 1);
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", inline(other));
        }
    }
}

/// Formats a finished report; failed checks turn the exit code into [`EXIT_INVARIANT`].
pub fn emit(report: &Report, format: Format, timing_ms: Option<f64>) -> (String, String, i32) {
    let value = report.to_value(timing_ms);
    let text = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&value).expect("json");
            s.push('\n');
            s
        }
        Format::Text => render_text(&value),
    };
    if report.passed() {
        return (text, String::new(), EXIT_OK);
    }
    let failed: Vec<&str> = report
        .checks
        .iter()
        .filter(|(_, &ok)| !ok)
        .map(|(k, _)| k.as_str())
        .collect();
    (text, format!("error: failed checks: {}\n", failed.join(", ")), EXIT_INVARIANT)
}

/// Runs one invocation, returning stdout text, stderr text and the exit code.
pub fn run(cli: &Cli) -> (String, String, i32) {
    let start = Instant::now();
    match build_report(&cli.command) {
        Err(e) => (String::new(), format!("error: {e}\n"), EXIT_INPUT),
        Ok(report) => {
            let timing = cli.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
            emit(&report, cli.format, timing)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integers_fall_back_to_strings() {
        assert_eq!(int(&12), json!(12));
        assert_eq!(int(&"123456789012345678901234567890"), json!("123456789012345678901234567890"));
    }

    #[test]
    fn text_rendering() {
        let v = json!({"b": [1, 2], "a": {"x": "y"}, "c": [{"k": true}]});
        assert_eq!(render_text(&v), "a:\n  x: y\nb: [1, 2]\nc:\n  -\n    k: true\n");
    }

    #[test]
    fn enumeration_bound() {
        assert_eq!(enumerable_length(2, 8), 8);
        assert_eq!(enumerable_length(10, 8), 6);
        assert_eq!(enumerable_length(1, 3), 3);
    }

    #[test]
    fn report_shape() {
        let r = dihedral_report(6).unwrap();
        assert!(r.passed());
        let v = r.to_value(None);
        assert_eq!(v["results"]["gr2"]["display"], "Z/3");
        assert!(v.get("timing_ms").is_none());
        assert!(r.to_value(Some(1.5))["timing_ms"].is_number());
    }

    #[test]
    fn failed_check_exits_with_3() {
        let mut r = dihedral_report(4).unwrap();
        assert_eq!(emit(&r, Format::Json, None).2, EXIT_OK);
        r.checks.insert("forced".into(), false);
        let (out, err, code) = emit(&r, Format::Text, None);
        assert_eq!(code, EXIT_INVARIANT);
        assert!(out.contains("passed: false"));
        assert_eq!(err, "error: failed checks: forced\n");
    }

    #[test]
    fn odd_dihedral_is_input_error() {
        assert!(dihedral_report(5).is_err());
        assert!(dihedral_report(0).is_err());
    }
}
