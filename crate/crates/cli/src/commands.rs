//! The subcommands. Each one turns a merged [`RunConfig`] into a report and
//! an exit status; writing the report is left to the caller.

use std::sync::Arc;

use bracket_core::group::{ArrowKind, BruhatGraph, WeylGroup};
use bracket_core::invariants::variable_names;
use bracket_core::nc::NcExpr;
use bracket_core::ops::{dunkl_family, BruhatRep, CommutingFamily, LinComb, Normalization};
use bracket_core::pieri::{pieri_check, PieriKind};
use bracket_core::quotient::{bracket_presentation, hilbert_series, Algebra, RelationList};
use bracket_core::relations::{explicit_relations, generic_relations, Mode};
use bracket_core::roots::{CoxeterType, Family};
use bracket_core::schubert::{coordinate_family, gw_constants, quantum_bgg_table, schubert_polynomials, PolyAction};
use bracket_core::verify::{run_suite, Check, Status, Suite, VerifyOptions};
use bracket_core::{MultiPoly, Scalar};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::{Format, RunConfig, TableKind};
use crate::{CliError, Exit};

pub const VERIFY_SCHEMA: &str = "bracket.verify/1";
pub const TABLE_SCHEMA: &str = "bracket.table/1";
pub const HILBERT_SCHEMA: &str = "bracket.hilbert/1";
pub const PIERI_SCHEMA: &str = "bracket.pieri/1";
pub const GRAPH_SCHEMA: &str = "bracket.graph/1";

/// A finished report: JSON, or a CSV header plus rows.
pub enum Body {
    Json(Value),
    Csv(Vec<String>, Vec<Vec<String>>),
}

pub struct Outcome {
    pub body: Body,
    pub exit: Exit,
    /// One-line human summary for standard error.
    pub summary: String,
}

impl Outcome {
    pub fn render(&self) -> Result<Vec<u8>, CliError> {
        match &self.body {
            Body::Json(v) => {
                let mut s = serde_json::to_string_pretty(v).map_err(|e| CliError::Io(e.to_string()))?;
                s.push('\n');
                Ok(s.into_bytes())
            }
            Body::Csv(header, rows) => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(header).map_err(|e| CliError::Io(e.to_string()))?;
                for r in rows {
                    w.write_record(r).map_err(|e| CliError::Io(e.to_string()))?;
                }
                w.into_inner().map_err(|e| CliError::Io(e.to_string()))
            }
        }
    }
}

fn core_err(e: bracket_core::Error) -> CliError {
    CliError::Core(e)
}

fn group(t: CoxeterType) -> Result<Arc<WeylGroup>, CliError> {
    Ok(Arc::new(WeylGroup::build(t).map_err(core_err)?))
}

fn names(v: &[String]) -> Vec<&str> {
    v.iter().map(|s| s.as_str()).collect()
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Skip => "skip",
        Status::Info => "info",
    }
}

pub fn verify(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (t, _) = cfg.validate()?;
    let suites: Vec<Suite> = if cfg.suites.is_empty() { Suite::ALL.to_vec() } else { cfg.suites.clone() };
    let opts = VerifyOptions {
        mode: cfg.mode(),
        span_degree: cfg.span_degree,
        leibniz_samples: cfg.leibniz_samples.unwrap_or(VerifyOptions::default().leibniz_samples),
        seed: cfg.seed(),
        timings: cfg.timings(),
    };
    let results: Vec<(Suite, bracket_core::Result<Vec<Check>>)> = suites.par_iter().map(|&s| (s, run_suite(t, s, &opts))).collect();
    let mut checks = Vec::new();
    let mut exit = Exit::Pass;
    for (suite, r) in results {
        match r {
            Ok(cs) => checks.extend(cs),
            Err(bracket_core::Error::Budget(why)) => {
                exit = exit.max(Exit::Budget);
                checks.push(Check {
                    suite,
                    name: "suite aborted".into(),
                    status: Status::Fail,
                    detail: format!("budget exceeded: {why}"),
                    millis: None,
                });
            }
            Err(e) => checks.push(Check {
                suite,
                name: "suite aborted".into(),
                status: Status::Fail,
                detail: e.to_string(),
                millis: None,
            }),
        }
    }
    let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
    let (pass, fail, skip, info) = (count(Status::Pass), count(Status::Fail), count(Status::Skip), count(Status::Info));
    if fail > 0 {
        exit = exit.max(Exit::Failure);
    }
    let summary = format!("{t} {}: {pass} pass, {fail} fail, {skip} skip, {info} info", mode_name(cfg.mode()));
    let body = match cfg.format() {
        Format::Json => Body::Json(json!({
            "schema": VERIFY_SCHEMA,
            "type": t.to_string(),
            "mode": cfg.mode(),
            "seed": cfg.seed(),
            "suites": suites,
            "summary": { "pass": pass, "fail": fail, "skip": skip, "info": info },
            "checks": checks,
            "failures": checks.iter().filter(|c| c.failed()).collect::<Vec<_>>(),
        })),
        Format::Csv => Body::Csv(
            ["suite", "name", "status", "detail", "millis"].map(String::from).to_vec(),
            checks
                .iter()
                .map(|c| {
                    vec![
                        c.suite.name().to_string(),
                        c.name.clone(),
                        status_name(c.status).to_string(),
                        c.detail.clone(),
                        c.millis.map(|m| m.to_string()).unwrap_or_default(),
                    ]
                })
                .collect(),
        ),
    };
    Ok(Outcome { body, exit, summary })
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Classical => "classical",
        Mode::Quantum => "quantum",
        Mode::Multiparameter => "multiparameter",
    }
}

fn lin_expr(lin: &LinComb) -> NcExpr {
    let mut e = NcExpr::zero();
    for (k, c) in lin {
        e.add_scaled(&NcExpr::gen(*k), c);
    }
    e
}

/// Table rows in a uniform shape so that both formats come from one list.
struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    extra: serde_json::Map<String, Value>,
}

impl Table {
    fn new(columns: &[&'static str]) -> Table {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
            extra: serde_json::Map::new(),
        }
    }
}

pub fn table(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (t, rs) = cfg.validate()?;
    let what = cfg.table.ok_or_else(|| CliError::Config("table needs --what".into()))?;
    let g = group(t)?;
    let nq = rs.rank();
    let dim = rs.dim();
    let q_point = cfg.q_point(nq)?;
    let spec = |p: &MultiPoly, offset: usize| -> MultiPoly {
        let fixed: Vec<(usize, Scalar)> = q_point.iter().map(|(i, v)| (offset + i, v.clone())).collect();
        p.specialize(&fixed)
    };
    let needs_quantum = matches!(what, TableKind::QuantumSchubert | TableKind::Gw);
    if needs_quantum && !t.crystallographic() {
        return Err(CliError::Config(format!("{t} has no quantum Bruhat representation")));
    }
    let mut tab;
    match what {
        TableKind::Schubert => {
            tab = Table::new(&["word", "length", "polynomial"]);
            let table = schubert_polynomials(&PolyAction::new(g.clone())).map_err(core_err)?;
            let vars = variable_names("x", dim, 0);
            for (w, p) in table.iter().enumerate() {
                tab.rows.push(vec![g.word_string(w), g.length(w).to_string(), p.format_with(&names(&vars))]);
            }
            tab.extra.insert("variables".into(), json!(vars));
        }
        TableKind::QuantumSchubert | TableKind::Gw => {
            let classical = schubert_polynomials(&PolyAction::new(g.clone())).map_err(core_err)?;
            let rep = BruhatRep::quantum(g.clone()).map_err(core_err)?;
            let qt = quantum_bgg_table(&g, &classical, &rep).map_err(core_err)?;
            if what == TableKind::QuantumSchubert {
                tab = Table::new(&["word", "length", "polynomial"]);
                let vars = variable_names("x", dim, nq);
                for (w, p) in qt.iter().enumerate() {
                    tab.rows.push(vec![g.word_string(w), g.length(w).to_string(), spec(p, dim).format_with(&names(&vars))]);
                }
                tab.extra.insert("variables".into(), json!(vars));
            } else {
                tab = Table::new(&["w", "u", "v", "coefficient"]);
                let fam = CommutingFamily::new(&rep, coordinate_family(&g)).map_err(core_err)?;
                let qvars = variable_names("x", 0, nq);
                let order = g.order();
                let rows: Vec<Vec<Vec<String>>> = (0..order * order)
                    .into_par_iter()
                    .map(|i| -> Result<Vec<Vec<String>>, CliError> {
                        let (w, u) = (i / order, i % order);
                        let v = gw_constants(&fam, &qt, w, u).map_err(core_err)?;
                        Ok(v.iter()
                            .map(|(x, c)| (x, spec(c, 0)))
                            .filter(|(_, c)| !c.is_zero())
                            .map(|(x, c)| vec![g.word_string(w), g.word_string(u), g.word_string(*x), c.format_with(&names(&qvars))])
                            .collect())
                    })
                    .collect::<Result<_, _>>()?;
                tab.rows = rows.into_iter().flatten().collect();
                tab.extra.insert("variables".into(), json!(qvars));
            }
        }
        TableKind::Invariants => {
            tab = Table::new(&["name", "polynomial"]);
            let list = bracket_core::verify::invariant_list(t).map_err(core_err)?;
            let k = list.first().map_or(0, |(_, p)| p.nvars() - nq);
            let vars = variable_names("e", k, nq);
            for (name, p) in &list {
                tab.rows.push(vec![name.clone(), spec(p, k).format_with(&names(&vars))]);
            }
            tab.extra.insert("variables".into(), json!(vars));
        }
        TableKind::Relations => {
            tab = Table::new(&["list", "source", "relation"]);
            let mode = cfg.mode();
            let generic = generic_relations(&g, mode).map_err(core_err)?;
            let explicit = explicit_relations(&rs, mode).map_err(core_err)?;
            for (list, set) in [("generic", Some(&generic)), ("explicit", explicit.as_ref())] {
                let Some(set) = set else { continue };
                for r in &set.relations {
                    tab.rows.push(vec![list.to_string(), r.source.clone(), r.format(&rs, nq)]);
                }
            }
            tab.extra.insert("labels".into(), json!(rs.labels));
        }
        TableKind::Dunkl => {
            tab = Table::new(&["normalization", "element", "index", "expression"]);
            let rep = if cfg.mode() == Mode::Quantum { BruhatRep::quantum(g.clone()).map_err(core_err)? } else { BruhatRep::classical(g.clone()) };
            let mut norms = vec![Normalization::Cartan, Normalization::Explicit];
            if t.family == Family::B {
                norms.extend([0, 1, 3].map(Normalization::ScaledB));
            }
            if t.family == Family::I2 {
                norms.push(Normalization::DihedralPrinted);
            }
            let mut commuting = serde_json::Map::new();
            for norm in norms {
                let fam = dunkl_family(&g, norm).map_err(core_err)?;
                let label = match norm {
                    Normalization::ScaledB(c) => format!("scaled-b:{c}"),
                    other => serde_json::to_value(other).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default(),
                };
                if norm == Normalization::Cartan {
                    for (i, e) in fam.eta.iter().enumerate() {
                        tab.rows.push(vec!["chevalley".into(), "eta".into(), (i + 1).to_string(), lin_expr(e).format(&rs.labels)]);
                    }
                }
                for (i, th) in fam.theta.iter().enumerate() {
                    tab.rows.push(vec![label.clone(), "theta".into(), (i + 1).to_string(), lin_expr(th).format(&rs.labels)]);
                }
                commuting.insert(label, json!(CommutingFamily::new(&rep, fam.theta).is_ok()));
            }
            tab.extra.insert("commuting".into(), Value::Object(commuting));
        }
    }
    let what_name = serde_json::to_value(what).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
    let summary = format!("{t} {what_name}: {} rows", tab.rows.len());
    let body = match cfg.format() {
        Format::Json => {
            let rows: Vec<Value> = tab
                .rows
                .iter()
                .map(|r| Value::Object(tab.columns.iter().zip(r).map(|(c, v)| (c.to_string(), json!(v))).collect()))
                .collect();
            let mut obj = serde_json::Map::new();
            obj.insert("schema".into(), json!(TABLE_SCHEMA));
            obj.insert("type".into(), json!(t.to_string()));
            obj.insert("what".into(), json!(what_name));
            obj.insert("mode".into(), json!(cfg.mode()));
            if !cfg.q.is_empty() {
                obj.insert("q".into(), json!(cfg.q));
            }
            obj.extend(tab.extra);
            obj.insert("rows".into(), Value::Array(rows));
            Body::Json(Value::Object(obj))
        }
        Format::Csv => Body::Csv(tab.columns.iter().map(|s| s.to_string()).collect(), tab.rows),
    };
    Ok(Outcome { body, exit: Exit::Pass, summary })
}

pub fn hilbert(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (t, rs) = cfg.validate()?;
    if cfg.mode() != Mode::Classical {
        return Err(CliError::Config("graded quotients are built from the classical relations".into()));
    }
    let g = group(t)?;
    let algebra = cfg.hilbert.algebra.unwrap_or(Algebra::Commutative);
    let has_explicit = explicit_relations(&rs, Mode::Classical).map_err(core_err)?.is_some();
    let list = cfg.hilbert.relations.unwrap_or(if has_explicit { RelationList::Explicit } else { RelationList::Generic });
    let npos = rs.num_positive();
    let max_degree = cfg.max_degree.unwrap_or(match algebra {
        Algebra::Commutative => npos + 1,
        Algebra::Free => 2 * npos + 1,
    });
    let p = bracket_presentation(&g, algebra, list, &cfg.hilbert.extra).map_err(|e| match e {
        bracket_core::Error::Unsupported(s) => CliError::Config(s),
        other => core_err(other),
    })?;
    let report = hilbert_series(&p, algebra, max_degree, cfg.budget()).map_err(core_err)?;
    let exit = if report.cutoff.is_some() { Exit::Budget } else { Exit::Pass };
    let coeffs = report.coefficients();
    let summary = match report.cutoff {
        None => format!("{t} {algebra:?}: {coeffs:?}"),
        Some(d) => format!("{t} {algebra:?}: {coeffs:?}, budget exceeded at degree {d}"),
    };
    let body = match cfg.format() {
        Format::Json => Body::Json(json!({
            "schema": HILBERT_SCHEMA,
            "type": t.to_string(),
            "algebra": algebra,
            "relations": if algebra == Algebra::Free { json!(list) } else { Value::Null },
            "extra_relations": cfg.hilbert.extra,
            "max_degree": max_degree,
            "budget": cfg.budget(),
            "rows": report.rows,
            "coefficients": coeffs,
            "cutoff": report.cutoff,
        })),
        Format::Csv => Body::Csv(
            ["degree", "words", "relation_rows", "rank", "dimension"].map(String::from).to_vec(),
            report
                .rows
                .iter()
                .map(|r| [r.degree, r.words, r.relation_rows, r.rank, r.dimension].iter().map(|x| x.to_string()).collect())
                .collect(),
        ),
    };
    Ok(Outcome { body, exit, summary })
}

pub fn pieri(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (t, _) = cfg.validate()?;
    if t.family != Family::B {
        return Err(CliError::Config(format!("the Pieri formulas are stated for type B, not {t}")));
    }
    let n = t.rank;
    let kind = cfg.pieri.kind.unwrap_or(PieriKind::Elementary);
    let cases: Vec<(usize, usize)> = match (cfg.pieri.m, cfg.pieri.k) {
        (Some(m), Some(k)) => vec![(m, k)],
        (Some(m), None) => match kind {
            PieriKind::Elementary => (1..=m).map(|k| (m, k)).collect(),
            PieriKind::Complete2 => vec![(m, 2)],
            PieriKind::CompleteVanish => (2 * n + 1 - m.min(2 * n)..=8).map(|k| (m, k)).collect(),
        },
        (None, _) => return Err(CliError::Config("pieri needs --m".into())),
    };
    for &(m, k) in &cases {
        if m == 0 || m > n || k == 0 {
            return Err(CliError::Config(format!("need 1 <= m <= {n} and k >= 1 (got m = {m}, k = {k})")));
        }
        if kind == PieriKind::CompleteVanish && k + m <= 2 * n {
            return Err(CliError::Config(format!("the vanishing statement needs k + m > {}", 2 * n)));
        }
    }
    let g = group(t)?;
    let reports = cases
        .par_iter()
        .map(|&(m, k)| pieri_check(&g, m, k, kind).map_err(core_err))
        .collect::<Result<Vec<_>, _>>()?;
    let failed = reports.iter().filter(|r| !r.holds).count();
    let exit = if failed > 0 { Exit::Failure } else { Exit::Pass };
    let summary = format!("{t} Pieri: {} cases, {failed} fail", reports.len());
    let body = match cfg.format() {
        Format::Json => Body::Json(json!({ "schema": PIERI_SCHEMA, "type": t.to_string(), "reports": reports })),
        Format::Csv => Body::Csv(
            ["n", "m", "k", "kind", "rhs_terms", "holds", "witness"].map(String::from).to_vec(),
            reports
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.m.to_string(),
                        r.k.to_string(),
                        serde_json::to_value(r.kind).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default(),
                        r.rhs_terms.to_string(),
                        r.holds.to_string(),
                        r.witness.clone().unwrap_or_default(),
                    ]
                })
                .collect(),
        ),
    };
    Ok(Outcome { body, exit, summary })
}

pub fn graph(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (t, _) = cfg.validate()?;
    let g = group(t)?;
    let quantum = cfg.mode() == Mode::Quantum;
    let graph = BruhatGraph::build(&g, quantum).map_err(core_err)?;
    let summary = format!("{t}: {} classical and {} extended arrows", graph.classical.len(), graph.extended.len());
    let body = match cfg.format() {
        Format::Json => {
            let mut v = graph.to_json(&g);
            v["schema"] = json!(GRAPH_SCHEMA);
            v["labels"] = json!(g.rs.labels);
            Body::Json(v)
        }
        Format::Csv => Body::Csv(
            ["source", "target", "root", "kind"].map(String::from).to_vec(),
            graph
                .arrows()
                .map(|a| {
                    let kind = match a.kind {
                        ArrowKind::Classical => "classical",
                        ArrowKind::Extended => "extended",
                    };
                    vec![g.word_string(a.source), g.word_string(a.target), g.rs.labels[a.root].clone(), kind.to_string()]
                })
                .collect(),
        ),
    };
    Ok(Outcome { body, exit: Exit::Pass, summary })
}
