//! Parameter sweeps over arrangement templates.
//!
//! A template is an arrangement file whose `mult` entries may be integer
//! expressions in named parameters, plus optional `constraints` (boolean
//! expressions; rows violating one are rejected, not certified) and an optional
//! distinguished hyperplane `h0` for which away-side numbers are reported.

use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context as _};
use evalexpr::{eval_boolean_with_context, eval_int_with_context, ContextWithMutableVariables, HashMapContext, Value};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use arrfree_core::arrangement::{ArrangementFile, Coordinate, Multiarrangement};
use arrfree_core::betti::{b2_away_from, b2_multi};
use arrfree_core::certify::{certify, CertifyOptions, VerdictKind};

#[derive(Deserialize)]
#[serde(untagged)]
enum MultEntry {
    Int(i64),
    Expr(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Template {
    dim: usize,
    hyperplanes: Vec<Vec<Coordinate>>,
    mult: Vec<MultEntry>,
    #[serde(default)]
    labels: Option<Vec<String>>,
    #[serde(default)]
    constraints: Vec<String>,
    #[serde(default)]
    h0: Option<usize>,
}

enum Domain {
    Range(String, String),
    List(Vec<String>),
}

struct Param {
    name: String,
    domain: Domain,
}

fn parse_param(s: &str) -> anyhow::Result<Param> {
    let (name, rhs) = s
        .split_once('=')
        .ok_or_else(|| anyhow!("parameter {s:?} is not of the form name=values"))?;
    let name = name.trim().to_string();
    if name.is_empty() {
        bail!("parameter {s:?} has an empty name");
    }
    let domain = match rhs.split_once("..") {
        Some((lo, hi)) => Domain::Range(lo.trim().into(), hi.trim().into()),
        None => Domain::List(rhs.split(',').map(|v| v.trim().to_string()).collect()),
    };
    Ok(Param { name, domain })
}

type Row = Vec<(String, i64)>;

fn context(row: &Row) -> anyhow::Result<HashMapContext> {
    let mut ctx = HashMapContext::new();
    for (k, v) in row {
        ctx.set_value(k.clone(), Value::Int(*v))?;
    }
    Ok(ctx)
}

fn eval_int(expr: &str, row: &Row) -> anyhow::Result<i64> {
    eval_int_with_context(expr, &context(row)?).with_context(|| format!("evaluating {expr:?}"))
}

/// Cartesian product in declaration order; later domains may refer to earlier names.
fn expand(params: &[Param], prefix: Row, out: &mut Vec<Row>) -> anyhow::Result<()> {
    let Some((p, rest)) = params.split_first() else {
        out.push(prefix);
        return Ok(());
    };
    let values = match &p.domain {
        Domain::Range(lo, hi) => (eval_int(lo, &prefix)?..=eval_int(hi, &prefix)?).collect(),
        Domain::List(items) => items.iter().map(|e| eval_int(e, &prefix)).collect::<anyhow::Result<Vec<_>>>()?,
    };
    for v in values {
        let mut row = prefix.clone();
        row.push((p.name.clone(), v));
        expand(rest, row, out)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct RowReport {
    params: serde_json::Map<String, serde_json::Value>,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    verdict: Option<VerdictKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    b2: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    b2_away: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    restriction_b2: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

fn instantiate(t: &Template, row: &Row) -> anyhow::Result<Multiarrangement> {
    let mult = t
        .mult
        .iter()
        .map(|m| match m {
            MultEntry::Int(v) => Ok(*v),
            MultEntry::Expr(e) => eval_int(e, row),
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    let file = ArrangementFile {
        dim: t.dim,
        hyperplanes: t.hyperplanes.clone(),
        mult: Some(mult),
        labels: t.labels.clone(),
    };
    Ok(file.into_arrangement()?)
}

fn run_row(t: &Template, row: &Row, opts: &CertifyOptions) -> RowReport {
    let mut rep = RowReport {
        params: row.iter().map(|(k, v)| (k.clone(), json!(v))).collect(),
        status: "rejected",
        verdict: None,
        b2: None,
        b2_away: None,
        restriction_b2: None,
        note: None,
    };
    let ctx = match context(row) {
        Ok(c) => c,
        Err(e) => {
            rep.note = Some(e.to_string());
            return rep;
        }
    };
    for c in &t.constraints {
        match eval_boolean_with_context(c, &ctx) {
            Ok(true) => {}
            Ok(false) => {
                rep.note = Some(format!("violates {c}"));
                return rep;
            }
            Err(e) => {
                rep.note = Some(format!("constraint {c}: {e}"));
                return rep;
            }
        }
    }
    let result = (|| -> anyhow::Result<()> {
        let a = instantiate(t, row)?;
        let report = b2_multi(&a);
        if let Some(h) = t.h0 {
            a.check_index(h)?;
            rep.b2_away = Some(b2_away_from(&a, &report, h));
            rep.restriction_b2 = Some(b2_multi(&a.euler_ziegler_restriction(h)?.arrangement).total);
        }
        rep.b2 = Some(report.total);
        rep.verdict = Some(certify(&a, opts)?.verdict);
        Ok(())
    })();
    match result {
        Ok(()) => rep.status = "ok",
        Err(e) => {
            rep.status = "error";
            rep.note = Some(format!("{e:#}"));
        }
    }
    rep
}

pub fn cmd_sweep(path: &Path, params: &[String], opts: &CertifyOptions, as_json: bool) -> anyhow::Result<ExitCode> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let t: Template =
        serde_json::from_str(&text).map_err(|e| arrfree_core::Error::Parse(e.to_string()))?;
    let params = params.iter().map(|p| parse_param(p)).collect::<anyhow::Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    expand(&params, Vec::new(), &mut rows)?;
    let reports: Vec<RowReport> = rows.par_iter().map(|r| run_row(&t, r, opts)).collect();

    if as_json {
        crate::put(&(serde_json::to_string_pretty(&json!({ "command": "sweep", "rows": reports }))? + "\n"));
        return Ok(ExitCode::SUCCESS);
    }
    let mut out = String::new();
    for r in &reports {
        let ps: Vec<_> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(out, "{:<16}", ps.join(" "))?;
        match (&r.verdict, r.status) {
            (Some(v), _) => {
                write!(out, " {v}")?;
                if let Some(b) = r.b2 {
                    write!(out, "  b2={b}")?;
                }
                if let (Some(x), Some(y)) = (r.b2_away, r.restriction_b2) {
                    write!(out, " away={x} restriction={y}")?;
                }
            }
            (None, status) => write!(out, " {status}: {}", r.note.as_deref().unwrap_or(""))?,
        }
        writeln!(out)?;
    }
    crate::put(&out);
    Ok(ExitCode::SUCCESS)
}
