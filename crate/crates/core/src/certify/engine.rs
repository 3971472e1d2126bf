use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::flag::{certify_flag, find_locally_heavy_flags};
use super::heavy::{is_locally_heavy, locally_heavy_hyperplanes};
use super::nonfree::{nonfree_generic, nonfree_two_locally_heavy};
use super::verdict::{sorted, ProofNode, Rule, Verdict, VerdictKind};
use crate::arrangement::Multiarrangement;
use crate::betti::{b2_away_from, b2_multi};
use crate::error::{Error, Result};
use crate::oracle::{hilbert_freeness_test, HilbertOutcome};
use crate::rank2::{rank2_exponents, Rank2Instance};

/// Steps of the top-level dispatcher, in the order they are tried.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Step {
    Rank2Base,
    FlagEquality,
    LocallyHeavyRestriction,
    GenericTotallyNonfree,
    TwoLocallyHeavy,
    Oracle,
}

pub const DISPATCH_ORDER: [Step; 6] = [
    Step::Rank2Base,
    Step::FlagEquality,
    Step::LocallyHeavyRestriction,
    Step::GenericTotallyNonfree,
    Step::TwoLocallyHeavy,
    Step::Oracle,
];

impl Step {
    pub fn name(self) -> &'static str {
        match self {
            Step::Rank2Base => "Rank2Base",
            Step::FlagEquality => "FlagEquality",
            Step::LocallyHeavyRestriction => "LocallyHeavyRestriction",
            Step::GenericTotallyNonfree => "GenericTotallyNonfree",
            Step::TwoLocallyHeavy => "TwoLocallyHeavy",
            Step::Oracle => "Oracle",
        }
    }

    pub fn from_name(s: &str) -> Option<Step> {
        DISPATCH_ORDER.into_iter().find(|r| r.name() == s)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifyOptions {
    /// Fall back to the brute-force oracle (top level and inside restrictions).
    pub oracle: bool,
    pub seed: u64,
    /// Degree cap for the oracle; `None` uses its default.
    pub max_degree: Option<u32>,
    pub only: Option<Step>,
}

fn inconclusive_node(rule: Rule, a: &Multiarrangement, reason: impl Into<String>) -> ProofNode {
    ProofNode::new(rule, VerdictKind::Inconclusive { reason: reason.into() }).input("arrangement", a.factored_form())
}

/// Rank ≤ 2 multiarrangements are free; exponents come from the rank-2 solver.
pub fn rank2_base(a: &Multiarrangement) -> Result<Verdict> {
    let rank = a.rank();
    if rank > 2 {
        return Err(Error::Precondition(format!("rank {rank} exceeds 2")));
    }
    let (e, dropped) = a.essentialize();
    let mut exponents = match e.dim() {
        0 => Vec::new(),
        1 => vec![e.total_multiplicity()],
        _ => {
            let p = rank2_exponents(&Rank2Instance::from_arrangement(e.clone())?);
            vec![p.d1, p.d2]
        }
    };
    exponents.extend(std::iter::repeat_n(0, dropped));
    let exponents = sorted(exponents);
    let mut node = ProofNode::new(
        Rule::Rank2Base,
        VerdictKind::Free {
            exponents: exponents.clone(),
        },
    )
    .input("arrangement", a.factored_form())
    .number("rank", rank as i64)
    .number("total_multiplicity", a.total_multiplicity() as i64);
    for (i, d) in exponents.iter().enumerate() {
        node = node.number(&format!("d{}", i + 1), *d as i64);
    }
    Ok(Verdict::from_node(node))
}

/// Runs the brute-force oracle on the essentialization of `a`.
pub fn oracle_verdict(a: &Multiarrangement, opts: &CertifyOptions) -> Result<Verdict> {
    let (e, dropped) = a.essentialize();
    let report = hilbert_freeness_test(&e, opts.max_degree, opts.seed)?;
    let dims: Vec<Value> = report.dimensions.iter().map(|&d| d.into()).collect();
    let node = match &report.outcome {
        HilbertOutcome::FreeProven { exponents, trial } => {
            let mut exps = exponents.clone();
            exps.extend(std::iter::repeat_n(0, dropped));
            let basis: Vec<String> = report
                .basis
                .as_ref()
                .map(|b| b.iter().map(|t| t.to_string()).collect())
                .unwrap_or_default();
            ProofNode::new(Rule::SaitoBasis, VerdictKind::Free { exponents: sorted(exps) })
                .input("arrangement", a.factored_form())
                .input("basis", basis)
                .input("dimensions", dims)
                .input("seed", report.seed)
                .number("cap", report.cap as i64)
                .number("trial", *trial as i64)
        }
        HilbertOutcome::NonFreeProven => ProofNode::new(
            Rule::HilbertObstruction,
            VerdictKind::NonFree {
                witness: format!(
                    "no exponent tuple with sum {} matches dim D(A,m)_d = {:?} for d <= {}",
                    a.total_multiplicity(),
                    report.dimensions,
                    report.cap
                ),
            },
        )
        .input("arrangement", a.factored_form())
        .input("dimensions", dims)
        .number("cap", report.cap as i64)
        .number("total_multiplicity", a.total_multiplicity() as i64),
        HilbertOutcome::Undetermined { reason } => ProofNode::new(
            Rule::HilbertObstruction,
            VerdictKind::Inconclusive { reason: reason.clone() },
        )
        .input("arrangement", a.factored_form())
        .input("dimensions", dims)
        .input(
            "survivors",
            serde_json::to_value(&report.survivors).expect("integers serialize"),
        )
        .number("cap", report.cap as i64),
    };
    Ok(Verdict::from_node(node))
}

/// Decides a restricted multiarrangement: rank-2 base case, then its locally
/// heavy hyperplanes, then the flag criterion, then (if enabled) the oracle.
fn certify_restriction(b: &Multiarrangement, opts: &CertifyOptions) -> Result<Verdict> {
    if b.rank() <= 2 {
        return rank2_base(b);
    }
    let mut last = None;
    for h in locally_heavy_hyperplanes(b) {
        let v = certify_locally_heavy(b, h, opts)?;
        if v.kind.is_conclusive() {
            return Ok(v);
        }
        last = Some(v);
    }
    if b.is_simple() {
        if let Some(f) = find_locally_heavy_flags(b)?.first() {
            return certify_flag(b, f);
        }
    }
    if opts.oracle {
        return oracle_verdict(b, opts);
    }
    Ok(last.unwrap_or_else(|| {
        Verdict::from_node(inconclusive_node(
            Rule::LocallyHeavyRestriction,
            b,
            "no criterion applies to this restriction",
        ))
    }))
}

/// Freeness through the Euler–Ziegler restriction onto a locally heavy `h0`:
/// free iff the restriction is free and `b₂^{H₀}(A,m) = b₂(A^{H₀}, m^{H₀})`.
pub fn certify_locally_heavy(a: &Multiarrangement, h0: usize, opts: &CertifyOptions) -> Result<Verdict> {
    if !is_locally_heavy(a, h0)? {
        return Err(Error::NotLocallyHeavy(h0));
    }
    let report = b2_multi(a);
    let away = b2_away_from(a, &report, h0);
    let r = a.euler_ziegler_restriction(h0)?;
    let rb = b2_multi(&r.arrangement).total as i64;
    let delta = away - rb;
    let m0 = a.mult(h0);
    let node = |kind| {
        ProofNode::new(Rule::LocallyHeavyRestriction, kind)
            .input("arrangement", a.factored_form())
            .input("hyperplane", a.label(h0))
            .input("restriction", r.arrangement.factored_form())
            .number("b2", report.total as i64)
            .number("m0", m0 as i64)
            .number("total_multiplicity", a.total_multiplicity() as i64)
            .number("b2_away", away)
            .number("restriction_b2", rb)
            .number("delta", delta)
    };
    if delta > 0 {
        return Ok(Verdict::from_node(node(VerdictKind::NonFree {
            witness: format!("b2 away from {} is {away} but the restriction has b2 = {rb}", a.label(h0)),
        })));
    }
    if delta < 0 {
        return Ok(Verdict::from_node(node(VerdictKind::Inconclusive {
            reason: format!("b2 away from {} is {away}, below the restriction's {rb}", a.label(h0)),
        })));
    }
    let sub = certify_restriction(&r.arrangement, opts)?;
    let kind = match &sub.kind {
        VerdictKind::Free { exponents } => {
            let mut e = exponents.clone();
            e.push(m0);
            VerdictKind::Free { exponents: sorted(e) }
        }
        VerdictKind::NonFree { .. } => VerdictKind::NonFree {
            witness: format!("the restriction onto {} is not free", a.label(h0)),
        },
        VerdictKind::Inconclusive { .. } => VerdictKind::Inconclusive {
            reason: format!("freeness of the restriction onto {} is undecided", a.label(h0)),
        },
    };
    Ok(Verdict::from_node(node(kind).child(sub.certificate)))
}

/// What a dispatcher step did.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attempt {
    pub step: String,
    pub outcome: String,
    pub detail: String,
}

pub const SCHEMA_VERSION: u32 = 1;

/// Self-contained result of [`certify`], serializable as the certificate file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema_version: u32,
    pub arrangement: Value,
    pub dispatch_order: Vec<String>,
    pub options: CertifyOptions,
    /// Dimensions dropped before certifying; they contribute exponent 0.
    pub nonessential_dim: usize,
    pub verdict: VerdictKind,
    pub proof: Option<ProofNode>,
    pub attempts: Vec<Attempt>,
}

fn pad_zeros(kind: VerdictKind, zeros: usize) -> VerdictKind {
    match kind {
        VerdictKind::Free { mut exponents } => {
            exponents.extend(std::iter::repeat_n(0, zeros));
            VerdictKind::Free {
                exponents: sorted(exponents),
            }
        }
        other => other,
    }
}

fn summary(kind: &VerdictKind) -> String {
    match kind {
        VerdictKind::Free { exponents } => format!("{exponents:?}"),
        VerdictKind::NonFree { witness } => witness.clone(),
        VerdictKind::Inconclusive { reason } => reason.clone(),
    }
}

/// Tries every step of [`DISPATCH_ORDER`] (or just `opts.only`) on the
/// essentialization of `a` and stops at the first conclusive verdict.
pub fn certify(a: &Multiarrangement, opts: &CertifyOptions) -> Result<Certificate> {
    let (e, dropped) = if a.is_essential() {
        (a.clone(), 0)
    } else {
        a.essentialize()
    };
    let mut attempts = Vec::new();
    let mut record = |step: Step, outcome: &str, detail: String| {
        attempts.push(Attempt {
            step: step.name().into(),
            outcome: outcome.into(),
            detail,
        });
    };
    let mut found: Option<Verdict> = None;
    for step in DISPATCH_ORDER {
        if opts.only.is_some_and(|o| o != step) {
            continue;
        }
        let verdict = match step {
            Step::Rank2Base => {
                if e.rank() > 2 {
                    record(step, "skipped", format!("rank {} exceeds 2", e.rank()));
                    continue;
                }
                rank2_base(&e)?
            }
            Step::FlagEquality => {
                if !e.is_simple() {
                    record(step, "skipped", "arrangement is not simple".into());
                    continue;
                }
                match find_locally_heavy_flags(&e)?.first() {
                    Some(f) => certify_flag(&e, f)?,
                    None => {
                        record(step, "skipped", "no locally heavy flag".into());
                        continue;
                    }
                }
            }
            Step::LocallyHeavyRestriction => {
                let heavy = locally_heavy_hyperplanes(&e);
                if heavy.is_empty() {
                    record(step, "skipped", "no locally heavy hyperplane".into());
                    continue;
                }
                let mut last = None;
                for h in heavy {
                    let v = certify_locally_heavy(&e, h, opts)?;
                    if v.kind.is_conclusive() {
                        last = Some(v);
                        break;
                    }
                    record(step, "Inconclusive", format!("{}: {}", e.label(h), summary(&v.kind)));
                    last = None;
                }
                match last {
                    Some(v) => v,
                    None => continue,
                }
            }
            Step::GenericTotallyNonfree => {
                let mut hit = None;
                for h in 0..e.len() {
                    let v = nonfree_generic(&e, h)?;
                    if v.kind.is_conclusive() {
                        hit = Some(v);
                        break;
                    }
                }
                match hit {
                    Some(v) => v,
                    None => {
                        record(step, "skipped", "no generic hyperplane in an irreducible arrangement of rank > 2".into());
                        continue;
                    }
                }
            }
            Step::TwoLocallyHeavy => match nonfree_two_locally_heavy(&e) {
                Err(Error::TooFewLocallyHeavy) => {
                    record(step, "skipped", "fewer than two locally heavy hyperplanes".into());
                    continue;
                }
                other => other?,
            },
            Step::Oracle => {
                if !opts.oracle && opts.only != Some(Step::Oracle) {
                    record(step, "skipped", "oracle disabled".into());
                    continue;
                }
                oracle_verdict(&e, opts)?
            }
        };
        record(step, verdict.kind.label(), summary(&verdict.kind));
        if verdict.kind.is_conclusive() {
            found = Some(verdict);
            break;
        }
    }
    let (verdict, proof) = match found {
        Some(v) => (pad_zeros(v.kind, dropped), Some(v.certificate)),
        None => (
            VerdictKind::Inconclusive {
                reason: "no criterion applies".into(),
            },
            None,
        ),
    };
    Ok(Certificate {
        schema_version: SCHEMA_VERSION,
        arrangement: a.to_json(),
        dispatch_order: DISPATCH_ORDER.iter().map(|s| s.name().to_string()).collect(),
        options: opts.clone(),
        nonessential_dim: dropped,
        verdict,
        proof,
        attempts,
    })
}

/// Re-derives a certificate from its embedded arrangement and options and
/// reports whether the result is identical.
pub fn reverify(cert: &Certificate) -> Result<bool> {
    let file: crate::arrangement::ArrangementFile =
        serde_json::from_value(cert.arrangement.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    let a = file.into_arrangement()?;
    Ok(certify(&a, &cert.options)? == *cert)
}
