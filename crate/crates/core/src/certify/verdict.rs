use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Names of the inference rules a proof node can cite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Rule {
    Rank2Base,
    LocallyHeavyRestriction,
    FlagEquality,
    GenericTotallyNonfree,
    TwoLocallyHeavy,
    AdditionDeletion,
    SaitoBasis,
    HilbertObstruction,
    MultiplicityShift,
}

impl Rule {
    pub const ALL: [Rule; 9] = [
        Rule::Rank2Base,
        Rule::LocallyHeavyRestriction,
        Rule::FlagEquality,
        Rule::GenericTotallyNonfree,
        Rule::TwoLocallyHeavy,
        Rule::AdditionDeletion,
        Rule::SaitoBasis,
        Rule::HilbertObstruction,
        Rule::MultiplicityShift,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Rank2Base => "Rank2Base",
            Rule::LocallyHeavyRestriction => "LocallyHeavyRestriction",
            Rule::FlagEquality => "FlagEquality",
            Rule::GenericTotallyNonfree => "GenericTotallyNonfree",
            Rule::TwoLocallyHeavy => "TwoLocallyHeavy",
            Rule::AdditionDeletion => "AdditionDeletion",
            Rule::SaitoBasis => "SaitoBasis",
            Rule::HilbertObstruction => "HilbertObstruction",
            Rule::MultiplicityShift => "MultiplicityShift",
        }
    }

    pub fn from_name(s: &str) -> Option<Rule> {
        Rule::ALL.into_iter().find(|r| r.name() == s)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum VerdictKind {
    /// Exponents in nondecreasing order.
    Free { exponents: Vec<u64> },
    NonFree { witness: String },
    Inconclusive { reason: String },
}

impl VerdictKind {
    pub fn is_free(&self) -> bool {
        matches!(self, VerdictKind::Free { .. })
    }

    pub fn is_nonfree(&self) -> bool {
        matches!(self, VerdictKind::NonFree { .. })
    }

    pub fn is_conclusive(&self) -> bool {
        !matches!(self, VerdictKind::Inconclusive { .. })
    }

    pub fn exponents(&self) -> Option<&[u64]> {
        match self {
            VerdictKind::Free { exponents } => Some(exponents),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            VerdictKind::Free { .. } => "Free",
            VerdictKind::NonFree { .. } => "NonFree",
            VerdictKind::Inconclusive { .. } => "Inconclusive",
        }
    }
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerdictKind::Free { exponents } => {
                let e: Vec<String> = exponents.iter().map(|d| d.to_string()).collect();
                write!(f, "Free, exponents ({})", e.join(", "))
            }
            VerdictKind::NonFree { witness } => write!(f, "NonFree: {witness}"),
            VerdictKind::Inconclusive { reason } => write!(f, "Inconclusive: {reason}"),
        }
    }
}

/// One rule application: its premises (`inputs`), the integers it compares
/// (`numbers`) and the sub-proofs it relies on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofNode {
    pub rule: Rule,
    pub conclusion: VerdictKind,
    #[serde(default)]
    pub inputs: BTreeMap<String, Value>,
    #[serde(default)]
    pub numbers: BTreeMap<String, i64>,
    #[serde(default)]
    pub children: Vec<ProofNode>,
}

impl ProofNode {
    pub fn new(rule: Rule, conclusion: VerdictKind) -> Self {
        ProofNode {
            rule,
            conclusion,
            inputs: BTreeMap::new(),
            numbers: BTreeMap::new(),
            children: Vec::new(),
        }
    }

    pub fn input(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn number(mut self, key: &str, value: i64) -> Self {
        self.numbers.insert(key.to_string(), value);
        self
    }

    pub fn child(mut self, node: ProofNode) -> Self {
        self.children.push(node);
        self
    }

    /// Every rule cited anywhere in the tree, depth first.
    pub fn rules(&self) -> Vec<Rule> {
        let mut out = vec![self.rule];
        for c in &self.children {
            out.extend(c.rules());
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub certificate: ProofNode,
}

impl Verdict {
    pub fn from_node(certificate: ProofNode) -> Self {
        Verdict {
            kind: certificate.conclusion.clone(),
            certificate,
        }
    }
}

/// Sorts exponents into the reported nondecreasing order.
pub fn sorted(mut exponents: Vec<u64>) -> Vec<u64> {
    exponents.sort_unstable();
    exponents
}
