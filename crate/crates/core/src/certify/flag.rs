use serde::Serialize;

use super::heavy::is_locally_heavy;
use super::verdict::{sorted, ProofNode, Rule, Verdict, VerdictKind};
use crate::arrangement::Multiarrangement;
use crate::betti::b2_simple;
use crate::error::{Error, Result};

/// One flat `X_i` of a flag, by the hyperplanes of the original arrangement
/// containing it, with `m^{X_{i−1}}(X_i)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FlagLevel {
    pub members: Vec<usize>,
    pub multiplicity: u64,
}

/// A chain `X_1 ⊃ … ⊃ X_ℓ`, `codim X_i = i`, compared lexicographically by levels.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Flag {
    pub levels: Vec<FlagLevel>,
}

/// A multiarrangement on some `X_i` whose hyperplanes remember which original
/// hyperplanes contain them.
#[derive(Clone, Debug)]
struct Stage {
    arrangement: Multiarrangement,
    origins: Vec<Vec<usize>>,
}

impl Stage {
    fn start(a: &Multiarrangement) -> Self {
        Stage {
            arrangement: a.clone(),
            origins: (0..a.len()).map(|i| vec![i]).collect(),
        }
    }

    fn restrict(&self, h: usize) -> Result<Stage> {
        let r = self.arrangement.euler_ziegler_restriction(h)?;
        let origins = r
            .groups
            .iter()
            .map(|g| {
                let mut o: Vec<usize> = g.iter().flat_map(|&p| self.origins[p].iter().copied()).collect();
                o.sort_unstable();
                o.dedup();
                o
            })
            .collect();
        Ok(Stage {
            arrangement: r.arrangement,
            origins,
        })
    }
}

impl Flag {
    /// `(1, m^{X_1}(X_2), …, m^{X_{ℓ−1}}(X_ℓ))`.
    pub fn multiplicities(&self) -> Vec<u64> {
        self.levels.iter().map(|l| l.multiplicity).collect()
    }

    /// `Σ_{i<j} m^{X_i}(X_{i+1}) m^{X_j}(X_{j+1})`.
    pub fn rhs(&self) -> u64 {
        let m = self.multiplicities();
        let mut s = 0;
        for i in 0..m.len() {
            for j in i + 1..m.len() {
                s += m[i] * m[j];
            }
        }
        s
    }

    /// The iterated restrictions `(A^{X_i}, m^{X_i})` for `i = 0 … ℓ−1`
    /// (with `A^{X_0} = A`), each paired with the index of `X_{i+1}` in it.
    ///
    /// Fails if the flag does not describe a locally heavy flag of `a`.
    pub fn chain(&self, a: &Multiarrangement) -> Result<Vec<(Multiarrangement, usize)>> {
        if !a.is_simple() {
            return Err(Error::NotSimple);
        }
        if self.levels.len() != a.dim() || !a.is_essential() {
            return Err(Error::InvalidFlag(format!(
                "{} levels for an arrangement of rank {} in dimension {}",
                self.levels.len(),
                a.rank(),
                a.dim()
            )));
        }
        let mut stage = Stage::start(a);
        let mut out = Vec::with_capacity(self.levels.len());
        for (i, level) in self.levels.iter().enumerate() {
            let k = stage
                .origins
                .iter()
                .position(|o| *o == level.members)
                .ok_or_else(|| Error::InvalidFlag(format!("level {} is not a hyperplane of the restriction", i + 1)))?;
            let expected = if i == 0 { 1 } else { stage.arrangement.mult(k) };
            if level.multiplicity != expected {
                return Err(Error::InvalidFlag(format!(
                    "level {} has multiplicity {expected}, not {}",
                    i + 1,
                    level.multiplicity
                )));
            }
            if i > 0 && !is_locally_heavy(&stage.arrangement, k)? {
                return Err(Error::InvalidFlag(format!("level {} is not locally heavy", i + 1)));
            }
            let next = if i + 1 < self.levels.len() {
                Some(stage.restrict(k)?)
            } else {
                None
            };
            out.push((stage.arrangement.clone(), k));
            if let Some(n) = next {
                stage = n;
            }
        }
        Ok(out)
    }

    /// Member sets rendered with hyperplane labels.
    pub fn describe(&self, a: &Multiarrangement) -> Vec<Vec<String>> {
        self.levels
            .iter()
            .map(|l| l.members.iter().map(|&i| a.label(i)).collect())
            .collect()
    }
}

fn search(stage: &Stage, depth: usize, dim: usize, prefix: &mut Vec<FlagLevel>, out: &mut Vec<Flag>) -> Result<()> {
    let candidates: Vec<usize> = if depth == 0 {
        (0..stage.arrangement.len()).collect()
    } else {
        (0..stage.arrangement.len())
            .filter(|&k| is_locally_heavy(&stage.arrangement, k).expect("index in range"))
            .collect()
    };
    for k in candidates {
        prefix.push(FlagLevel {
            members: stage.origins[k].clone(),
            multiplicity: if depth == 0 { 1 } else { stage.arrangement.mult(k) },
        });
        if depth + 1 == dim {
            out.push(Flag { levels: prefix.clone() });
        } else {
            search(&stage.restrict(k)?, depth + 1, dim, prefix, out)?;
        }
        prefix.pop();
    }
    Ok(())
}

/// All locally heavy flags of a simple essential arrangement, sorted.
pub fn find_locally_heavy_flags(a: &Multiarrangement) -> Result<Vec<Flag>> {
    if !a.is_simple() {
        return Err(Error::NotSimple);
    }
    if a.dim() == 0 || !a.is_essential() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    search(&Stage::start(a), 0, a.dim(), &mut Vec::new(), &mut out)?;
    out.sort();
    Ok(out)
}

/// Compares `b₂(A)` with the flag sum; equal means free with the flag's exponents.
pub fn certify_flag(a: &Multiarrangement, f: &Flag) -> Result<Verdict> {
    f.chain(a)?;
    let b2 = b2_simple(a)?.total;
    let rhs = f.rhs();
    let kind = if b2 == rhs {
        VerdictKind::Free {
            exponents: sorted(f.multiplicities()),
        }
    } else {
        VerdictKind::NonFree {
            witness: format!("b2 = {b2} but the flag sum is {rhs}"),
        }
    };
    let node = ProofNode::new(Rule::FlagEquality, kind)
        .input("arrangement", a.factored_form())
        .input("flag", serde_json::to_value(f.describe(a)).expect("strings serialize"))
        .input("level_multiplicities", f.multiplicities())
        .number("b2", b2 as i64)
        .number("flag_sum", rhs as i64);
    Ok(Verdict::from_node(node))
}
