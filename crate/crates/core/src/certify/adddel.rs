use serde::{Deserialize, Serialize};

use super::heavy::is_locally_heavy;
use super::verdict::{sorted, ProofNode, Rule, Verdict, VerdictKind};
use crate::arrangement::Multiarrangement;
use crate::error::{Error, Result};

/// Members of the triple `(A,m)`, `(A′,m′)`, `(A^{H₀},m*)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TripleMember {
    Full,
    Deletion,
    Restriction,
}

/// A freeness statement with exponents, about one member of the triple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeStatement {
    pub member: TripleMember,
    pub exponents: Vec<u64>,
}

impl FreeStatement {
    pub fn new(member: TripleMember, exponents: Vec<u64>) -> Self {
        FreeStatement {
            member,
            exponents: sorted(exponents),
        }
    }
}

/// Multiset difference `a − b`; `None` unless `b ⊆ a`.
fn multiset_minus(a: &[u64], b: &[u64]) -> Option<Vec<u64>> {
    let mut rest = a.to_vec();
    for v in b {
        let p = rest.iter().position(|x| x == v)?;
        rest.remove(p);
    }
    Some(rest)
}

/// Infers the third freeness statement of an addition–deletion triple from the
/// other two, matching the exponent patterns `(d₁…d_{ℓ−1}, d_ℓ)`,
/// `(d₁…d_{ℓ−1}, d_ℓ − 1)` and `(d₁…d_{ℓ−1})`.
pub fn addition_deletion_step(first: &FreeStatement, second: &FreeStatement) -> Result<FreeStatement> {
    use TripleMember::*;
    let incompatible = || {
        Error::IncompatibleExponents(format!(
            "{:?} {:?} and {:?} {:?}",
            first.member, first.exponents, second.member, second.exponents
        ))
    };
    let (x, y) = (first, second);
    let get = |m: TripleMember| [x, y].into_iter().find(|s| s.member == m).map(|s| s.exponents.clone());
    match (get(Full), get(Deletion), get(Restriction)) {
        (None, Some(d), Some(r)) => {
            let rest = multiset_minus(&d, &r).filter(|v| v.len() == 1).ok_or_else(incompatible)?;
            let mut full = r;
            full.push(rest[0] + 1);
            Ok(FreeStatement::new(Full, full))
        }
        (Some(f), None, Some(r)) => {
            let rest = multiset_minus(&f, &r).filter(|v| v.len() == 1).ok_or_else(incompatible)?;
            if rest[0] == 0 {
                return Err(incompatible());
            }
            let mut del = r;
            del.push(rest[0] - 1);
            Ok(FreeStatement::new(Deletion, del))
        }
        (Some(f), Some(d), None) => {
            if f.len() != d.len() {
                return Err(incompatible());
            }
            // remove one exponent e from f such that f − {e} ∪ {e − 1} = d
            for (i, &e) in f.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let mut r = f.clone();
                r.remove(i);
                let mut cand = r.clone();
                cand.push(e - 1);
                if sorted(cand) == d {
                    return Ok(FreeStatement::new(Restriction, r));
                }
            }
            Err(incompatible())
        }
        _ => Err(Error::IncompatibleExponents(
            "need statements about two different members of the triple".into(),
        )),
    }
}

/// `(A, m + kδ_{H₀})`, requiring positivity and local heaviness of `H₀` both
/// before and after the shift.
pub fn normalize_multiplicity_shift(a: &Multiarrangement, h0: usize, k: i64) -> Result<Multiarrangement> {
    a.check_index(h0)?;
    let m0 = a.mult(h0) as i64 + k;
    if m0 < 1 {
        return Err(Error::InvalidShift(format!(
            "multiplicity of {} would become {m0}",
            a.label(h0)
        )));
    }
    if !is_locally_heavy(a, h0)? {
        return Err(Error::InvalidShift(format!("{} is not locally heavy", a.label(h0))));
    }
    let shifted = a.with_multiplicity(h0, m0 as u64)?;
    if !is_locally_heavy(&shifted, h0)? {
        return Err(Error::InvalidShift(format!(
            "{} is not locally heavy with multiplicity {m0}",
            a.label(h0)
        )));
    }
    Ok(shifted)
}

/// Transports a verdict on `(A,m)` to `(A, m + kδ_{H₀})`.
///
/// A free verdict is carried one unit step at a time through addition–deletion
/// with the (unchanged) Euler–Ziegler restriction; a non-free verdict carries
/// over as is.
pub fn shift_verdict(a: &Multiarrangement, h0: usize, k: i64, verdict: &Verdict) -> Result<Verdict> {
    let shifted = normalize_multiplicity_shift(a, h0, k)?;
    let m0 = a.mult(h0);
    let base = |kind| {
        ProofNode::new(Rule::MultiplicityShift, kind)
            .input("arrangement", a.factored_form())
            .input("shifted", shifted.factored_form())
            .input("hyperplane", a.label(h0))
            .number("shift", k)
            .number("m0", m0 as i64)
    };
    let node = match &verdict.kind {
        VerdictKind::Free { exponents } => {
            let restriction = multiset_minus(exponents, &[m0]).ok_or_else(|| {
                Error::IncompatibleExponents(format!("{exponents:?} does not contain m0 = {m0}"))
            })?;
            let mut current = FreeStatement::new(TripleMember::Full, exponents.clone());
            let mut steps = Vec::new();
            for _ in 0..k.unsigned_abs() {
                let r = FreeStatement::new(TripleMember::Restriction, restriction.clone());
                let next = if k > 0 {
                    let as_deletion = FreeStatement::new(TripleMember::Deletion, current.exponents.clone());
                    addition_deletion_step(&as_deletion, &r)?
                } else {
                    let d = addition_deletion_step(&current, &r)?;
                    FreeStatement::new(TripleMember::Full, d.exponents)
                };
                steps.push(
                    ProofNode::new(
                        Rule::AdditionDeletion,
                        VerdictKind::Free {
                            exponents: next.exponents.clone(),
                        },
                    )
                    .input("known", serde_json::json!([current.exponents, restriction])),
                );
                current = FreeStatement::new(TripleMember::Full, next.exponents);
            }
            let mut node = base(VerdictKind::Free {
                exponents: current.exponents,
            })
            .child(verdict.certificate.clone());
            node.children.extend(steps);
            node
        }
        VerdictKind::NonFree { witness } => base(VerdictKind::NonFree {
            witness: format!("freeness is unchanged by shifting a locally heavy multiplicity ({witness})"),
        })
        .child(verdict.certificate.clone()),
        VerdictKind::Inconclusive { reason } => base(VerdictKind::Inconclusive { reason: reason.clone() })
            .child(verdict.certificate.clone()),
    };
    Ok(Verdict::from_node(node))
}

#[cfg(test)]
mod tests {
    use super::*;
    use TripleMember::*;

    #[test]
    fn inference_patterns() {
        let full = addition_deletion_step(
            &FreeStatement::new(Deletion, vec![2, 2, 2]),
            &FreeStatement::new(Restriction, vec![2, 2]),
        )
        .unwrap();
        assert_eq!(full, FreeStatement::new(Full, vec![2, 2, 3]));

        for m0 in 2..6 {
            let del = addition_deletion_step(
                &FreeStatement::new(Full, vec![m0, 2, 3]),
                &FreeStatement::new(Restriction, vec![2, 3]),
            )
            .unwrap();
            assert_eq!(del, FreeStatement::new(Deletion, vec![m0 - 1, 2, 3]));
        }

        let r = addition_deletion_step(
            &FreeStatement::new(Full, vec![2, 2, 3]),
            &FreeStatement::new(Deletion, vec![2, 2, 2]),
        )
        .unwrap();
        assert_eq!(r, FreeStatement::new(Restriction, vec![2, 2]));
    }

    #[test]
    fn incompatible_patterns() {
        assert!(matches!(
            addition_deletion_step(
                &FreeStatement::new(Deletion, vec![2, 2, 2]),
                &FreeStatement::new(Restriction, vec![1, 3]),
            ),
            Err(Error::IncompatibleExponents(_))
        ));
        assert!(addition_deletion_step(
            &FreeStatement::new(Full, vec![1, 2]),
            &FreeStatement::new(Full, vec![1, 2]),
        )
        .is_err());
    }

    fn six_lines(a: u64, m0: u64) -> Multiarrangement {
        Multiarrangement::from_ints(
            3,
            &[&[1, 0, 0], &[1, -1, 0], &[1, 0, -1], &[0, 1, 0], &[0, 1, -1], &[0, 0, 1]],
            &[a, a, a, a, a, m0],
        )
        .unwrap()
    }

    #[test]
    fn shifts() {
        assert_eq!(normalize_multiplicity_shift(&six_lines(1, 2), 5, 3).unwrap().mult(5), 5);
        assert!(matches!(
            normalize_multiplicity_shift(&six_lines(1, 2), 5, -1),
            Err(Error::InvalidShift(_))
        ));
        let b = Multiarrangement::from_ints(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], &[2, 3, 4]).unwrap();
        assert_eq!(normalize_multiplicity_shift(&b, 2, -2).unwrap().multiplicities(), &[2, 3, 2]);
        assert!(normalize_multiplicity_shift(&b, 2, -4).is_err());
    }
}
