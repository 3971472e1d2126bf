use super::heavy::{is_generic_hyperplane, locally_heavy_hyperplanes};
use super::verdict::{ProofNode, Rule, Verdict, VerdictKind};
use crate::arrangement::Multiarrangement;
use crate::error::{Error, Result};

fn inconclusive(rule: Rule, a: &Multiarrangement, reason: impl Into<String>) -> Verdict {
    Verdict::from_node(
        ProofNode::new(rule, VerdictKind::Inconclusive { reason: reason.into() })
            .input("arrangement", a.factored_form()),
    )
}

/// An irreducible arrangement of rank > 2 with a generic hyperplane is not
/// free for any multiplicity. Only the underlying arrangement is inspected.
pub fn nonfree_generic(a: &Multiarrangement, h: usize) -> Result<Verdict> {
    a.check_index(h)?;
    let simple = a.underlying();
    let rank = a.rank();
    if rank <= 2 {
        return Ok(inconclusive(Rule::GenericTotallyNonfree, a, format!("rank {rank} is at most 2")));
    }
    if !is_generic_hyperplane(&simple, h)? {
        return Ok(inconclusive(
            Rule::GenericTotallyNonfree,
            a,
            format!("{} is not a generic hyperplane", a.label(h)),
        ));
    }
    let blocks = a.reducibility().blocks.len();
    if blocks != 1 {
        return Ok(inconclusive(
            Rule::GenericTotallyNonfree,
            a,
            format!("arrangement is reducible ({blocks} blocks)"),
        ));
    }
    let node = ProofNode::new(
        Rule::GenericTotallyNonfree,
        VerdictKind::NonFree {
            witness: format!(
                "{} is generic in an irreducible arrangement of rank {rank}, so the arrangement is totally nonfree",
                a.label(h)
            ),
        },
    )
    .input("arrangement", a.factored_form())
    .input("generic_hyperplane", a.label(h))
    .number("rank", rank as i64)
    .number("blocks", 1);
    Ok(Verdict::from_node(node))
}

fn is_essentially_irreducible(a: &Multiarrangement) -> bool {
    a.reducibility().blocks.len() == 1
}

/// Two distinct locally heavy hyperplanes force non-freeness unless the
/// arrangement splits (rank 3), or whenever some rank-3 localization inside
/// both is irreducible (rank > 3).
pub fn nonfree_two_locally_heavy(a: &Multiarrangement) -> Result<Verdict> {
    let mut heavy = locally_heavy_hyperplanes(a);
    if heavy.len() < 2 {
        return Err(Error::TooFewLocallyHeavy);
    }
    heavy.sort_unstable();
    let rank = a.rank();
    let labels: Vec<String> = heavy.iter().map(|&i| a.label(i)).collect();
    let base = |kind| {
        ProofNode::new(Rule::TwoLocallyHeavy, kind)
            .input("arrangement", a.factored_form())
            .input("locally_heavy", labels.clone())
            .number("rank", rank as i64)
    };
    if rank < 3 {
        return Ok(inconclusive(Rule::TwoLocallyHeavy, a, format!("rank {rank} is below 3")));
    }
    if rank == 3 {
        let blocks = a.reducibility().blocks.len();
        if blocks == 1 {
            let node = base(VerdictKind::NonFree {
                witness: format!(
                    "{} and {} are locally heavy in an irreducible rank-3 arrangement",
                    labels[0], labels[1]
                ),
            })
            .input("pair", vec![labels[0].clone(), labels[1].clone()])
            .number("blocks", 1);
            return Ok(Verdict::from_node(node));
        }
        return Ok(Verdict::from_node(
            base(VerdictKind::Inconclusive {
                reason: format!("rank-3 arrangement is reducible ({blocks} blocks); the rule gives no exponents"),
            })
            .number("blocks", blocks as i64),
        ));
    }
    let lattice = a.intersection_lattice(3);
    for (p, &h) in heavy.iter().enumerate() {
        for &l in &heavy[p + 1..] {
            for x in lattice.flats(3) {
                if !(x.contains_hyperplane(h) && x.contains_hyperplane(l)) {
                    continue;
                }
                let loc = a.localization(x)?;
                if is_essentially_irreducible(&loc) {
                    let node = base(VerdictKind::NonFree {
                        witness: format!(
                            "the localization at the rank-3 flat {{{}}} is irreducible and contains the locally heavy {} and {}",
                            x.members().iter().map(|&i| a.label(i)).collect::<Vec<_>>().join(", "),
                            a.label(h),
                            a.label(l)
                        ),
                    })
                    .input("pair", vec![a.label(h), a.label(l)])
                    .input("flat", x.members().iter().map(|&i| a.label(i)).collect::<Vec<_>>())
                    .input("localization", loc.factored_form());
                    return Ok(Verdict::from_node(node));
                }
            }
        }
    }
    Ok(Verdict::from_node(base(VerdictKind::Inconclusive {
        reason: "no irreducible rank-3 localization contains two locally heavy hyperplanes".into(),
    })))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e52() -> Multiarrangement {
        Multiarrangement::from_ints(
            3,
            &[&[1, 0, 0], &[1, -1, 0], &[1, 0, -1], &[0, 1, 0], &[0, 1, -1], &[0, 0, 1]],
            &[1, 2, 1, 1, 1, 2],
        )
        .unwrap()
    }

    #[test]
    fn generic_rule() {
        let g = Multiarrangement::from_ints(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]], &[3, 1, 2, 5])
            .unwrap();
        for h in 0..4 {
            assert!(nonfree_generic(&g, h).unwrap().kind.is_nonfree());
        }
        let braid = Multiarrangement::simple_from_ints(
            3,
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, -1, 0], &[1, 0, -1], &[0, 1, -1]],
        )
        .unwrap();
        for h in 0..6 {
            assert!(!nonfree_generic(&braid, h).unwrap().kind.is_conclusive());
        }
        let red = Multiarrangement::simple_from_ints(3, &[&[1, 0, 0], &[0, 1, 0], &[1, -1, 0], &[0, 0, 1]])
            .unwrap();
        assert!(!nonfree_generic(&red, 3).unwrap().kind.is_conclusive());
    }

    #[test]
    fn two_heavy_rank3() {
        let v = nonfree_two_locally_heavy(&e52()).unwrap();
        assert!(v.kind.is_nonfree());
        let red = Multiarrangement::from_ints(
            3,
            &[&[1, 0, 0], &[0, 1, 0], &[1, -1, 0], &[0, 0, 1]],
            &[3, 1, 2, 5],
        )
        .unwrap();
        assert!(!nonfree_two_locally_heavy(&red).unwrap().kind.is_conclusive());
        let braid = e52().underlying();
        assert_eq!(nonfree_two_locally_heavy(&braid), Err(Error::TooFewLocallyHeavy));
    }

    #[test]
    fn two_heavy_rank4_embedding() {
        let a = Multiarrangement::from_ints(
            4,
            &[
                &[1, 0, 0, 0],
                &[1, -1, 0, 0],
                &[1, 0, -1, 0],
                &[0, 1, 0, 0],
                &[0, 1, -1, 0],
                &[0, 0, 1, 0],
                &[0, 0, 0, 1],
            ],
            &[1, 2, 1, 1, 1, 2, 1],
        )
        .unwrap();
        let v = nonfree_two_locally_heavy(&a).unwrap();
        assert!(v.kind.is_nonfree(), "{:?}", v.kind);
    }
}
