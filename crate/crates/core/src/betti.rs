//! Second Betti numbers `b₂(A)` and `b₂(A,m)`, globally and away from a hyperplane.

use serde::Serialize;

use crate::arrangement::Multiarrangement;
use crate::error::{Error, Result};
use crate::rank2::{project_to_rank2, rank2_exponents, ExponentPair};

/// Local contribution of one codim-2 flat.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlatContribution {
    pub members: Vec<usize>,
    pub exponents: ExponentPair,
    pub value: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiReport {
    pub total: u64,
    /// In lattice order (lexicographic by members).
    pub flats: Vec<FlatContribution>,
}

impl BettiReport {
    fn from_flats(flats: Vec<FlatContribution>) -> Self {
        BettiReport {
            total: flats.iter().map(|f| f.value).sum(),
            flats,
        }
    }
}

/// `b₂(A) = Σ_{X ∈ L₂} (|A_X| − 1)`.
pub fn b2_simple(a: &Multiarrangement) -> Result<BettiReport> {
    if !a.is_simple() {
        return Err(Error::NotSimple);
    }
    let flats = a
        .codim2_flats()
        .into_iter()
        .map(|x| {
            let k = x.members().len() as u64;
            FlatContribution {
                members: x.members().to_vec(),
                exponents: ExponentPair { d1: 1, d2: k - 1 },
                value: k - 1,
            }
        })
        .collect();
    Ok(BettiReport::from_flats(flats))
}

/// `b₂(A,m) = Σ_{X ∈ L₂} d_X¹ d_X²` with local exponents from the rank-2 solver.
pub fn b2_multi(a: &Multiarrangement) -> BettiReport {
    let flats = a
        .codim2_flats()
        .into_iter()
        .map(|x| {
            let inst = project_to_rank2(a, &x).expect("codim-2 flats project");
            let exponents = rank2_exponents(&inst);
            FlatContribution {
                members: x.members().to_vec(),
                exponents,
                value: exponents.product(),
            }
        })
        .collect();
    BettiReport::from_flats(flats)
}

/// `b₂^H(A,m) = b₂(A,m) − m(H)(|m| − m(H))`.
pub fn b2_away(a: &Multiarrangement, h: usize) -> Result<i64> {
    a.check_index(h)?;
    Ok(b2_away_from(a, &b2_multi(a), h))
}

/// [`b2_away`] from an already computed report.
pub fn b2_away_from(a: &Multiarrangement, report: &BettiReport, h: usize) -> i64 {
    let m0 = a.mult(h) as i64;
    report.total as i64 - m0 * (a.total_multiplicity() as i64 - m0)
}

/// `Σ b₂(A_X, m_X)` over codim-2 flats `X ⊄ H₀`.
pub fn b2_away_local_sum(a: &Multiarrangement, h0: usize) -> Result<u64> {
    a.check_index(h0)?;
    Ok(b2_multi(a)
        .flats
        .iter()
        .filter(|f| f.members.binary_search(&h0).is_err())
        .map(|f| f.value)
        .sum())
}
