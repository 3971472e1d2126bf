//! Exponents of rank-2 multiarrangements and the Euler multiplicity.
//!
//! A rank-2 multiarrangement is always free with exponents `(d1, d2)`,
//! `d1 + d2 = |m|`. `d1` is found as the least degree with a nonzero
//! logarithmic derivation.

use serde::Serialize;

use crate::arrangement::{Flat, Multiarrangement};
use crate::error::{Error, Result};
use crate::exactalg::Rational;
use crate::logder::derivation_space;

/// A multiarrangement of at least two distinct lines in `K²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rank2Instance {
    arrangement: Multiarrangement,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ExponentPair {
    pub d1: u64,
    pub d2: u64,
}

impl ExponentPair {
    pub fn product(&self) -> u64 {
        self.d1 * self.d2
    }
}

impl Rank2Instance {
    pub fn new(forms: Vec<Vec<Rational>>, mult: Vec<u64>) -> Result<Self> {
        if forms.iter().any(|f| f.len() != 2) {
            return Err(Error::DegenerateRank2);
        }
        let arrangement = Multiarrangement::new(2, forms, mult)?;
        Rank2Instance::from_arrangement(arrangement)
    }

    pub fn from_ints(forms: &[&[i64]], mult: &[u64]) -> Result<Self> {
        Rank2Instance::from_arrangement(Multiarrangement::from_ints(2, forms, mult)?)
    }

    pub fn from_arrangement(arrangement: Multiarrangement) -> Result<Self> {
        if arrangement.dim() != 2 || arrangement.len() < 2 {
            return Err(Error::DegenerateRank2);
        }
        Ok(Rank2Instance { arrangement })
    }

    pub fn arrangement(&self) -> &Multiarrangement {
        &self.arrangement
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.arrangement.total_multiplicity()
    }
}

/// `(A_X, m_X)` written in the two coordinates of `V / X`.
///
/// A member normal lies in the row space of the flat's echelon basis, so its
/// entries at the two pivot columns are its coordinates in that basis.
pub fn project_to_rank2(a: &Multiarrangement, x: &Flat) -> Result<Rank2Instance> {
    if x.codim() != 2 {
        return Err(Error::NotCodim2(x.codim()));
    }
    let loc = a.localization(x)?;
    let p = x.pivots();
    let forms = loc
        .hyperplanes()
        .iter()
        .map(|h| vec![h.normal()[p[0]].clone(), h.normal()[p[1]].clone()])
        .collect();
    Rank2Instance::new(forms, loc.multiplicities().to_vec())
}

pub fn rank2_exponents(inst: &Rank2Instance) -> ExponentPair {
    let total = inst.total_multiplicity();
    let d1 = (0..=total / 2)
        .find(|&d| !derivation_space(&inst.arrangement, d as u32).is_empty())
        .expect("a rank-2 multiarrangement has an exponent at most |m|/2");
    ExponentPair {
        d1,
        d2: total - d1,
    }
}

/// `m*` at the flat for the distinguished form `h0`: `d1` if some degree-`d1`
/// derivation is not divisible by `α₀`, else `d2`.
pub fn euler_multiplicity_at_flat(inst: &Rank2Instance, h0: usize) -> Result<u64> {
    inst.arrangement.check_index(h0)?;
    let exps = rank2_exponents(inst);
    let alpha = inst.arrangement.hyperplane(h0).form();
    let low = derivation_space(&inst.arrangement, exps.d1 as u32);
    let escapes = low
        .iter()
        .any(|t| t.coeffs().iter().any(|c| !c.is_zero() && c.div_exact(&alpha).is_none()));
    Ok(if escapes { exps.d1 } else { exps.d2 })
}

/// The restriction onto `h0` carrying the Euler multiplicity `m*`.
pub fn euler_restriction(a: &Multiarrangement, h0: usize) -> Result<Multiarrangement> {
    let r = a.euler_ziegler_restriction(h0)?;
    let mult = r
        .groups
        .iter()
        .map(|g| {
            let x = a.flat_of(g);
            let inst = project_to_rank2(a, &x)?;
            let pos = g.iter().position(|&i| i == h0).expect("groups contain h0");
            euler_multiplicity_at_flat(&inst, pos)
        })
        .collect::<Result<Vec<_>>>()?;
    r.with_multiplicities(mult)
}
