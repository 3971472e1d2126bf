//! Brute-force ground truth for `D(A,m)`.
//!
//! Graded pieces are computed by exact linear algebra (see
//! [`derivation_space`]); freeness is then either proven by Saito's criterion
//! on an explicit basis or refuted because no exponent tuple reproduces the
//! graded dimensions.

use num::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arrangement::Multiarrangement;
use crate::error::{Error, Result};
use crate::exactalg::{rat, Polynomial, Rational};
use crate::logder::{derivation_space, saito_determinant, Derivation};

pub use crate::logder::derivation_space_dim;

/// Largest accepted degree cap.
pub const MAX_DEGREE_CAP: u32 = 15;

/// Randomized extraction attempts per candidate tuple.
pub const EXTRACTION_TRIALS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum SaitoOutcome {
    Basis,
    /// `det = f·Q` with `deg f > 0`.
    DetIsMultiple { degree: u32 },
    Dependent,
}

/// Saito's criterion for `ℓ` members of `D(A,m)`.
pub fn saito_check(a: &Multiarrangement, thetas: &[Derivation]) -> Result<SaitoOutcome> {
    if thetas.len() != a.dim() {
        return Err(Error::WrongCount {
            expected: a.dim(),
            found: thetas.len(),
        });
    }
    if let Some(i) = thetas.iter().position(|t| t.nvars() != a.dim() || !t.is_member(a)) {
        return Err(Error::NotInModule(i));
    }
    let det = saito_determinant(thetas)?;
    if det.is_zero() {
        return Ok(SaitoOutcome::Dependent);
    }
    let q = a.defining_polynomial();
    let f = det
        .div_exact(&q)
        .expect("determinants of logarithmic derivations are multiples of Q");
    Ok(match f.degree() {
        Some(0) => SaitoOutcome::Basis,
        Some(degree) => SaitoOutcome::DetIsMultiple { degree },
        None => SaitoOutcome::Dependent,
    })
}

fn binomial(n: i64, k: i64) -> u64 {
    if n < k || k < 0 {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as u64
}

/// `dim S_{d−e}^ℓ` summed over the exponents: the graded dimension of a free
/// module with the given exponents.
pub fn free_module_dim(exponents: &[u64], d: u64) -> u64 {
    let l = exponents.len() as i64;
    exponents
        .iter()
        .filter(|&&e| e <= d)
        .map(|&e| binomial(d as i64 - e as i64 + l - 1, l - 1))
        .sum()
}

/// Nondecreasing tuples of `len` positive integers with the given sum.
fn exponent_tuples(len: usize, sum: u64) -> Vec<Vec<u64>> {
    fn rec(len: usize, sum: u64, min: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if len == 0 {
            if sum == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let mut v = min;
        while v * len as u64 <= sum {
            prefix.push(v);
            rec(len - 1, sum - v, v, prefix, out);
            prefix.pop();
            v += 1;
        }
    }
    let mut out = Vec::new();
    rec(len, sum, 1, &mut Vec::new(), &mut out);
    out
}

/// `|m| − rank + 1`, the largest exponent any free `(A,m)` can have.
pub fn default_degree_cap(a: &Multiarrangement) -> u32 {
    (a.total_multiplicity() + 1).saturating_sub(a.rank() as u64) as u32
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum HilbertOutcome {
    FreeProven { exponents: Vec<u64>, trial: usize },
    NonFreeProven,
    Undetermined { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertReport {
    pub cap: u32,
    pub seed: u64,
    /// `dim D(A,m)_d` for `d = 0..=cap`.
    pub dimensions: Vec<u64>,
    pub survivors: Vec<Vec<u64>>,
    pub outcome: HilbertOutcome,
    #[serde(skip)]
    pub basis: Option<Vec<Derivation>>,
}

/// Decides freeness from graded dimensions up to `cap` (default
/// [`default_degree_cap`]).
pub fn hilbert_freeness_test(a: &Multiarrangement, cap: Option<u32>, seed: u64) -> Result<HilbertReport> {
    if !a.is_essential() {
        return Err(Error::NotEssential {
            rank: a.rank(),
            dim: a.dim(),
        });
    }
    let cap = cap.unwrap_or_else(|| default_degree_cap(a));
    if cap > MAX_DEGREE_CAP {
        return Err(Error::CapTooLarge {
            cap,
            limit: MAX_DEGREE_CAP,
        });
    }
    if cap == 0 {
        return Err(Error::Precondition("degree cap must be at least 1".into()));
    }
    let spaces: Vec<Vec<Derivation>> = (0..=cap).map(|d| derivation_space(a, d)).collect();
    let dimensions: Vec<u64> = spaces.iter().map(|s| s.len() as u64).collect();
    let survivors: Vec<Vec<u64>> = exponent_tuples(a.dim(), a.total_multiplicity())
        .into_iter()
        .filter(|t| {
            dimensions
                .iter()
                .enumerate()
                .all(|(d, &dim)| free_module_dim(t, d as u64) == dim)
        })
        .collect();
    let (outcome, basis) = match survivors.as_slice() {
        [] => (HilbertOutcome::NonFreeProven, None),
        [only] if only.iter().all(|&e| e <= cap as u64) => {
            match extract_from_spaces(a, only, &spaces, seed, EXTRACTION_TRIALS) {
                Some((basis, trial)) => (
                    HilbertOutcome::FreeProven {
                        exponents: only.clone(),
                        trial,
                    },
                    Some(basis),
                ),
                None => (
                    HilbertOutcome::Undetermined {
                        reason: format!("no Saito basis found in {EXTRACTION_TRIALS} random trials"),
                    },
                    None,
                ),
            }
        }
        [_] => (
            HilbertOutcome::Undetermined {
                reason: "candidate exponents exceed the degree cap".into(),
            },
            None,
        ),
        many => (
            HilbertOutcome::Undetermined {
                reason: format!("{} exponent tuples match the graded dimensions", many.len()),
            },
            None,
        ),
    };
    Ok(HilbertReport {
        cap,
        seed,
        dimensions,
        survivors,
        outcome,
        basis,
    })
}

fn random_combination(space: &[Derivation], rng: &mut ChaCha8Rng) -> Derivation {
    let n = space[0].nvars();
    space.iter().fold(Derivation::zero(n), |acc, t| {
        let c: i64 = rng.gen_range(-3..=3);
        if c == 0 {
            acc
        } else {
            acc.add(&t.scale(&rat(c)))
        }
    })
}

fn extract_from_spaces(
    a: &Multiarrangement,
    exponents: &[u64],
    spaces: &[Vec<Derivation>],
    seed: u64,
    trials: usize,
) -> Option<(Vec<Derivation>, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if exponents.iter().any(|&e| spaces.get(e as usize).is_none_or(|s| s.is_empty())) {
        return None;
    }
    for trial in 1..=trials {
        let thetas: Vec<Derivation> = exponents
            .iter()
            .map(|&e| random_combination(&spaces[e as usize], &mut rng))
            .collect();
        if let Ok(SaitoOutcome::Basis) = saito_check(a, &thetas) {
            return Some((thetas, trial));
        }
    }
    None
}

/// Looks for a Saito basis with the given exponents among random members of
/// the graded pieces; returns it with the 1-based trial that succeeded.
pub fn extract_basis(
    a: &Multiarrangement,
    exponents: &[u64],
    seed: u64,
    trials: usize,
) -> Option<(Vec<Derivation>, usize)> {
    if exponents.len() != a.dim() || exponents.iter().sum::<u64>() != a.total_multiplicity() {
        return None;
    }
    let top = exponents.iter().copied().max().unwrap_or(0);
    let mut spaces: Vec<Vec<Derivation>> = vec![Vec::new(); top as usize + 1];
    for &e in exponents {
        if spaces[e as usize].is_empty() {
            spaces[e as usize] = derivation_space(a, e as u32);
        }
    }
    extract_from_spaces(a, exponents, &spaces, seed, trials)
}

/// A basis in the normal form of the good-summand construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodSummand {
    /// Index of `θ_j` with `θ_j(α₀) = α₀^{m₀}`.
    pub index: usize,
    /// The transformed basis: `θ'_i(α₀) = 0` for every `i ≠ index`.
    pub basis: Vec<Derivation>,
}

/// Finds `θ_j` of degree `m₀` with `θ_j(α₀) ≠ 0` and rewrites the basis so
/// that `θ_j(α₀) = α₀^{m₀}` and every other basis element kills `α₀`.
///
/// `Ok(None)` means no basis element qualifies.
pub fn good_summand_check(
    a: &Multiarrangement,
    h0: usize,
    basis: &[Derivation],
) -> Result<Option<GoodSummand>> {
    a.check_index(h0)?;
    if !crate::certify::is_locally_heavy(a, h0)? {
        return Err(Error::NotLocallyHeavy(h0));
    }
    if saito_check(a, basis)? != SaitoOutcome::Basis {
        return Err(Error::Precondition("derivations do not form a basis".into()));
    }
    let m0 = a.mult(h0) as u32;
    let normal = a.hyperplane(h0).normal();
    let power = a.hyperplane(h0).form().pow(m0);
    let Some(j) = basis
        .iter()
        .position(|t| t.pdeg() == Some(m0) && !t.apply_linear(normal).is_zero())
    else {
        return Ok(None);
    };
    let image = basis[j].apply_linear(normal);
    let c = image
        .div_exact(&power)
        .and_then(|q| q.as_constant())
        .expect("degree-m0 images are constant multiples of the power");
    let theta_j = basis[j].scale(&(Rational::one() / c));
    let mut out = Vec::with_capacity(basis.len());
    for (i, t) in basis.iter().enumerate() {
        if i == j {
            out.push(theta_j.clone());
            continue;
        }
        let q: Polynomial = t
            .apply_linear(normal)
            .div_exact(&power)
            .expect("members map α0 into its m0-th power");
        out.push(t.sub(&theta_j.mul_poly(&q)));
    }
    if out.iter().enumerate().any(|(i, t)| i != j && !t.apply_linear(normal).is_zero()) {
        return Ok(None);
    }
    if saito_check(a, &out)? != SaitoOutcome::Basis {
        return Ok(None);
    }
    Ok(Some(GoodSummand { index: j, basis: out }))
}

/// `θ|_{H₀}` in the restriction chart of `h0`, for `θ(α₀) = 0`.
///
/// The result is checked to lie in `D(A^{H₀}, m^{H₀})`.
pub fn restrict_derivation(a: &Multiarrangement, h0: usize, theta: &Derivation) -> Result<Derivation> {
    a.check_index(h0)?;
    if !theta.apply_linear(a.hyperplane(h0).normal()).is_zero() {
        return Err(Error::NotTangent);
    }
    if !theta.is_member(a) {
        return Err(Error::NotInModule(0));
    }
    let r = a.euler_ziegler_restriction(h0)?;
    let n = a.dim();
    let coeffs: Vec<Polynomial> = (1..n)
        .map(|k| {
            theta
                .apply_linear(r.chart.row(k))
                .in_coordinates(&r.chart_inverse)
                .restrict_first_to_zero()
        })
        .collect();
    let restricted = Derivation::new(coeffs)?;
    if !restricted.is_member(&r.arrangement) {
        return Err(Error::Precondition("restricted derivation left the module".into()));
    }
    Ok(restricted)
}

/// `dim D(A,m)_d` for `d = 0..=cap`.
pub fn graded_dimensions(a: &Multiarrangement, cap: u32) -> Vec<u64> {
    (0..=cap).map(|d| derivation_space_dim(a, d) as u64).collect()
}
