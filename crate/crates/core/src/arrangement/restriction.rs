use std::collections::BTreeMap;

use super::{Hyperplane, Multiarrangement};
use crate::error::{Error, Result};
use crate::exactalg::{linear_change_to_coordinate, Matrix, Rational};

/// The restriction of a multiarrangement onto one of its hyperplanes `H₀`.
///
/// The restricted arrangement lives in the chart `y = T x` with `y₁ = α₀`
/// (see [`linear_change_to_coordinate`]); its coordinates are `y₂ … y_ℓ`.
/// Restricted hyperplanes are ordered like the codim-2 flats `H₀ ∩ H`, that is
/// lexicographically by member sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
    pub h0: usize,
    /// `(A^{H₀}, m^{H₀})` with `m^{H₀}(X) = |m_X| − m(H₀)`.
    pub arrangement: Multiarrangement,
    /// For each restricted hyperplane `X`, the parent hyperplanes containing it (including `H₀`).
    pub groups: Vec<Vec<usize>>,
    pub chart: Matrix,
    pub chart_inverse: Matrix,
}

impl Restriction {
    /// Same restricted hyperplanes carrying another multiplicity (e.g. the Euler multiplicity).
    pub fn with_multiplicities(&self, mult: Vec<u64>) -> Result<Multiarrangement> {
        if mult.len() != self.arrangement.len() {
            return Err(Error::Precondition(format!(
                "{} multiplicities for {} restricted hyperplanes",
                mult.len(),
                self.arrangement.len()
            )));
        }
        if let Some(i) = mult.iter().position(|&m| m == 0) {
            return Err(Error::NonPositiveMultiplicity(i));
        }
        Ok(Multiarrangement::from_parts(
            self.arrangement.dim(),
            self.arrangement.hyperplanes().to_vec(),
            mult,
        ))
    }

    /// The restricted hyperplane `H₀ ∩ H` for a parent hyperplane `H ≠ H₀`.
    pub fn image_of(&self, parent: usize) -> Option<usize> {
        if parent == self.h0 {
            return None;
        }
        self.groups.iter().position(|g| g.contains(&parent))
    }

    /// Writes a parent-space normal in restricted coordinates (drops the `α₀` part).
    pub fn restrict_normal(&self, normal: &[Rational]) -> Vec<Rational> {
        self.chart_inverse.vec_mul(normal)[1..].to_vec()
    }
}

impl Multiarrangement {
    /// The Euler–Ziegler restriction onto hyperplane `h0`.
    pub fn euler_ziegler_restriction(&self, h0: usize) -> Result<Restriction> {
        self.check_index(h0)?;
        if self.dim < 2 {
            return Err(Error::DimensionTooSmall(2));
        }
        let (chart, chart_inverse) = linear_change_to_coordinate(&self.hyperplanes[h0].normal)?;
        let mut by_image: BTreeMap<Hyperplane, Vec<usize>> = BTreeMap::new();
        for (i, h) in self.hyperplanes.iter().enumerate() {
            if i == h0 {
                continue;
            }
            let restricted = chart_inverse.vec_mul(&h.normal)[1..].to_vec();
            let image = Hyperplane::new(restricted).expect("distinct hyperplanes meet H0 properly");
            by_image.entry(image).or_default().push(i);
        }
        let mut rows: Vec<(Vec<usize>, Hyperplane, u64)> = by_image
            .into_iter()
            .map(|(image, others)| {
                let m: u64 = others.iter().map(|&i| self.mult[i]).sum();
                let mut group = others;
                group.push(h0);
                group.sort_unstable();
                (group, image, m)
            })
            .collect();
        rows.sort_by(|a, b| a.0.cmp(&b.0));
        let groups = rows.iter().map(|r| r.0.clone()).collect();
        let arrangement = Multiarrangement::from_parts(
            self.dim - 1,
            rows.iter().map(|r| r.1.clone()).collect(),
            rows.iter().map(|r| r.2).collect(),
        );
        Ok(Restriction {
            h0,
            arrangement,
            groups,
            chart,
            chart_inverse,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::exactalg::rat;

    #[test]
    fn six_lines_restriction_onto_z() {
        for (a, m0) in [(1, 2), (2, 4), (3, 7)] {
            let r = six_lines(a, m0).euler_ziegler_restriction(5).unwrap();
            // x^{2a} y^{2a} (x−y)^a in the chart (x, y)
            let expect = Multiarrangement::from_ints(2, &[&[1, 0], &[1, -1], &[0, 1]], &[2 * a, a, 2 * a])
                .unwrap();
            let mut got: Vec<_> = r
                .arrangement
                .hyperplanes()
                .iter()
                .cloned()
                .zip(r.arrangement.multiplicities().iter().copied())
                .collect();
            got.sort();
            let mut want: Vec<_> = expect
                .hyperplanes()
                .iter()
                .cloned()
                .zip(expect.multiplicities().iter().copied())
                .collect();
            want.sort();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn boolean_restriction() {
        let r = boolean(&[2, 3, 4]).euler_ziegler_restriction(2).unwrap();
        assert_eq!(r.arrangement.multiplicities(), &[2, 3]);
        assert_eq!(r.arrangement.hyperplane(0).normal(), &[rat(1), rat(0)]);
        assert_eq!(r.groups, vec![vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn braid_ziegler_multiplicities() {
        let r = braid().euler_ziegler_restriction(3).unwrap();
        assert_eq!(r.groups, vec![vec![0, 1, 3], vec![2, 3], vec![3, 4, 5]]);
        assert_eq!(r.arrangement.multiplicities(), &[2, 1, 2]);
    }

    #[test]
    fn independent_of_h0_multiplicity() {
        for m0 in 1..6 {
            let a = six_lines(1, m0);
            let base = six_lines(1, 2).euler_ziegler_restriction(5).unwrap();
            assert_eq!(a.euler_ziegler_restriction(5).unwrap().arrangement, base.arrangement);
        }
    }

    #[test]
    fn restriction_multiplicities_are_positive() {
        let a = two_heavy();
        for h in 0..a.len() {
            let r = a.euler_ziegler_restriction(h).unwrap();
            let total: u64 = r.arrangement.total_multiplicity();
            assert_eq!(total, a.total_multiplicity() - a.mult(h));
            assert!(r.arrangement.multiplicities().iter().all(|&m| m >= 1));
        }
    }
}
