use std::collections::BTreeMap;

use super::{in_row_space, Multiarrangement};
use crate::error::{Error, Result};
use crate::exactalg::Matrix;

/// An element `X` of the intersection lattice.
///
/// `basis` is the reduced echelon basis of the span of the member normals, so
/// `X` is its kernel and `codim` its row count. `members` lists, in increasing
/// order, every hyperplane containing `X`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Flat {
    codim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
    members: Vec<usize>,
}

impl Flat {
    pub fn codim(&self) -> usize {
        self.codim
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains_hyperplane(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    /// `self ⊆ other` as subspaces.
    pub fn is_contained_in(&self, other: &Flat) -> bool {
        other.members.iter().all(|m| self.contains_hyperplane(*m))
    }
}

/// Flats grouped by codimension, `L_1 … L_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    levels: Vec<Vec<Flat>>,
}

impl Lattice {
    /// `L_r`; empty for `r = 0` or `r` beyond the computed range.
    pub fn flats(&self, r: usize) -> &[Flat] {
        if r == 0 {
            return &[];
        }
        self.levels.get(r - 1).map_or(&[], |v| v.as_slice())
    }

    pub fn max_codim(&self) -> usize {
        self.levels.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Flat> {
        self.levels.iter().flatten()
    }
}

impl Multiarrangement {
    /// The flat `∩_{i ∈ generators} H_i`, with its full member set.
    pub fn flat_of(&self, generators: &[usize]) -> Flat {
        let rows: Vec<_> = generators
            .iter()
            .map(|&i| self.hyperplanes[i].normal.clone())
            .collect();
        let (r, pivots) = Matrix::from_rows(self.dim, rows).rref();
        let codim = pivots.len();
        let basis = Matrix::from_rows(self.dim, (0..codim).map(|i| r.row(i).to_vec()).collect());
        let members = (0..self.len())
            .filter(|&i| in_row_space(&basis, &pivots, &self.hyperplanes[i].normal))
            .collect();
        Flat {
            codim,
            basis,
            pivots,
            members,
        }
    }

    /// All flats of codimension `1..=max_codim` (capped at the rank).
    ///
    /// Each level is sorted lexicographically by member sets.
    pub fn intersection_lattice(&self, max_codim: usize) -> Lattice {
        let mut levels: Vec<Vec<Flat>> = Vec::new();
        let max_codim = max_codim.min(self.dim);
        if max_codim == 0 || self.is_empty() {
            return Lattice { levels };
        }
        let mut current: BTreeMap<Vec<usize>, Flat> = BTreeMap::new();
        for i in 0..self.len() {
            let f = self.flat_of(&[i]);
            current.insert(f.members.clone(), f);
        }
        levels.push(current.values().cloned().collect());
        for r in 2..=max_codim {
            let mut next: BTreeMap<Vec<usize>, Flat> = BTreeMap::new();
            for x in &levels[r - 2] {
                for h in 0..self.len() {
                    if x.contains_hyperplane(h) {
                        continue;
                    }
                    // a known codim-r flat inside X and H is X ∩ H itself
                    if next
                        .values()
                        .any(|y| y.contains_hyperplane(h) && x.members.iter().all(|&m| y.contains_hyperplane(m)))
                    {
                        continue;
                    }
                    let mut gens = x.members.clone();
                    gens.push(h);
                    let f = self.flat_of(&gens);
                    debug_assert_eq!(f.codim, r);
                    next.entry(f.members.clone()).or_insert(f);
                }
            }
            if next.is_empty() {
                break;
            }
            levels.push(next.into_values().collect());
        }
        Lattice { levels }
    }

    /// `L_2(A)`.
    pub fn codim2_flats(&self) -> Vec<Flat> {
        self.intersection_lattice(2).flats(2).to_vec()
    }

    /// The codim-2 flats `H₀ ∩ H`, `H ≠ H₀`, each listed once with all members.
    pub fn restriction_flats(&self, h0: usize) -> Result<Vec<Flat>> {
        self.check_index(h0)?;
        let mut out: BTreeMap<Vec<usize>, Flat> = BTreeMap::new();
        for h in 0..self.len() {
            if h == h0 || out.values().any(|f| f.contains_hyperplane(h)) {
                continue;
            }
            let f = self.flat_of(&[h0, h]);
            out.insert(f.members.clone(), f);
        }
        Ok(out.into_values().collect())
    }

    /// `(A_X, m_X)`: members of `x` with inherited multiplicities, same ambient space.
    pub fn localization(&self, x: &Flat) -> Result<Multiarrangement> {
        if x.basis.cols() != self.dim || x.members.iter().any(|&i| i >= self.len()) {
            return Err(Error::NotAFlat);
        }
        if *x != self.flat_of(&x.members) {
            return Err(Error::NotAFlat);
        }
        Ok(self.subarrangement(&x.members))
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    fn sizes(flats: &[Flat]) -> Vec<usize> {
        let mut s: Vec<usize> = flats.iter().map(|f| f.members().len()).collect();
        s.sort_unstable();
        s
    }

    #[test]
    fn boolean_codim2() {
        let l = boolean(&[1, 1, 1]).intersection_lattice(3);
        assert_eq!(sizes(l.flats(2)), vec![2, 2, 2]);
        assert_eq!(l.flats(3).len(), 1);
    }

    #[test]
    fn braid_codim2() {
        let f = braid().codim2_flats();
        assert_eq!(sizes(&f), vec![2, 2, 2, 3, 3, 3, 3]);
    }

    #[test]
    fn rank4_example_codim2() {
        let f = rank4_flag().codim2_flats();
        assert_eq!(f.len(), 28);
        let s = sizes(&f);
        assert_eq!(s.iter().filter(|&&k| k == 2).count(), 21);
        assert_eq!(s.iter().filter(|&&k| k == 3).count(), 6);
        assert_eq!(s.iter().filter(|&&k| k == 4).count(), 1);
    }

    #[test]
    fn flats_are_sorted_by_members() {
        let f = braid().codim2_flats();
        let keys: Vec<_> = f.iter().map(|x| x.members().to_vec()).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn localizations() {
        let b = boolean(&[2, 3, 4]);
        let x = b.flat_of(&[0, 1]);
        let loc = b.localization(&x).unwrap();
        assert_eq!(loc.multiplicities(), &[2, 3]);
        assert_eq!(loc.dim(), 3);

        // x ∩ z in the six-line family is the triple point {x, x−z, z}
        let e = six_lines(1, 2);
        let x = e.flat_of(&[0, 5]);
        assert_eq!(x.members(), &[0, 2, 5]);
        assert_eq!(e.localization(&x).unwrap().multiplicities(), &[1, 1, 2]);

        let h = e.flat_of(&[3]);
        assert_eq!(h.codim(), 1);
        assert_eq!(e.localization(&h).unwrap().len(), 1);

        let other = braid().flat_of(&[0, 1]);
        assert_eq!(boolean(&[1, 1, 1]).localization(&other), Err(Error::NotAFlat));
    }

    #[test]
    fn restriction_flat_examples() {
        let members = |a: &Multiarrangement, h| -> Vec<Vec<usize>> {
            a.restriction_flats(h)
                .unwrap()
                .iter()
                .map(|f| f.members().to_vec())
                .collect()
        };
        assert_eq!(members(&boolean(&[1, 1, 1]), 2), vec![vec![0, 2], vec![1, 2]]);
        // the six-line family, z: {x, x−z, z}, {x−y, z}, {y, y−z, z}
        assert_eq!(
            members(&six_lines(1, 2), 5),
            vec![vec![0, 2, 5], vec![1, 5], vec![3, 4, 5]]
        );
        // braid, x−y (index 3): {x,y,x−y}, {z,x−y}, {x−y,x−z,y−z}
        assert_eq!(
            members(&braid(), 3),
            vec![vec![0, 1, 3], vec![2, 3], vec![3, 4, 5]]
        );
        assert!(boolean(&[1, 1, 1]).restriction_flats(3).is_err());
    }
}
