use num::Zero;

use super::Multiarrangement;
use crate::exactalg::{Matrix, Rational};

/// Finest splitting `A = A_1 × … × A_k` (plus a non-essential factor).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// Hyperplane indices per block, each sorted; blocks ordered by first index.
    pub blocks: Vec<Vec<usize>>,
    pub nonessential_dim: usize,
}

impl Decomposition {
    pub fn is_irreducible(&self) -> bool {
        self.blocks.len() == 1
    }
}

fn find(parent: &mut [usize], i: usize) -> usize {
    let mut r = i;
    while parent[r] != r {
        r = parent[r];
    }
    let mut j = i;
    while parent[j] != r {
        let next = parent[j];
        parent[j] = r;
        j = next;
    }
    r
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}

impl Multiarrangement {
    /// Connected components of the matroid of normals.
    ///
    /// Every non-basis hyperplane is merged with the basis hyperplanes that
    /// appear in its expansion (its fundamental circuit); the resulting classes
    /// are the irreducible factors.
    pub fn reducibility(&self) -> Decomposition {
        let n = self.len();
        let mut basis: Vec<usize> = Vec::new();
        let mut circuits: Vec<(usize, Vec<usize>)> = Vec::new();
        for i in 0..n {
            if basis.is_empty() {
                basis.push(i);
                continue;
            }
            let coeffs = self.expand_in(&basis, i);
            match coeffs {
                None => basis.push(i),
                Some(c) => {
                    let support = basis
                        .iter()
                        .zip(&c)
                        .filter(|(_, v)| !v.is_zero())
                        .map(|(&b, _)| b)
                        .collect();
                    circuits.push((i, support));
                }
            }
        }
        let mut parent: Vec<usize> = (0..n).collect();
        for (i, support) in &circuits {
            for &b in support {
                union(&mut parent, *i, b);
            }
        }
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut root_to_block: Vec<Option<usize>> = vec![None; n];
        for i in 0..n {
            let r = find(&mut parent, i);
            match root_to_block[r] {
                Some(b) => blocks[b].push(i),
                None => {
                    root_to_block[r] = Some(blocks.len());
                    blocks.push(vec![i]);
                }
            }
        }
        Decomposition {
            blocks,
            nonessential_dim: self.dim - basis.len(),
        }
    }

    /// Coefficients of normal `i` in the independent normals `basis`, if it lies in their span.
    fn expand_in(&self, basis: &[usize], i: usize) -> Option<Vec<Rational>> {
        // columns are the basis normals, augmented by the target
        let k = basis.len();
        let mut rows = vec![vec![Rational::zero(); k + 1]; self.dim];
        for (c, &b) in basis.iter().enumerate() {
            for (r, v) in self.hyperplanes[b].normal.iter().enumerate() {
                rows[r][c] = v.clone();
            }
        }
        for (r, v) in self.hyperplanes[i].normal.iter().enumerate() {
            rows[r][k] = v.clone();
        }
        let (red, pivots) = Matrix::from_rows(k + 1, rows).rref();
        if pivots.contains(&k) {
            return None;
        }
        let mut c = vec![Rational::zero(); k];
        for (row, &p) in pivots.iter().enumerate() {
            c[p] = red.get(row, k).clone();
        }
        Some(c)
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn split_examples() {
        let a = Multiarrangement::simple_from_ints(3, &[&[1, 0, 0], &[0, 1, 0], &[1, -1, 0], &[0, 0, 1]])
            .unwrap();
        let d = a.reducibility();
        assert_eq!(d.blocks, vec![vec![0, 1, 2], vec![3]]);
        assert_eq!(d.nonessential_dim, 0);
        assert!(!d.is_irreducible());

        assert!(braid().reducibility().is_irreducible());

        let xy = Multiarrangement::simple_from_ints(3, &[&[1, 0, 0], &[0, 1, 0]]).unwrap();
        let d = xy.reducibility();
        assert_eq!(d.blocks, vec![vec![0], vec![1]]);
        assert_eq!(d.nonessential_dim, 1);
    }

    #[test]
    fn block_ranks_add_up() {
        for a in [braid(), two_heavy(), rank4_flag(), boolean(&[1, 2, 3])] {
            let d = a.reducibility();
            let sum: usize = d.blocks.iter().map(|b| a.subarrangement(b).rank()).sum();
            assert_eq!(sum, a.rank());
        }
    }

    #[test]
    fn hidden_product() {
        // x, y, x+y together with z+w, z−w, w: normals mix no coordinates across the blocks
        let a = Multiarrangement::simple_from_ints(
            4,
            &[&[0, 0, 1, 1], &[1, 0, 0, 0], &[0, 0, 1, -1], &[0, 1, 0, 0], &[0, 0, 0, 1], &[1, 1, 0, 0]],
        )
        .unwrap();
        assert_eq!(a.reducibility().blocks, vec![vec![0, 2, 4], vec![1, 3, 5]]);
    }
}
