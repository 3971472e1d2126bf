//! Multiarrangements of central hyperplanes and their combinatorics.
//!
//! A [`Multiarrangement`] is a list of pairwise distinct hyperplanes through the
//! origin of `K^ℓ` (`K = ℚ`), each with a positive multiplicity. Hyperplanes are
//! stored by their canonical normal (first nonzero coordinate equal to 1), so
//! two hyperplanes coincide exactly when their stored normals are equal.

mod json;
mod lattice;
mod reducibility;
mod restriction;

pub use json::{ArrangementFile, Coordinate};
pub use lattice::{Flat, Lattice};
pub use reducibility::Decomposition;
pub use restriction::Restriction;

use std::fmt;

use num::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{canonicalize, variable_names, Matrix, Polynomial, Rational};

/// A linear hyperplane `ker α_H`, stored by its canonical normal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    normal: Vec<Rational>,
}

impl Hyperplane {
    pub fn new(normal: Vec<Rational>) -> Result<Self> {
        let normal = canonicalize(&normal).ok_or(Error::ZeroForm)?;
        Ok(Hyperplane { normal })
    }

    pub fn from_ints(normal: &[i64]) -> Result<Self> {
        Hyperplane::new(normal.iter().map(|&v| crate::exactalg::rat(v)).collect())
    }

    pub fn normal(&self) -> &[Rational] {
        &self.normal
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// The defining form `α_H` as a polynomial.
    pub fn form(&self) -> Polynomial {
        Polynomial::linear_form(&self.normal)
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.form().to_string())
    }
}

/// A multiarrangement `(A, m)` in `K^dim`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multiarrangement {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
    mult: Vec<u64>,
    labels: Option<Vec<String>>,
}

impl Multiarrangement {
    pub fn new(dim: usize, normals: Vec<Vec<Rational>>, mult: Vec<u64>) -> Result<Self> {
        if normals.len() != mult.len() {
            return Err(Error::Parse(format!(
                "{} hyperplanes but {} multiplicities",
                normals.len(),
                mult.len()
            )));
        }
        let mut hyperplanes: Vec<Hyperplane> = Vec::with_capacity(normals.len());
        for (i, n) in normals.into_iter().enumerate() {
            if n.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: n.len(),
                });
            }
            let h = Hyperplane::new(n).map_err(|_| Error::ZeroNormal(i))?;
            if let Some(j) = hyperplanes.iter().position(|g| *g == h) {
                return Err(Error::DuplicateHyperplane(j, i));
            }
            hyperplanes.push(h);
        }
        if let Some(i) = mult.iter().position(|&m| m == 0) {
            return Err(Error::NonPositiveMultiplicity(i));
        }
        Ok(Multiarrangement {
            dim,
            hyperplanes,
            mult,
            labels: None,
        })
    }

    /// Convenience constructor from integer normals.
    pub fn from_ints(dim: usize, normals: &[&[i64]], mult: &[u64]) -> Result<Self> {
        Multiarrangement::new(
            dim,
            normals
                .iter()
                .map(|n| n.iter().map(|&v| crate::exactalg::rat(v)).collect())
                .collect(),
            mult.to_vec(),
        )
    }

    /// Simple arrangement from integer normals.
    pub fn simple_from_ints(dim: usize, normals: &[&[i64]]) -> Result<Self> {
        Multiarrangement::from_ints(dim, normals, &vec![1; normals.len()])
    }

    pub(crate) fn from_parts(dim: usize, hyperplanes: Vec<Hyperplane>, mult: Vec<u64>) -> Self {
        debug_assert_eq!(hyperplanes.len(), mult.len());
        Multiarrangement {
            dim,
            hyperplanes,
            mult,
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.hyperplanes.len() {
            return Err(Error::Parse(format!(
                "{} labels for {} hyperplanes",
                labels.len(),
                self.hyperplanes.len()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn hyperplane(&self, i: usize) -> &Hyperplane {
        &self.hyperplanes[i]
    }

    pub fn multiplicities(&self) -> &[u64] {
        &self.mult
    }

    pub fn mult(&self, i: usize) -> u64 {
        self.mult[i]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label of hyperplane `i`, falling back to its defining form.
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => self.hyperplanes[i].to_string(),
        }
    }

    /// `|m|`.
    pub fn total_multiplicity(&self) -> u64 {
        self.mult.iter().sum()
    }

    pub fn is_simple(&self) -> bool {
        self.mult.iter().all(|&m| m == 1)
    }

    /// The same hyperplanes with all multiplicities 1.
    pub fn underlying(&self) -> Multiarrangement {
        Multiarrangement {
            mult: vec![1; self.len()],
            ..self.clone()
        }
    }

    pub fn index_of(&self, h: &Hyperplane) -> Option<usize> {
        self.hyperplanes.iter().position(|g| g == h)
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::NoSuchHyperplane(i))
        }
    }

    /// Stacked normals, one row per hyperplane.
    pub fn normal_matrix(&self) -> Matrix {
        Matrix::from_rows(
            self.dim,
            self.hyperplanes.iter().map(|h| h.normal.clone()).collect(),
        )
    }

    pub fn rank(&self) -> usize {
        if self.is_empty() {
            return 0;
        }
        self.normal_matrix().rank()
    }

    pub fn is_essential(&self) -> bool {
        self.rank() == self.dim
    }

    /// `Q(A,m) = Π α_H^{m(H)}`.
    pub fn defining_polynomial(&self) -> Polynomial {
        self.hyperplanes
            .iter()
            .zip(&self.mult)
            .fold(Polynomial::one(self.dim), |acc, (h, &m)| {
                &acc * &h.form().pow(m as u32)
            })
    }

    /// The deletion `(A′, m′)` with respect to hyperplane `i`.
    pub fn deletion(&self, i: usize) -> Result<Multiarrangement> {
        self.check_index(i)?;
        let mut out = self.clone();
        if out.mult[i] == 1 {
            out.hyperplanes.remove(i);
            out.mult.remove(i);
            if let Some(l) = out.labels.as_mut() {
                l.remove(i);
            }
        } else {
            out.mult[i] -= 1;
        }
        Ok(out)
    }

    /// Replaces the multiplicity of hyperplane `i`.
    pub fn with_multiplicity(&self, i: usize, m: u64) -> Result<Multiarrangement> {
        self.check_index(i)?;
        if m == 0 {
            return Err(Error::NonPositiveMultiplicity(i));
        }
        let mut out = self.clone();
        out.mult[i] = m;
        Ok(out)
    }

    /// Adds a hyperplane, or raises its multiplicity by `m` if already present.
    pub fn add_hyperplane(&self, h: Hyperplane, m: u64) -> Result<Multiarrangement> {
        if h.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: h.dim(),
            });
        }
        if m == 0 {
            return Err(Error::NonPositiveMultiplicity(self.len()));
        }
        let mut out = self.clone();
        match out.index_of(&h) {
            Some(i) => out.mult[i] += m,
            None => {
                out.hyperplanes.push(h.clone());
                out.mult.push(m);
                if let Some(l) = out.labels.as_mut() {
                    l.push(h.to_string());
                }
            }
        }
        Ok(out)
    }

    /// The sub-multiarrangement on the given hyperplane indices, same ambient space.
    pub fn subarrangement(&self, indices: &[usize]) -> Multiarrangement {
        Multiarrangement {
            dim: self.dim,
            hyperplanes: indices.iter().map(|&i| self.hyperplanes[i].clone()).collect(),
            mult: indices.iter().map(|&i| self.mult[i]).collect(),
            labels: self
                .labels
                .as_ref()
                .map(|l| indices.iter().map(|&i| l[i].clone()).collect()),
        }
    }

    /// Projects onto the span of the normals.
    ///
    /// Returns the essential arrangement in `K^rank` together with the number of
    /// dropped (non-essential) dimensions. Coordinates are taken at the pivot
    /// columns of the reduced echelon basis of the row space, which keeps every
    /// normal canonical.
    pub fn essentialize(&self) -> (Multiarrangement, usize) {
        if self.is_empty() {
            return (Multiarrangement::from_parts(0, vec![], vec![]), self.dim);
        }
        let (_, pivots) = self.normal_matrix().rref();
        let r = pivots.len();
        let hyperplanes = self
            .hyperplanes
            .iter()
            .map(|h| Hyperplane {
                normal: pivots.iter().map(|&p| h.normal[p].clone()).collect(),
            })
            .collect();
        let mut ess = Multiarrangement::from_parts(r, hyperplanes, self.mult.clone());
        ess.labels = self.labels.clone();
        (ess, self.dim - r)
    }

    /// Human-readable defining polynomial in factored form, e.g. `x^2*(x - y)*z^4`.
    pub fn factored_form(&self) -> String {
        let names = variable_names(self.dim);
        self.hyperplanes
            .iter()
            .zip(&self.mult)
            .map(|(h, &m)| {
                let f = h.form().fmt_with(&names);
                let f = if h.form().num_terms() > 1 {
                    format!("({f})")
                } else {
                    f
                };
                if m == 1 {
                    f
                } else {
                    format!("{f}^{m}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl fmt::Display for Multiarrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in K^{}", self.factored_form(), self.dim)
    }
}

/// Reduces `v` against an echelon basis; zero result means `v` lies in the span.
pub(crate) fn in_row_space(basis: &Matrix, pivots: &[usize], v: &[Rational]) -> bool {
    let mut w = v.to_vec();
    for (row, &p) in pivots.iter().enumerate() {
        let c = w[p].clone();
        if c.is_zero() {
            continue;
        }
        for (j, wj) in w.iter_mut().enumerate() {
            let b = basis.get(row, j);
            if !b.is_zero() {
                *wj -= &c * b;
            }
        }
    }
    w.iter().all(|x| x.is_zero())
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::exactalg::rat;

    #[test]
    fn canonical_normals() {
        let a = Multiarrangement::from_ints(3, &[&[2, -2, 0]], &[1]).unwrap();
        assert_eq!(a.hyperplane(0).normal(), &[rat(1), rat(-1), rat(0)]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            Multiarrangement::from_ints(2, &[&[0, 0]], &[1]),
            Err(Error::ZeroNormal(0))
        );
        assert_eq!(
            Multiarrangement::from_ints(2, &[&[1, 1], &[-3, -3]], &[1, 2]),
            Err(Error::DuplicateHyperplane(0, 1))
        );
        assert_eq!(
            Multiarrangement::from_ints(2, &[&[1, 1]], &[0]),
            Err(Error::NonPositiveMultiplicity(0))
        );
    }

    #[test]
    fn six_lines_size() {
        let a = six_lines(1, 2);
        assert_eq!(a.len(), 6);
        assert_eq!(a.total_multiplicity(), 7);
    }

    #[test]
    fn deletion_cases() {
        let xy = Multiarrangement::simple_from_ints(2, &[&[1, 0], &[0, 1]]).unwrap();
        let d = xy.deletion(0).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.hyperplane(0), xy.hyperplane(1));

        let a = Multiarrangement::from_ints(2, &[&[1, 0], &[0, 1]], &[2, 3]).unwrap();
        assert_eq!(a.deletion(0).unwrap().multiplicities(), &[1, 3]);

        let e = six_lines(1, 3);
        let d = e.deletion(5).unwrap();
        assert_eq!(d.multiplicities(), &[1, 1, 1, 1, 1, 2]);
        assert_eq!(d.total_multiplicity(), e.total_multiplicity() - 1);
        assert_eq!(e.deletion(6), Err(Error::NoSuchHyperplane(6)));
    }

    #[test]
    fn deletion_then_addition_is_identity() {
        let e = six_lines(2, 5);
        for i in 0..e.len() {
            let d = e.deletion(i).unwrap();
            let back = d.add_hyperplane(e.hyperplane(i).clone(), 1).unwrap();
            let j = back.index_of(e.hyperplane(i)).unwrap();
            assert_eq!(back.mult(j), e.mult(i));
            assert_eq!(back.total_multiplicity(), e.total_multiplicity());
        }
        let a = boolean(&[1, 3, 4]);
        let back = a.deletion(0).unwrap().add_hyperplane(a.hyperplane(0).clone(), 1).unwrap();
        assert_eq!(back.total_multiplicity(), a.total_multiplicity());
    }

    #[test]
    fn ranks() {
        assert_eq!(boolean(&[1, 1, 1]).rank(), 3);
        let xy = Multiarrangement::simple_from_ints(3, &[&[1, 0, 0], &[0, 1, 0]]).unwrap();
        assert_eq!(xy.rank(), 2);
        assert_eq!(two_heavy().rank(), 3);
    }

    #[test]
    fn essentialize_drops_free_directions() {
        let a = Multiarrangement::from_ints(3, &[&[1, 0, 1], &[0, 1, 1]], &[2, 1]).unwrap();
        let (e, k) = a.essentialize();
        assert_eq!(k, 1);
        assert_eq!(e.dim(), 2);
        assert!(e.is_essential());
        assert_eq!(e.multiplicities(), &[2, 1]);
    }

    #[test]
    fn factored_display() {
        assert_eq!(two_heavy().factored_form(), "x*(x - y)^2*(x - z)*y*(y - z)*z^2");
    }
}
