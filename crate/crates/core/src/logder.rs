//! Polynomial derivations and the graded pieces of `D(A,m)`.

use std::fmt;

use num::{One, Zero};

use crate::arrangement::Multiarrangement;
use crate::error::{Error, Result};
use crate::exactalg::{
    echelon_basis, linear_change_to_coordinate, monomials_of_degree, poly_matrix_det,
    rank_and_kernel, variable_names, Matrix, Polynomial, Rational,
};

/// `θ = Σ θ(x_i) ∂_{x_i}`, stored by the images of the coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    coeffs: Vec<Polynomial>,
}

impl Derivation {
    pub fn new(coeffs: Vec<Polynomial>) -> Result<Self> {
        let n = coeffs.len();
        if let Some(c) = coeffs.iter().find(|c| c.nvars() != n) {
            return Err(Error::VariableMismatch(n, c.nvars()));
        }
        let degrees: Vec<u32> = coeffs.iter().filter_map(|c| c.degree()).collect();
        if coeffs.iter().any(|c| !c.is_homogeneous()) || degrees.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::Precondition("derivation is not homogeneous".into()));
        }
        Ok(Derivation { coeffs })
    }

    pub fn zero(n: usize) -> Self {
        Derivation {
            coeffs: vec![Polynomial::zero(n); n],
        }
    }

    /// `θ_E = Σ x_i ∂_{x_i}`.
    pub fn euler(n: usize) -> Self {
        Derivation {
            coeffs: (0..n).map(|i| Polynomial::var(n, i)).collect(),
        }
    }

    /// `f ∂_{x_i}`.
    pub fn along(n: usize, i: usize, f: Polynomial) -> Self {
        let mut coeffs = vec![Polynomial::zero(n); n];
        coeffs[i] = f;
        Derivation { coeffs }
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Polynomial degree; `None` for the zero derivation.
    pub fn pdeg(&self) -> Option<u32> {
        self.coeffs.iter().find_map(|c| c.degree())
    }

    /// `θ(α)` for the linear form with the given normal.
    pub fn apply_linear(&self, normal: &[Rational]) -> Polynomial {
        self.coeffs
            .iter()
            .zip(normal)
            .filter(|(_, a)| !a.is_zero())
            .fold(Polynomial::zero(self.nvars()), |acc, (c, a)| &acc + &c.scale(a))
    }

    pub fn scale(&self, c: &Rational) -> Derivation {
        Derivation {
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn mul_poly(&self, f: &Polynomial) -> Derivation {
        Derivation {
            coeffs: self.coeffs.iter().map(|p| p * f).collect(),
        }
    }

    pub fn add(&self, other: &Derivation) -> Derivation {
        Derivation {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Derivation) -> Derivation {
        Derivation {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    /// Whether `θ(α_H) ∈ α_H^{m(H)} S` for every hyperplane of `a`.
    pub fn is_member(&self, a: &Multiarrangement) -> bool {
        self.first_violation(a).is_none()
    }

    /// Index of the first hyperplane whose divisibility condition fails.
    pub fn first_violation(&self, a: &Multiarrangement) -> Option<usize> {
        if a.dim() != self.nvars() {
            return Some(0);
        }
        (0..a.len()).find(|&i| {
            let h = a.hyperplane(i);
            let image = self.apply_linear(h.normal());
            if image.is_zero() {
                return false;
            }
            let (_, t_inv) = linear_change_to_coordinate(h.normal()).expect("normals are nonzero");
            image.in_coordinates(&t_inv).min_exponent(0).unwrap_or(u32::MAX) < a.mult(i) as u32
        })
    }

    /// Coefficient vector in the monomial basis used by [`derivation_space`].
    pub fn to_vector(&self, d: u32) -> Vec<Rational> {
        let monos = monomials_of_degree(self.nvars(), d);
        self.coeffs
            .iter()
            .flat_map(|c| monos.iter().map(move |m| c.coeff(m)))
            .collect()
    }

    pub fn from_vector(n: usize, d: u32, v: &[Rational]) -> Derivation {
        let monos = monomials_of_degree(n, d);
        let k = monos.len();
        Derivation {
            coeffs: (0..n)
                .map(|i| {
                    monos.iter().enumerate().fold(Polynomial::zero(n), |acc, (j, m)| {
                        let c = &v[i * k + j];
                        if c.is_zero() {
                            acc
                        } else {
                            &acc + &Polynomial::monomial(n, m.clone(), c.clone())
                        }
                    })
                })
                .collect(),
        }
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = variable_names(self.nvars());
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let s = c.fmt_with(&names);
                if c.num_terms() > 1 {
                    format!("({s})*d{}", names[i])
                } else {
                    format!("{s}*d{}", names[i])
                }
            })
            .collect();
        if parts.is_empty() {
            return f.write_str("0");
        }
        for (k, p) in parts.iter().enumerate() {
            match (k, p.strip_prefix('-')) {
                (0, _) => f.write_str(p)?,
                (_, Some(rest)) => write!(f, " - {rest}")?,
                (_, None) => write!(f, " + {p}")?,
            }
        }
        Ok(())
    }
}

/// `det [θ_j(x_i)]`.
pub fn saito_determinant(thetas: &[Derivation]) -> Result<Polynomial> {
    let n = thetas.first().map_or(0, |t| t.nvars());
    if thetas.len() != n {
        return Err(Error::WrongCount {
            expected: n,
            found: thetas.len(),
        });
    }
    let m: Vec<Vec<Polynomial>> = (0..n)
        .map(|i| thetas.iter().map(|t| t.coeffs[i].clone()).collect())
        .collect();
    poly_matrix_det(&m)
}

/// Linear constraints on degree-`d` coefficient vectors expressing
/// `θ(α) ∈ α^μ S`: in a chart where `α` is the first coordinate, every
/// monomial of `θ(α)` with first exponent below `μ` must vanish.
fn divisibility_constraints(n: usize, d: u32, normal: &[Rational], mu: u64) -> Matrix {
    let monos = monomials_of_degree(n, d);
    let k = monos.len();
    let (_, t_inv) = linear_change_to_coordinate(normal).expect("normals are nonzero");
    let images: Vec<Polynomial> = monos
        .iter()
        .map(|m| Polynomial::monomial(n, m.clone(), Rational::one()).in_coordinates(&t_inv))
        .collect();
    let low: Vec<_> = monos.iter().filter(|m| (m[0] as u64) < mu).cloned().collect();
    let mut rows = Vec::with_capacity(low.len());
    for target in &low {
        let mut row = vec![Rational::zero(); n * k];
        for (j, img) in images.iter().enumerate() {
            let c = img.coeff(target);
            if c.is_zero() {
                continue;
            }
            for (i, a) in normal.iter().enumerate() {
                if !a.is_zero() {
                    row[i * k + j] = &c * a;
                }
            }
        }
        if row.iter().any(|v| !v.is_zero()) {
            rows.push(row);
        }
    }
    Matrix::from_rows(n * k, rows)
}

/// Echelon basis of `D(A,m)_d`.
///
/// Hyperplanes are imposed one at a time, heaviest first, shrinking the
/// current solution space; the final basis is in reduced echelon form with
/// respect to the coefficient vector layout of [`Derivation::to_vector`].
pub fn derivation_space(a: &Multiarrangement, d: u32) -> Vec<Derivation> {
    let n = a.dim();
    if n == 0 {
        return Vec::new();
    }
    let width = n * monomials_of_degree(n, d).len();
    let mut order: Vec<usize> = (0..a.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(a.mult(i)));
    // None stands for the whole space
    let mut basis: Option<Vec<Vec<Rational>>> = None;
    for i in order {
        let c = divisibility_constraints(n, d, a.hyperplane(i).normal(), a.mult(i));
        if c.rows() == 0 {
            continue;
        }
        basis = Some(match basis {
            None => rank_and_kernel(&c).1,
            Some(k) => {
                if k.is_empty() {
                    return Vec::new();
                }
                let projected: Vec<Vec<Rational>> = (0..c.rows())
                    .map(|r| k.iter().map(|v| crate::exactalg::dot(c.row(r), v)).collect())
                    .collect();
                let (_, ker) = rank_and_kernel(&Matrix::from_rows(k.len(), projected));
                ker.iter()
                    .map(|coef| {
                        let mut v = vec![Rational::zero(); width];
                        for (cj, kj) in coef.iter().zip(&k) {
                            if cj.is_zero() {
                                continue;
                            }
                            for (vi, ki) in v.iter_mut().zip(kj) {
                                if !ki.is_zero() {
                                    *vi += cj * ki;
                                }
                            }
                        }
                        v
                    })
                    .collect()
            }
        });
    }
    let vectors = match basis {
        None => (0..width)
            .map(|j| {
                let mut v = vec![Rational::zero(); width];
                v[j] = Rational::one();
                v
            })
            .collect(),
        Some(k) => echelon_basis(width, k),
    };
    vectors.iter().map(|v| Derivation::from_vector(n, d, v)).collect()
}

/// `dim_K D(A,m)_d`.
pub fn derivation_space_dim(a: &Multiarrangement, d: u32) -> usize {
    derivation_space(a, d).len()
}
