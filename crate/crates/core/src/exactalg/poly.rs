use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Signed, Zero};

use super::{Matrix, Rational};
use crate::error::{Error, Result};

/// Exponent vector of a monomial.
pub type Monomial = Vec<u32>;

/// Sparse multivariate polynomial over the rationals.
///
/// Terms are keyed by exponent vector; the map order is lexicographic with
/// `x₁ > x₂ > …`, and the greatest key is the leading monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Polynomial::monomial(nvars, vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Polynomial::constant(nvars, Rational::one())
    }

    pub fn monomial(nvars: usize, exps: Monomial, c: Rational) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Polynomial { nvars, terms }
    }

    /// The coordinate function `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Polynomial::monomial(nvars, e, Rational::one())
    }

    /// `Σ coeffs[i] x_i`.
    pub fn linear_form(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        let mut p = Polynomial::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; n];
                e[i] = 1;
                p.terms.insert(e, c.clone());
            }
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// The constant value if this polynomial has degree ≤ 0.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Smallest exponent of variable `i` over all terms; `None` for zero.
    pub fn min_exponent(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).min()
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    fn add_term(&mut self, e: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn add_scaled_shifted(&mut self, other: &Polynomial, c: &Rational, shift: &[u32]) {
        for (e, v) in &other.terms {
            let ne = e.iter().zip(shift).map(|(a, b)| a + b).collect();
            self.add_term(ne, v * c);
        }
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    ///
    /// Division by a single polynomial leaves a unique remainder, so the first
    /// leading term not divisible by `lt(d)` proves non-divisibility.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        assert_eq!(self.nvars, d.nvars, "variable count mismatch");
        let (dm, dc) = d.leading_term().expect("division by the zero polynomial");
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut p = self.clone();
        let mut q = Polynomial::zero(self.nvars);
        while let Some((pm, pc)) = p.leading_term() {
            if pm.iter().zip(&dm).any(|(a, b)| a < b) {
                return None;
            }
            let shift: Monomial = pm.iter().zip(&dm).map(|(a, b)| a - b).collect();
            let c = pc / &dc;
            p.add_scaled_shifted(d, &-c.clone(), &shift);
            q.add_term(shift, c);
        }
        Some(q)
    }

    /// Substitutes `x_i ↦ images[i]` for every variable.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.nvars);
        let out_vars = images.first().map_or(0, |p| p.nvars);
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(p.nvars)])
            .collect();
        let mut out = Polynomial::zero(out_vars);
        for (e, c) in &self.terms {
            let mut term = Polynomial::constant(out_vars, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][k as usize];
            }
            out = &out + &term;
        }
        out
    }

    /// Rewrites `self(x)` in coordinates `y = T x`, i.e. returns `self(T⁻¹ y)`.
    pub fn in_coordinates(&self, t_inv: &Matrix) -> Polynomial {
        let images: Vec<Polynomial> = (0..self.nvars)
            .map(|k| Polynomial::linear_form(t_inv.row(k)))
            .collect();
        self.substitute(&images)
    }

    /// Sets the first variable to zero and drops it.
    pub fn restrict_first_to_zero(&self) -> Polynomial {
        Polynomial {
            nvars: self.nvars - 1,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[0] == 0)
                .map(|(e, c)| (e[1..].to_vec(), c.clone()))
                .collect(),
        }
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        names[i].clone()
                    } else {
                        format!("{}^{}", names[i], k)
                    }
                })
                .collect();
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

/// Conventional variable names: x, y, z, w up to four variables, else x1..xn.
pub fn variable_names(n: usize) -> Vec<String> {
    if n <= 4 {
        ["x", "y", "z", "w"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&variable_names(self.nvars)))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_scaled_shifted(rhs, c, e);
        }
        out
    }
}

/// Checked product; errors when the variable counts differ.
pub fn poly_mul(a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
    if a.nvars != b.nvars {
        return Err(Error::VariableMismatch(a.nvars, b.nvars));
    }
    Ok(a * b)
}

fn check_square(m: &[Vec<Polynomial>]) -> Result<usize> {
    let n = m.len();
    for row in m {
        if row.len() != n {
            return Err(Error::NotSquare {
                rows: n,
                cols: row.len(),
            });
        }
    }
    if let Some(first) = m.first().and_then(|r| r.first()) {
        let v = first.nvars;
        if let Some(bad) = m.iter().flatten().find(|p| p.nvars != v) {
            return Err(Error::VariableMismatch(v, bad.nvars));
        }
    }
    Ok(n)
}

/// Determinant of a square polynomial matrix.
///
/// Uses explicit cofactor formulas up to 3×3 and fraction-free Bareiss
/// elimination beyond.
pub fn poly_matrix_det(m: &[Vec<Polynomial>]) -> Result<Polynomial> {
    let n = check_square(m)?;
    if n <= 3 {
        Ok(det_small(m))
    } else {
        det_bareiss(m)
    }
}

fn det_small(m: &[Vec<Polynomial>]) -> Polynomial {
    match m.len() {
        0 => Polynomial::one(0),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        3 => {
            let minor = |a: usize, b: usize, c: usize, d: usize| {
                &(&m[1][a] * &m[2][b]) - &(&m[1][c] * &m[2][d])
            };
            let t0 = &m[0][0] * &minor(1, 2, 2, 1);
            let t1 = &m[0][1] * &minor(0, 2, 2, 0);
            let t2 = &m[0][2] * &minor(0, 1, 1, 0);
            &(&t0 - &t1) + &t2
        }
        _ => unreachable!(),
    }
}

/// Bareiss fraction-free determinant over the polynomial ring.
pub fn det_bareiss(m: &[Vec<Polynomial>]) -> Result<Polynomial> {
    let n = check_square(m)?;
    if n == 0 {
        return Ok(Polynomial::one(0));
    }
    let nvars = m[0][0].nvars;
    let mut a: Vec<Vec<Polynomial>> = m.to_vec();
    let mut prev = Polynomial::one(nvars);
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(Polynomial::zero(nvars)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss step divides exactly");
            }
            a[i][k] = Polynomial::zero(nvars);
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -&det } else { det })
}

/// All exponent vectors of total degree `d` in `nvars` variables, in
/// decreasing lexicographic order.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(prefix: &mut Monomial, left: usize, d: u32, out: &mut Vec<Monomial>) {
        if left == 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=d).rev() {
            prefix.push(k);
            rec(prefix, left - 1, d - k, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(&mut Vec::new(), nvars, d, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    #[test]
    fn products() {
        assert_eq!(
            poly_mul(&x(2, 0), &x(2, 1)).unwrap(),
            Polynomial::monomial(2, vec![1, 1], rat(1))
        );
        let d = &x(2, 0) - &x(2, 1);
        let s = &x(2, 0) + &x(2, 1);
        let expect = &x(2, 0).pow(2) - &x(2, 1).pow(2);
        assert_eq!(&d * &s, expect);
        assert_eq!(
            poly_mul(&x(2, 0), &x(3, 0)),
            Err(Error::VariableMismatch(2, 3))
        );
    }

    #[test]
    fn exact_division() {
        let a = &x(2, 0) - &x(2, 1);
        let p = &a.pow(3) * &x(2, 1);
        assert_eq!(p.div_exact(&a.pow(2)).unwrap(), &a * &x(2, 1));
        assert!(p.div_exact(&x(2, 0)).is_none());
    }

    #[test]
    fn diagonal_determinant() {
        let n = 3;
        let z = Polynomial::zero(n);
        let m = vec![
            vec![x(n, 0).pow(2), z.clone(), z.clone()],
            vec![z.clone(), x(n, 1).pow(3), z.clone()],
            vec![z.clone(), z.clone(), x(n, 2).pow(4)],
        ];
        let expect = Polynomial::monomial(3, vec![2, 3, 4], rat(1));
        assert_eq!(poly_matrix_det(&m).unwrap(), expect);
        assert_eq!(det_bareiss(&m).unwrap(), expect);
    }

    #[test]
    fn euler_against_squares() {
        // columns θ_E = (x, y) and θ = (x², y²)
        let (a, b) = (x(2, 0), x(2, 1));
        let m = vec![vec![a.clone(), a.pow(2)], vec![b.clone(), b.pow(2)]];
        let expect = &(&a * &b.pow(2)) - &(&a.pow(2) * &b);
        assert_eq!(poly_matrix_det(&m).unwrap(), expect);
        let factored = -&(&(&a * &b) * &(&a - &b));
        assert_eq!(expect, factored);
    }

    #[test]
    fn proportional_columns_vanish() {
        let n = 3;
        let f = &x(n, 0) + &x(n, 2);
        let col1 = [x(n, 0), x(n, 1), x(n, 2), &x(n, 0) - &x(n, 1)];
        let m: Vec<Vec<Polynomial>> = (0..4)
            .map(|i| {
                vec![
                    col1[i].clone(),
                    &col1[i] * &f,
                    x(n, (i + 1) % 3),
                    x(n, 1).pow(i as u32),
                ]
            })
            .collect();
        assert!(poly_matrix_det(&m).unwrap().is_zero());
    }

    #[test]
    fn non_square_rejected() {
        let m = vec![vec![x(2, 0), x(2, 1)]];
        assert!(matches!(poly_matrix_det(&m), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn coordinate_change_puts_form_first() {
        use crate::exactalg::linear_change_to_coordinate;
        let form = [rat(1), rat(-1), rat(0)];
        let (_, inv) = linear_change_to_coordinate(&form).unwrap();
        let alpha = Polynomial::linear_form(&form);
        assert_eq!(alpha.in_coordinates(&inv), x(3, 0));
        let p = &alpha.pow(2) * &x(3, 2);
        assert_eq!(p.in_coordinates(&inv).min_exponent(0), Some(2));
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(4, 3).len(), 20);
        assert_eq!(monomials_of_degree(2, 0), vec![vec![0, 0]]);
    }

    #[test]
    fn display() {
        let p = &(&x(3, 0).pow(2) - &x(3, 1).scale(&rat(3))) + &Polynomial::constant(3, rat(-1));
        assert_eq!(p.to_string(), "x^2 - 3*y - 1");
    }
}
