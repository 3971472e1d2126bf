//! Exact rational scalars, dense matrices and multivariate polynomials.
//!
//! Everything here is exact; there is no floating-point path anywhere in the
//! crate.

mod matrix;
mod poly;

pub use matrix::{dot, echelon_basis, linear_change_to_coordinate, rank_and_kernel, Matrix};
pub use poly::{
    det_bareiss, monomials_of_degree, poly_matrix_det, poly_mul, variable_names, Monomial,
    Polynomial,
};

use num::{BigInt, BigRational, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        None => s.parse::<BigInt>().map(Rational::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// Scales a nonzero vector so that its first nonzero entry is 1.
pub fn canonicalize(v: &[Rational]) -> Option<Vec<Rational>> {
    let lead = v.iter().find(|c| !c.is_zero())?.clone();
    Some(v.iter().map(|c| c / &lead).collect())
}
