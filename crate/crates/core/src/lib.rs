//! Exact computations on multiarrangements of hyperplanes: intersection
//! lattices, second Betti numbers, Euler–Ziegler restrictions and
//! certificates of freeness or non-freeness.

pub mod arrangement;
pub mod betti;
pub mod certify;
pub mod error;
pub mod exactalg;
pub mod logder;
pub mod oracle;
pub mod rank2;

pub use arrangement::{Flat, Hyperplane, Multiarrangement};
pub use error::{Error, Result};
pub use exactalg::Rational;
