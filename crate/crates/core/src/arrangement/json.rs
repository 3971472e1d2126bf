use num::One;
use serde::{Deserialize, Serialize};

use super::Multiarrangement;
use crate::error::{Error, Result};
use crate::exactalg::{parse_rational, Rational};

/// A coordinate as written in arrangement files: an integer or a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coordinate {
    Int(i64),
    Text(String),
}

impl Coordinate {
    fn to_rational(&self) -> Result<Rational> {
        match self {
            Coordinate::Int(v) => Ok(crate::exactalg::rat(*v)),
            Coordinate::Text(s) => parse_rational(s),
        }
    }

    fn from_rational(r: &Rational) -> Self {
        if r.denom().is_one() {
            if let Ok(v) = r.numer().to_string().parse::<i64>() {
                return Coordinate::Int(v);
            }
        }
        Coordinate::Text(r.to_string())
    }
}

/// On-disk form of a multiarrangement.
///
/// `mult` may be omitted, meaning every hyperplane has multiplicity 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementFile {
    pub dim: usize,
    pub hyperplanes: Vec<Vec<Coordinate>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mult: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl ArrangementFile {
    pub fn into_arrangement(self) -> Result<Multiarrangement> {
        let normals = self
            .hyperplanes
            .iter()
            .map(|row| row.iter().map(Coordinate::to_rational).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let mult = match self.mult {
            None => vec![1; normals.len()],
            Some(m) => m
                .iter()
                .enumerate()
                .map(|(i, &v)| u64::try_from(v).ok().filter(|&v| v > 0).ok_or(Error::NonPositiveMultiplicity(i)))
                .collect::<Result<Vec<_>>>()?,
        };
        let a = Multiarrangement::new(self.dim, normals, mult)?;
        match self.labels {
            Some(l) => a.with_labels(l),
            None => Ok(a),
        }
    }

    pub fn from_arrangement(a: &Multiarrangement) -> Self {
        ArrangementFile {
            dim: a.dim(),
            hyperplanes: a
                .hyperplanes()
                .iter()
                .map(|h| h.normal().iter().map(Coordinate::from_rational).collect())
                .collect(),
            mult: Some(a.multiplicities().iter().map(|&m| m as i64).collect()),
            labels: a.labels().map(|l| l.to_vec()),
        }
    }
}

impl Multiarrangement {
    /// Parses the JSON arrangement format.
    pub fn parse(text: &str) -> Result<Self> {
        let file: ArrangementFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        file.into_arrangement()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ArrangementFile::from_arrangement(self)).expect("plain data serializes")
    }
}
