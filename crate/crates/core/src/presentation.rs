//! Defining relations of the Temperley-Lieb-type algebra of a two-colored star.
//!
//! Generators are `p_0` (center) and `p_1..p_n` (leaves). Relations:
//!
//! * `p_k^2 = p_k` for every generator,
//! * `p_i p_0 p_i = t p_i` and `p_0 p_i p_0 = t p_0` for every leaf,
//! * `p_j p_i = p_i p_j` for a dashed pair `i < j`,
//! * `p_i p_j = p_j p_i = 0` for a non-dashed pair.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Zero};
use thiserror::Error;

use crate::graph::TwoColoredStar;
use crate::ncgb::{NcPolynomial, Word};
use crate::scalar::Scalar;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PresentationError {
    #[error("parameter t = {0} must lie strictly between 0 and 1")]
    ParameterOutOfRange(String),
    #[error("bad parameter `{0}`: expected `symbolic` or a fraction `p/q`")]
    BadParameter(String),
}

/// How the scalar `t` enters the relations.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum ParameterMode {
    /// `t` stays an indeterminate; coefficients live in `Q(t)`.
    #[default]
    Symbolic,
    /// `t` is a fixed rational in `(0, 1)`.
    Specialized(BigRational),
}

impl ParameterMode {
    pub fn specialized(p: i64, q: i64) -> Result<Self, PresentationError> {
        let v = BigRational::new(BigInt::from(p), BigInt::from(q));
        Self::check(v)
    }

    fn check(v: BigRational) -> Result<Self, PresentationError> {
        if v <= BigRational::zero() || v >= BigRational::one() {
            return Err(PresentationError::ParameterOutOfRange(v.to_string()));
        }
        Ok(ParameterMode::Specialized(v))
    }

    /// The scalar substituted for `t`.
    pub fn t(&self) -> Scalar {
        match self {
            ParameterMode::Symbolic => Scalar::t(),
            ParameterMode::Specialized(v) => Scalar::from_rational(v.clone()),
        }
    }
}

impl FromStr for ParameterMode {
    type Err = PresentationError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("symbolic") {
            return Ok(ParameterMode::Symbolic);
        }
        let bad = || PresentationError::BadParameter(s.to_string());
        let (p, q) = s.split_once('/').ok_or_else(bad)?;
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        Self::check(BigRational::new(p, q))
    }
}

impl fmt::Display for ParameterMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParameterMode::Symbolic => write!(f, "symbolic"),
            ParameterMode::Specialized(v) => write!(f, "{}/{}", v.numer(), v.denom()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub graph: TwoColoredStar,
    pub mode: ParameterMode,
    /// Leading term first under the degree-lexicographic order.
    pub relations: Vec<NcPolynomial>,
}

impl Presentation {
    /// Number of generators, `n + 1`.
    pub fn generators(&self) -> usize {
        self.graph.leaves() + 1
    }

    pub fn max_relation_degree(&self) -> usize {
        self.relations
            .iter()
            .filter_map(|r| r.leading_word().map(Word::len))
            .max()
            .unwrap_or(0)
    }

    /// One relation per line in the plain text polynomial format.
    pub fn to_text(&self) -> String {
        self.relations.iter().map(|r| format!("{r}\n")).collect()
    }
}

fn word(letters: &[usize]) -> Word {
    Word::new(letters.iter().map(|&g| g as u8).collect())
}

pub fn build_presentation(
    g: &TwoColoredStar,
    mode: ParameterMode,
) -> Result<Presentation, PresentationError> {
    if let ParameterMode::Specialized(v) = &mode {
        ParameterMode::check(v.clone())?;
    }
    let n = g.leaves();
    let t = mode.t();
    let one = Scalar::one();
    let mut relations = Vec::new();
    for k in 0..=n {
        relations.push(NcPolynomial::from_terms([
            (word(&[k, k]), one.clone()),
            (word(&[k]), -&one),
        ]));
    }
    for i in 1..=n {
        relations.push(NcPolynomial::from_terms([
            (word(&[i, 0, i]), one.clone()),
            (word(&[i]), -&t),
        ]));
        relations.push(NcPolynomial::from_terms([
            (word(&[0, i, 0]), one.clone()),
            (word(&[0]), -&t),
        ]));
    }
    for i in 1..=n {
        for j in (i + 1)..=n {
            if g.is_dashed(i, j) {
                relations.push(NcPolynomial::from_terms([
                    (word(&[j, i]), one.clone()),
                    (word(&[i, j]), -&one),
                ]));
            } else {
                relations.push(NcPolynomial::word(word(&[i, j])));
                relations.push(NcPolynomial::word(word(&[j, i])));
            }
        }
    }
    Ok(Presentation {
        graph: g.clone(),
        mode,
        relations,
    })
}
