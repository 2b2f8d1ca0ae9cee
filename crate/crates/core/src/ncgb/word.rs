use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Monomial `p_{i1} p_{i2} ... p_{im}` stored as generator indices.
/// The empty word is the unit.
///
/// Words compare degree-lexicographically with `p_0 < p_1 < ... < p_n`.
/// The order is total, multiplicative and well-founded.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<u8>);

#[derive(Debug, Error, PartialEq, Eq)]
#[error("bad word `{0}`: expected comma-separated generator indices like `0,1,2`")]
pub struct WordParseError(pub String);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<u8>) -> Self {
        Word(letters)
    }

    pub fn letter(g: u8) -> Self {
        Word(vec![g])
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest generator index, if any.
    pub fn max_letter(&self) -> Option<u8> {
        self.0.iter().copied().max()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `left · self · right`
    pub fn sandwich(&self, left: &[u8], right: &[u8]) -> Word {
        let mut v = Vec::with_capacity(left.len() + self.len() + right.len());
        v.extend_from_slice(left);
        v.extend_from_slice(&self.0);
        v.extend_from_slice(right);
        Word(v)
    }

    pub fn repeat(&self, times: usize) -> Word {
        Word(self.0.repeat(times))
    }

    /// Leftmost occurrence of `factor` as a contiguous subword.
    pub fn find_factor(&self, factor: &[u8]) -> Option<usize> {
        if factor.is_empty() {
            return Some(0);
        }
        self.0.windows(factor.len()).position(|w| w == factor)
    }

    pub fn contains_factor(&self, factor: &[u8]) -> bool {
        self.find_factor(factor).is_some()
    }

    /// Comma-separated generator indices; the empty string is the unit.
    pub fn parse(text: &str) -> Result<Word, WordParseError> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Word::unit());
        }
        text.split(',')
            .map(|s| s.trim().parse::<u8>())
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
            .map_err(|_| WordParseError(text.to_string()))
    }

    /// Inverse of [`Word::parse`].
    pub fn to_index_list(&self) -> String {
        self.0.iter().map(u8::to_string).collect::<Vec<_>>().join(",")
    }
}

impl From<&[u8]> for Word {
    fn from(s: &[u8]) -> Self {
        Word(s.to_vec())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn compare_words(a: &Word, b: &Word) -> Ordering {
    a.cmp(b)
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, g) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "p{g}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn deglex_examples() {
        assert_eq!(compare_words(&w("1"), &w("0,1")), Ordering::Less);
        assert_eq!(compare_words(&w("2,1"), &w("1,2")), Ordering::Greater);
        assert_eq!(compare_words(&w("1,0,1"), &w("1,0,1")), Ordering::Equal);
        assert!(Word::unit() < w("0"));
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(w("0, 1,2").letters(), &[0, 1, 2]);
        assert_eq!(w("").len(), 0);
        assert!(Word::parse("0,x").is_err());
        assert_eq!(w("1,0,1").to_string(), "p1*p0*p1");
        assert_eq!(w("4,5").to_index_list(), "4,5");
    }

    #[test]
    fn factors() {
        let x = w("0,1,2,0,1");
        assert_eq!(x.find_factor(&[0, 1]), Some(0));
        assert_eq!(x.find_factor(&[2, 0]), Some(2));
        assert!(!x.contains_factor(&[1, 1]));
    }
}
