use std::collections::BTreeMap;
use std::fmt;

use super::word::Word;
use crate::scalar::Scalar;

/// Finite linear combination of words with nonzero coefficients in `Q(t)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NcPolynomial {
    terms: BTreeMap<Word, Scalar>,
}

impl NcPolynomial {
    pub fn zero() -> Self {
        NcPolynomial::default()
    }

    pub fn monomial(w: Word, c: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    pub fn word(w: Word) -> Self {
        Self::monomial(w, Scalar::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Scalar)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c·w`, dropping the term if it cancels.
    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn coefficient(&self, w: &Word) -> Option<&Scalar> {
        self.terms.get(w)
    }

    pub fn leading_word(&self) -> Option<&Word> {
        self.terms.last_key_value().map(|(w, _)| w)
    }

    pub fn leading_coefficient(&self) -> Option<&Scalar> {
        self.terms.last_key_value().map(|(_, c)| c)
    }

    /// Terms in descending monomial order.
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Word, Scalar)> {
        self.terms.pop_last()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        NcPolynomial {
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            None => Self::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inv()),
        }
    }

    /// `left · self · right`
    pub fn sandwich(&self, left: &[u8], right: &[u8]) -> Self {
        NcPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.sandwich(left, right), c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &NcPolynomial) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &NcPolynomial) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &NcPolynomial) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.concat(b), x * y);
            }
        }
        out
    }

    /// Substitutes `t = value` in every coefficient.
    pub fn specialize(&self, value: &num::BigRational) -> Option<Self> {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), Scalar::from_rational(c.eval(value)?));
        }
        Some(out)
    }
}

/// Plain text form: `p2*p1 - p1*p2`, `p1*p0*p1 - t*p1`, `0`.
impl fmt::Display for NcPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms_desc().enumerate() {
            let (negative, mag) = c.split_sign();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mag.is_one() {
                write!(f, "{w}")?;
            } else if w.is_empty() {
                write!(f, "{mag}")?;
            } else {
                let coeff = mag.to_string();
                if coeff.contains(' ') {
                    write!(f, "({coeff})*{w}")?;
                } else {
                    write!(f, "{coeff}*{w}")?;
                }
            }
        }
        Ok(())
    }
}
