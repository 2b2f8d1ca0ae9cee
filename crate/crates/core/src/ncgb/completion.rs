use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap, HashMap};

use serde::Serialize;
use thiserror::Error;

use super::poly::NcPolynomial;
use super::word::Word;
use crate::presentation::Presentation;
use crate::scalar::Scalar;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroebnerError {
    #[error("degree bound {bound} is below the largest relation degree {needed}")]
    DegreeBoundTooSmall { bound: usize, needed: usize },
}

/// Default truncation degree for `n` leaves.
pub fn default_degree_bound(leaves: usize) -> usize {
    2 * leaves + 8
}

/// Hash index from leading words to basis slots.
#[derive(Clone, Debug, Default)]
struct LeadIndex {
    by_word: HashMap<Vec<u8>, usize>,
    // word length -> number of indexed words of that length
    lengths: BTreeMap<usize, usize>,
}

impl LeadIndex {
    fn insert(&mut self, w: &Word, id: usize) {
        if self.by_word.insert(w.letters().to_vec(), id).is_none() {
            *self.lengths.entry(w.len()).or_default() += 1;
        }
    }

    fn remove(&mut self, w: &Word) {
        if self.by_word.remove(w.letters()).is_some() {
            let count = self.lengths.get_mut(&w.len()).unwrap();
            *count -= 1;
            if *count == 0 {
                self.lengths.remove(&w.len());
            }
        }
    }

    /// Leftmost occurrence of any indexed word inside `m`, preferring the
    /// shortest at that position. Returns `(position, length, id)`.
    fn find_leftmost(&self, m: &[u8]) -> Option<(usize, usize, usize)> {
        for pos in 0..m.len() {
            for &len in self.lengths.keys() {
                if pos + len > m.len() {
                    break;
                }
                if let Some(&id) = self.by_word.get(&m[pos..pos + len]) {
                    return Some((pos, len, id));
                }
            }
        }
        None
    }

    fn find_rightmost(&self, m: &[u8]) -> Option<(usize, usize, usize)> {
        for pos in (0..m.len()).rev() {
            for &len in self.lengths.keys() {
                if pos + len > m.len() {
                    break;
                }
                if let Some(&id) = self.by_word.get(&m[pos..pos + len]) {
                    return Some((pos, len, id));
                }
            }
        }
        None
    }
}

/// Rewrites `rem` to normal form. The largest reducible monomial is always
/// rewritten at its leftmost reducible position.
fn reduce_indexed(mut rem: NcPolynomial, index: &LeadIndex, elems: &[Option<NcPolynomial>]) -> NcPolynomial {
    let mut out = NcPolynomial::zero();
    while let Some((w, c)) = rem.pop_leading() {
        match index.find_leftmost(w.letters()) {
            None => out.add_term(w, c),
            Some((pos, len, id)) => {
                let g = elems[id].as_ref().expect("index points at a live element");
                let (left, right) = (&w.letters()[..pos], &w.letters()[pos + len..]);
                // g is monic, so its leading term cancels w exactly
                for (gw, gc) in g.terms_desc().skip(1) {
                    rem.add_term(gw.sandwich(left, right), -(&c * gc));
                }
            }
        }
    }
    out
}

fn build_index(basis: &[NcPolynomial]) -> (LeadIndex, Vec<Option<NcPolynomial>>) {
    let mut index = LeadIndex::default();
    let mut elems = Vec::with_capacity(basis.len());
    for (id, g) in basis.iter().enumerate() {
        let g = g.monic();
        if let Some(lead) = g.leading_word() {
            if !index.by_word.contains_key(lead.letters()) {
                index.insert(lead, id);
            }
        }
        elems.push(Some(g));
    }
    (index, elems)
}

/// Normal form of `p` modulo the two-sided ideal of `basis`.
///
/// Basis elements are expected to be monic (non-monic ones are normalized).
/// The result contains no leading word of `basis` as a factor. When several
/// basis elements share a leading word the first one is used.
pub fn reduce(p: &NcPolynomial, basis: &[NcPolynomial]) -> NcPolynomial {
    let (index, elems) = build_index(basis);
    reduce_indexed(p.clone(), &index, &elems)
}

/// Alternative rewrite orders, used to check that normal forms do not depend
/// on the order of rewriting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionStrategy {
    /// Largest reducible monomial, leftmost position. Same as [`reduce`].
    LargestLeftmost,
    /// Smallest reducible monomial, rightmost position.
    SmallestRightmost,
}

pub fn reduce_with_strategy(
    p: &NcPolynomial,
    basis: &[NcPolynomial],
    strategy: ReductionStrategy,
) -> NcPolynomial {
    let (index, elems) = build_index(basis);
    match strategy {
        ReductionStrategy::LargestLeftmost => reduce_indexed(p.clone(), &index, &elems),
        ReductionStrategy::SmallestRightmost => {
            let mut cur = p.clone();
            loop {
                let hit = cur
                    .words()
                    .find_map(|w| index.find_rightmost(w.letters()).map(|h| (w.clone(), h)));
                let Some((w, (pos, len, id))) = hit else {
                    return cur;
                };
                let c = cur.coefficient(&w).unwrap().clone();
                let g = elems[id].as_ref().unwrap();
                let (left, right) = (&w.letters()[..pos], &w.letters()[pos + len..]);
                cur = cur.sub(&g.sandwich(left, right).scale(&c));
            }
        }
    }
}

/// Minimal antichain of forbidden words: no element is a factor of another.
/// Normal words are exactly the words avoiding every element as a factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct ObstructionSet {
    words: Vec<Word>,
}

impl ObstructionSet {
    /// Deduplicates, drops words that contain another word as a factor, and
    /// sorts by the monomial order.
    pub fn from_words<I: IntoIterator<Item = Word>>(words: I) -> Self {
        let sorted: BTreeSet<Word> = words.into_iter().collect();
        let mut kept: Vec<Word> = Vec::new();
        // ascending order visits every factor before the words containing it
        for w in sorted {
            if !kept.iter().any(|k| w.contains_factor(k.letters())) {
                kept.push(w);
            }
        }
        ObstructionSet { words: kept }
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn max_len(&self) -> usize {
        self.words.iter().map(Word::len).max().unwrap_or(0)
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.binary_search(w).is_ok()
    }

    /// First obstruction occurring as a factor of `w`, with its position.
    pub fn first_factor_in(&self, w: &Word) -> Option<(usize, &Word)> {
        self.words
            .iter()
            .filter_map(|o| w.find_factor(o.letters()).map(|pos| (pos, o)))
            .min_by_key(|&(pos, o)| (pos, o.len()))
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.first_factor_in(w).is_none()
    }
}

#[derive(Clone, Debug)]
pub struct GroebnerResult {
    /// Monic, inter-reduced, sorted by leading word.
    pub basis: Vec<NcPolynomial>,
    pub obstructions: ObstructionSet,
    /// Every overlap ambiguity of `basis`, at any degree, resolves to zero.
    pub complete: bool,
    pub degree_bound: usize,
    /// Overlaps above the bound whose S-polynomial did not reduce to zero.
    pub unresolved_overlaps: usize,
}

impl GroebnerResult {
    pub fn reduce(&self, p: &NcPolynomial) -> NcPolynomial {
        reduce(p, &self.basis)
    }

    /// One basis element per line.
    pub fn basis_text(&self) -> String {
        self.basis.iter().map(|g| format!("{g}\n")).collect()
    }
}

pub fn obstructions(result: &GroebnerResult) -> ObstructionSet {
    ObstructionSet::from_words(result.basis.iter().filter_map(|g| g.leading_word().cloned()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Overlap {
    degree: usize,
    left: usize,
    right: usize,
    shared: usize,
}

/// Overlaps `u = a·o`, `v = o·b` with `o` nonempty and proper in both.
fn overlaps_between<'a>(u: &'a Word, v: &'a Word) -> impl Iterator<Item = usize> + 'a {
    let max = u.len().min(v.len());
    (1..max).filter(move |&k| u.letters()[u.len() - k..] == v.letters()[..k])
}

fn s_polynomial(f: &NcPolynomial, g: &NcPolynomial, shared: usize) -> NcPolynomial {
    let u = f.leading_word().unwrap();
    let v = g.leading_word().unwrap();
    let right = &v.letters()[shared..];
    let left = &u.letters()[..u.len() - shared];
    f.sandwich(&[], right).sub(&g.sandwich(left, &[]))
}

struct Completion {
    elems: Vec<Option<NcPolynomial>>,
    index: LeadIndex,
    queue: BinaryHeap<Reverse<Overlap>>,
    deferred: Vec<Overlap>,
    degree_bound: usize,
}

impl Completion {
    fn live(&self) -> impl Iterator<Item = (usize, &NcPolynomial)> {
        self.elems
            .iter()
            .enumerate()
            .filter_map(|(id, e)| e.as_ref().map(|p| (id, p)))
    }

    fn lead(&self, id: usize) -> &Word {
        self.elems[id].as_ref().unwrap().leading_word().unwrap()
    }

    fn insert(&mut self, p: NcPolynomial) {
        let mut pending = vec![p];
        while let Some(p) = pending.pop() {
            let r = reduce_indexed(p, &self.index, &self.elems);
            if r.is_zero() {
                continue;
            }
            let r = r.monic();
            let lead = r.leading_word().unwrap().clone();
            // inclusion ambiguities: retire every element whose leading word
            // contains the new one, and re-reduce it
            let absorbed: Vec<usize> = self
                .live()
                .filter(|(_, g)| g.leading_word().unwrap().contains_factor(lead.letters()))
                .map(|(id, _)| id)
                .collect();
            for id in absorbed.into_iter().rev() {
                let old = self.elems[id].take().unwrap();
                self.index.remove(old.leading_word().unwrap());
                pending.push(old);
            }
            let id = self.elems.len();
            self.elems.push(Some(r));
            self.index.insert(&lead, id);
            self.enqueue_overlaps(id);
        }
    }

    fn enqueue_overlaps(&mut self, id: usize) {
        let u = self.lead(id).clone();
        let mut found = Vec::new();
        for (other, g) in self.live() {
            let v = g.leading_word().unwrap();
            for k in overlaps_between(&u, v) {
                found.push(Overlap {
                    degree: u.len() + v.len() - k,
                    left: id,
                    right: other,
                    shared: k,
                });
            }
            if other != id {
                for k in overlaps_between(v, &u) {
                    found.push(Overlap {
                        degree: u.len() + v.len() - k,
                        left: other,
                        right: id,
                        shared: k,
                    });
                }
            }
        }
        self.queue.extend(found.into_iter().map(Reverse));
    }

    fn s_poly(&self, o: &Overlap) -> NcPolynomial {
        s_polynomial(
            self.elems[o.left].as_ref().unwrap(),
            self.elems[o.right].as_ref().unwrap(),
            o.shared,
        )
    }

    fn is_live(&self, o: &Overlap) -> bool {
        self.elems[o.left].is_some() && self.elems[o.right].is_some()
    }

    fn run(&mut self) {
        while let Some(Reverse(o)) = self.queue.pop() {
            if !self.is_live(&o) {
                continue;
            }
            if o.degree > self.degree_bound {
                self.deferred.push(o);
                continue;
            }
            let s = self.s_poly(&o);
            self.insert(s);
        }
    }

    fn tail_reduce(&mut self) {
        let ids: Vec<usize> = self.live().map(|(id, _)| id).collect();
        for id in ids {
            let mut g = self.elems[id].take().unwrap();
            let (lead, lc) = g.pop_leading().unwrap();
            // the element's own leading word cannot divide its smaller tail
            // terms, so leaving it out of `elems` only hides a dead entry
            let tail = reduce_indexed(g, &self.index, &self.elems);
            let mut full = tail;
            full.add_term(lead, lc);
            self.elems[id] = Some(full);
        }
    }
}

/// Degree-truncated completion of the presentation's relations.
///
/// Overlaps whose overlap word is longer than `degree_bound` are not used
/// to extend the basis; at the end they are re-checked against the final
/// basis and the result is `complete` only if all of them reduce to zero.
pub fn buchberger(pres: &Presentation, degree_bound: usize) -> Result<GroebnerResult, GroebnerError> {
    complete_relations(&pres.relations, degree_bound)
}

/// [`buchberger`] on an arbitrary list of relations.
pub fn complete_relations(
    relations: &[NcPolynomial],
    degree_bound: usize,
) -> Result<GroebnerResult, GroebnerError> {
    let needed = relations
        .iter()
        .filter_map(|r| r.leading_word().map(Word::len))
        .max()
        .unwrap_or(0);
    if degree_bound < needed {
        return Err(GroebnerError::DegreeBoundTooSmall {
            bound: degree_bound,
            needed,
        });
    }
    let mut c = Completion {
        elems: Vec::new(),
        index: LeadIndex::default(),
        queue: BinaryHeap::new(),
        deferred: Vec::new(),
        degree_bound,
    };
    for r in relations {
        c.insert(r.clone());
    }
    c.run();
    c.tail_reduce();

    let deferred = std::mem::take(&mut c.deferred);
    let unresolved = deferred
        .iter()
        .filter(|o| c.is_live(o))
        .filter(|o| !reduce_indexed(c.s_poly(o), &c.index, &c.elems).is_zero())
        .count();

    let mut basis: Vec<NcPolynomial> = c.elems.into_iter().flatten().collect();
    basis.sort_by(|a, b| a.leading_word().cmp(&b.leading_word()));
    let obstructions = ObstructionSet::from_words(basis.iter().filter_map(|g| g.leading_word().cloned()));
    Ok(GroebnerResult {
        basis,
        obstructions,
        complete: unresolved == 0,
        degree_bound,
        unresolved_overlaps: unresolved,
    })
}

/// Checks the diamond-lemma conditions directly: leading words form an
/// antichain, every element is monic, and every overlap S-polynomial
/// reduces to zero.
pub fn is_groebner_basis(basis: &[NcPolynomial]) -> bool {
    let leads: Vec<&Word> = basis.iter().filter_map(|g| g.leading_word()).collect();
    if leads.len() != basis.len() || basis.iter().any(|g| !g.leading_coefficient().unwrap().is_one()) {
        return false;
    }
    for (i, u) in leads.iter().enumerate() {
        for (j, v) in leads.iter().enumerate() {
            if i != j && v.contains_factor(u.letters()) {
                return false;
            }
        }
    }
    let (index, elems) = build_index(basis);
    for (i, f) in basis.iter().enumerate() {
        for (j, g) in basis.iter().enumerate() {
            for k in overlaps_between(leads[i], leads[j]) {
                let s = s_polynomial(f, g, k);
                if !reduce_indexed(s, &index, &elems).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// Scalar linear combination helper used by tests and callers that build
/// random elements.
pub fn linear_combination(terms: &[(Scalar, &NcPolynomial)]) -> NcPolynomial {
    terms
        .iter()
        .fold(NcPolynomial::zero(), |acc, (c, p)| acc.add(&p.scale(c)))
}
