//! Independent oracles shared by the integration tests. Nothing here calls
//! the completion or automaton code.

#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::BTreeMap;

use tlgrowth_core::TwoColoredStar;

pub const P: u64 = 2_147_483_647;

pub fn inv_mod(a: u64) -> u64 {
    let (mut base, mut exp, mut acc) = (a % P, P - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % P;
        }
        base = base * base % P;
        exp >>= 1;
    }
    acc
}

/// Deglex key: longer words are larger, then lexicographic on indices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Key(pub Vec<u8>);

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub type Row = BTreeMap<Key, u64>;

/// Defining relations written out directly from the graph, with `t` a
/// residue mod `P`.
pub fn relations_mod_p(g: &TwoColoredStar, t: u64) -> Vec<Row> {
    let n = g.leaves() as u8;
    let minus = |c: u64| (P - c % P) % P;
    let rel = |terms: &[(&[u8], u64)]| -> Row {
        let mut r = Row::new();
        for (w, c) in terms {
            if *c % P != 0 {
                r.insert(Key(w.to_vec()), *c % P);
            }
        }
        r
    };
    let mut out = Vec::new();
    for k in 0..=n {
        out.push(rel(&[(&[k, k], 1), (&[k], minus(1))]));
    }
    for i in 1..=n {
        out.push(rel(&[(&[i, 0, i], 1), (&[i], minus(t))]));
        out.push(rel(&[(&[0, i, 0], 1), (&[0], minus(t))]));
    }
    for i in 1..=n {
        for j in (i + 1)..=n {
            if g.is_dashed(i as usize, j as usize) {
                out.push(rel(&[(&[i, j], 1), (&[j, i], minus(1))]));
            } else {
                out.push(rel(&[(&[i, j], 1)]));
                out.push(rel(&[(&[j, i], 1)]));
            }
        }
    }
    out
}

fn all_words(alphabet: u8, len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..alphabet).map(move |g| {
                    let mut v = w.clone();
                    v.push(g);
                    v
                })
            })
            .collect();
    }
    out
}

/// Upper bounds on `dim F_d` for `d = 0..=max_degree`, where `F_d` is the
/// image of words of length at most `d`: the ideal is approximated by all
/// products `u r v` of total length at most `span`, reduced by Gaussian
/// elimination mod `P`.
pub fn filtered_dimensions(g: &TwoColoredStar, t: u64, span: usize, max_degree: usize) -> Vec<usize> {
    let k = g.leaves() as u8 + 1;
    let mut pivots: BTreeMap<Key, Row> = BTreeMap::new();
    for r in relations_mod_p(g, t) {
        let deg = r.keys().next_back().unwrap().0.len();
        for extra in 0..=span.saturating_sub(deg) {
            for left_len in 0..=extra {
                for u in all_words(k, left_len) {
                    for v in all_words(k, extra - left_len) {
                        let mut row = Row::new();
                        for (w, c) in &r {
                            let mut x = u.clone();
                            x.extend_from_slice(&w.0);
                            x.extend_from_slice(&v);
                            row.insert(Key(x), *c);
                        }
                        insert_row(&mut pivots, row);
                    }
                }
            }
        }
    }
    let mut dims = Vec::new();
    let mut total_words = 0usize;
    for d in 0..=max_degree {
        total_words += (k as usize).pow(d as u32);
        let rank = pivots.keys().filter(|w| w.0.len() <= d).count();
        dims.push(total_words - rank);
    }
    dims
}

fn insert_row(pivots: &mut BTreeMap<Key, Row>, mut row: Row) {
    loop {
        let Some((lead, &c)) = row.iter().next_back() else { return };
        let lead = lead.clone();
        match pivots.get(&lead) {
            Some(p) => {
                for (w, pc) in p {
                    let e = row.entry(w.clone()).or_insert(0);
                    *e = (*e + P - c * pc % P) % P;
                    if *e == 0 {
                        row.remove(w);
                    }
                }
            }
            None => {
                let s = inv_mod(c);
                for v in row.values_mut() {
                    *v = *v * s % P;
                }
                pivots.insert(lead, row);
                return;
            }
        }
    }
}

/// Normal words of each length up to `max_len`, found by depth-first
/// extension with a naive suffix test against the forbidden words.
pub fn brute_force_counts(forbidden: &[Vec<u8>], alphabet: u8, max_len: usize) -> Vec<u64> {
    fn go(w: &mut Vec<u8>, forbidden: &[Vec<u8>], alphabet: u8, max_len: usize, counts: &mut [u64]) {
        counts[w.len()] += 1;
        if w.len() == max_len {
            return;
        }
        for g in 0..alphabet {
            w.push(g);
            if !forbidden.iter().any(|f| w.ends_with(f)) {
                go(w, forbidden, alphabet, max_len, counts);
            }
            w.pop();
        }
    }
    let mut counts = vec![0; max_len + 1];
    go(&mut Vec::new(), forbidden, alphabet, max_len, &mut counts);
    counts
}

/// True when some element of `forbidden` is a factor of `w`.
pub fn has_factor(w: &[u8], forbidden: &[Vec<u8>]) -> bool {
    forbidden.iter().any(|f| w.windows(f.len().max(1)).any(|x| x == f.as_slice()))
}

/// Leading words of the defining relations, i.e. the obvious rewriting
/// rules, for the star without dashed pairs.
pub fn pure_star_rules(n: usize) -> Vec<Vec<u8>> {
    let n = n as u8;
    let mut rules = Vec::new();
    for k in 0..=n {
        rules.push(vec![k, k]);
    }
    for i in 1..=n {
        rules.push(vec![i, 0, i]);
        rules.push(vec![0, i, 0]);
        for j in 1..=n {
            if i != j {
                rules.push(vec![i, j]);
            }
        }
    }
    rules
}

pub fn leaves_up_to(max: usize) -> Vec<TwoColoredStar> {
    (1..=max)
        .flat_map(|n| tlgrowth_core::enumerate_graphs(n).unwrap())
        .collect()
}
