use serde::Serialize;
use thiserror::Error;

use super::automaton::AvoidanceAutomaton;
use super::classify::scc_info;
use crate::ncgb::{ObstructionSet, Word};

/// Two words generating a free subalgebra: every concatenation of blocks
/// from `{q1, q2}` is a normal word, and distinct block sequences spell
/// distinct words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreePairCertificate {
    pub q1: Word,
    pub q2: Word,
    /// Number of consecutive blocks checked per window.
    pub window_bound: usize,
}

/// Why a candidate pair is not free.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum FreePairViolation {
    #[error("block words must be nonempty")]
    EmptyBlock,
    #[error("q1 q2 = q2 q1, so block sequences do not spell distinct words")]
    Commuting,
    #[error("blocks {} spell {word}, which contains the obstruction {obstruction} at position {position}", block_names(.blocks))]
    Obstruction {
        /// `false` for q1, `true` for q2.
        blocks: Vec<bool>,
        word: Word,
        obstruction: Word,
        position: usize,
    },
}

fn block_names(blocks: &[bool]) -> String {
    blocks
        .iter()
        .map(|&b| if b { "q2" } else { "q1" })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Blocks per window: any factor of length `L` of a block sequence lies in
/// `ceil(L / min(|q1|, |q2|)) + 1` consecutive blocks.
pub fn window_blocks(q1: &Word, q2: &Word, obs: &ObstructionSet) -> usize {
    let shortest = q1.len().min(q2.len()).max(1);
    obs.max_len().div_ceil(shortest) + 1
}

/// Checks every window of consecutive blocks for obstruction factors and
/// rejects commuting pairs.
pub fn check_free_pair(q1: &Word, q2: &Word, obs: &ObstructionSet) -> Result<FreePairCertificate, FreePairViolation> {
    if q1.is_empty() || q2.is_empty() {
        return Err(FreePairViolation::EmptyBlock);
    }
    if q1.concat(q2) == q2.concat(q1) {
        return Err(FreePairViolation::Commuting);
    }
    let k = window_blocks(q1, q2, obs);
    // shorter sequences are prefixes of these, so k-block windows suffice
    for mask in 0u64..(1u64 << k) {
        let blocks: Vec<bool> = (0..k).map(|i| (mask >> (k - 1 - i)) & 1 == 1).collect();
        let mut letters = Vec::new();
        for &b in &blocks {
            letters.extend_from_slice(if b { q2.letters() } else { q1.letters() });
        }
        let word = Word::new(letters);
        if let Some((position, o)) = obs.first_factor_in(&word) {
            return Err(FreePairViolation::Obstruction {
                blocks,
                obstruction: o.clone(),
                word,
                position,
            });
        }
    }
    Ok(FreePairCertificate {
        q1: q1.clone(),
        q2: q2.clone(),
        window_bound: k,
    })
}

pub fn verify_free_pair(q1: &Word, q2: &Word, obs: &ObstructionSet) -> bool {
    check_free_pair(q1, q2, obs).is_ok()
}

/// Looks for two non-commuting closed walks through a common state, each of
/// length at most `max_block_len`, and returns them as a verified pair.
///
/// Only first-return walks are enumerated: if all of those commute, every
/// closed walk at the state is a power of one word. `None` is not a proof
/// that no free pair exists.
pub fn search_free_pair(aut: &AvoidanceAutomaton, max_block_len: usize) -> Option<FreePairCertificate> {
    if aut.state_count() == 0 {
        return None;
    }
    let info = scc_info(aut);
    for s in 0..aut.state_count() {
        let c = info.component[s];
        if !info.is_cyclic(c) {
            continue;
        }
        let mut found: Vec<Word> = Vec::new();
        for len in 1..=max_block_len {
            let mut walks = Vec::new();
            let mut path = Vec::with_capacity(len);
            first_return_walks(aut, &info.component, s, s, len, &mut path, &mut walks);
            for q in walks {
                for p in &found {
                    if p.concat(&q) != q.concat(p) {
                        if let Ok(cert) = check_free_pair(p, &q, aut.obstructions()) {
                            return Some(cert);
                        }
                    }
                }
                found.push(q);
            }
        }
    }
    None
}

fn first_return_walks(
    aut: &AvoidanceAutomaton,
    component: &[usize],
    home: usize,
    at: usize,
    remaining: usize,
    path: &mut Vec<u8>,
    out: &mut Vec<Word>,
) {
    for a in 0..aut.alphabet_size() as u8 {
        let Some(t) = aut.next(at, a) else { continue };
        if component[t] != component[home] {
            continue;
        }
        path.push(a);
        if remaining == 1 {
            if t == home {
                out.push(Word::new(path.clone()));
            }
        } else if t != home {
            first_return_walks(aut, component, home, t, remaining - 1, path, out);
        }
        path.pop();
    }
}
