use std::collections::VecDeque;

use num::{BigUint, Zero};

use crate::ncgb::{GroebnerResult, ObstructionSet, Word};

/// Deterministic automaton whose live paths from the start state spell
/// exactly the words with no obstruction as a factor.
///
/// States are the proper prefixes of obstructions that are themselves normal
/// words (Aho-Corasick trie nodes), state 0 is the empty word. A missing
/// transition leads to the implicit dead sink.
#[derive(Clone, Debug)]
pub struct AvoidanceAutomaton {
    alphabet: usize,
    delta: Vec<Option<u32>>,
    labels: Vec<Word>,
    obstructions: ObstructionSet,
    complete: bool,
}

impl AvoidanceAutomaton {
    pub fn alphabet_size(&self) -> usize {
        self.alphabet
    }

    /// Number of live states. Zero when the empty word is itself forbidden.
    pub fn state_count(&self) -> usize {
        self.labels.len()
    }

    pub fn start(&self) -> Option<usize> {
        (!self.labels.is_empty()).then_some(0)
    }

    pub fn next(&self, state: usize, letter: u8) -> Option<usize> {
        self.delta[state * self.alphabet + letter as usize].map(|s| s as usize)
    }

    /// The word that leads from the start state to `state`.
    pub fn label(&self, state: usize) -> &Word {
        &self.labels[state]
    }

    pub fn obstructions(&self) -> &ObstructionSet {
        &self.obstructions
    }

    /// False when the obstruction set came from a truncated, incomplete
    /// Groebner basis; counts are then upper bounds only.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Runs `w` from `state`; `None` once an obstruction has been read.
    pub fn run_from(&self, state: usize, w: &[u8]) -> Option<usize> {
        w.iter().try_fold(state, |s, &a| self.next(s, a))
    }

    pub fn accepts(&self, w: &Word) -> bool {
        self.start().and_then(|s| self.run_from(s, w.letters())).is_some()
    }

    /// Live transitions `(from, letter, to)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, u8, usize)> + '_ {
        (0..self.state_count()).flat_map(move |s| {
            (0..self.alphabet as u8).filter_map(move |a| self.next(s, a).map(|t| (s, a, t)))
        })
    }
}

/// Aho-Corasick construction over `obs` for an alphabet of `alphabet_size`
/// generators. Letters of `obs` at or above `alphabet_size` are ignored
/// along with the words containing them.
pub fn build_automaton(obs: &ObstructionSet, alphabet_size: usize) -> AvoidanceAutomaton {
    build_automaton_tagged(obs, alphabet_size, true)
}

/// Automaton over the obstruction set of a Groebner computation, carrying its
/// completeness flag.
pub fn automaton_for(result: &GroebnerResult, alphabet_size: usize) -> AvoidanceAutomaton {
    build_automaton_tagged(&result.obstructions, alphabet_size, result.complete)
}

fn build_automaton_tagged(obs: &ObstructionSet, alphabet: usize, complete: bool) -> AvoidanceAutomaton {
    const NONE: usize = usize::MAX;
    // trie
    let mut goto: Vec<Vec<usize>> = vec![vec![NONE; alphabet]];
    let mut terminal = vec![false];
    let mut parent = vec![0usize];
    let mut label: Vec<Vec<u8>> = vec![Vec::new()];
    for w in obs.words() {
        if w.letters().iter().any(|&a| a as usize >= alphabet) {
            continue;
        }
        let mut node = 0;
        for &a in w.letters() {
            let a = a as usize;
            if goto[node][a] == NONE {
                goto.push(vec![NONE; alphabet]);
                terminal.push(false);
                parent.push(node);
                let mut l = label[node].clone();
                l.push(a as u8);
                label.push(l);
                goto[node][a] = goto.len() - 1;
            }
            node = goto[node][a];
        }
        terminal[node] = true;
    }

    // failure links in BFS order; a node is dead if it or any suffix of it
    // (via the failure chain) or its parent is an obstruction
    let nodes = goto.len();
    let mut fail = vec![0usize; nodes];
    let mut dead = terminal.clone();
    let mut delta = vec![vec![0usize; alphabet]; nodes];
    let mut queue = VecDeque::new();
    for a in 0..alphabet {
        let child = goto[0][a];
        if child == NONE {
            delta[0][a] = 0;
        } else {
            fail[child] = 0;
            delta[0][a] = child;
            queue.push_back(child);
        }
    }
    while let Some(node) = queue.pop_front() {
        dead[node] = dead[node] || dead[parent[node]] || dead[fail[node]];
        for a in 0..alphabet {
            let child = goto[node][a];
            if child == NONE {
                delta[node][a] = delta[fail[node]][a];
            } else {
                fail[child] = delta[fail[node]][a];
                delta[node][a] = child;
                queue.push_back(child);
            }
        }
    }
    if dead[0] {
        return AvoidanceAutomaton {
            alphabet,
            delta: Vec::new(),
            labels: Vec::new(),
            obstructions: obs.clone(),
            complete,
        };
    }

    // renumber live nodes in BFS (shortlex) order, root first
    let mut order: Vec<usize> = (0..nodes).filter(|&v| !dead[v]).collect();
    order.sort_by(|&x, &y| Word::from(label[x].as_slice()).cmp(&Word::from(label[y].as_slice())));
    let mut new_id = vec![u32::MAX; nodes];
    for (i, &v) in order.iter().enumerate() {
        new_id[v] = i as u32;
    }
    let mut compact = Vec::with_capacity(order.len() * alphabet);
    for &v in &order {
        for &to in &delta[v][..alphabet] {
            compact.push((!dead[to]).then_some(new_id[to]));
        }
    }
    AvoidanceAutomaton {
        alphabet,
        delta: compact,
        labels: order.iter().map(|&v| Word::from(label[v].as_slice())).collect(),
        obstructions: obs.clone(),
        complete,
    }
}

/// Number of normal words of each length `0..=max_degree`.
pub fn hilbert_prefix(aut: &AvoidanceAutomaton, max_degree: usize) -> Vec<BigUint> {
    let states = aut.state_count();
    let mut out = Vec::with_capacity(max_degree + 1);
    if states == 0 {
        out.resize(max_degree + 1, BigUint::zero());
        return out;
    }
    let mut counts = vec![BigUint::zero(); states];
    counts[0] = BigUint::from(1u32);
    for degree in 0..=max_degree {
        out.push(counts.iter().sum());
        if degree == max_degree {
            break;
        }
        let mut next = vec![BigUint::zero(); states];
        for (s, c) in counts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for a in 0..aut.alphabet_size() as u8 {
                if let Some(t) = aut.next(s, a) {
                    next[t] += c;
                }
            }
        }
        counts = next;
    }
    out
}
