use std::fmt;

use num::{BigUint, One, Zero};
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::Serialize;

use super::automaton::AvoidanceAutomaton;

/// Coarse growth type, ordered `Finite < Polynomial < Exponential`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CoarseGrowth {
    Finite,
    Polynomial,
    Exponential,
}

impl fmt::Display for CoarseGrowth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoarseGrowth::Finite => "finite",
            CoarseGrowth::Polynomial => "polynomial",
            CoarseGrowth::Exponential => "exponential",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GrowthClass {
    /// Dimension counts the unit (empty word).
    Finite {
        #[serde(serialize_with = "crate::bigjson::biguint")]
        dimension: BigUint,
    },
    /// Cumulative growth is polynomial of this degree (>= 1).
    Polynomial { gk_degree: usize },
    Exponential,
}

impl GrowthClass {
    pub fn coarse(&self) -> CoarseGrowth {
        match self {
            GrowthClass::Finite { .. } => CoarseGrowth::Finite,
            GrowthClass::Polynomial { .. } => CoarseGrowth::Polynomial,
            GrowthClass::Exponential => CoarseGrowth::Exponential,
        }
    }

    pub fn dimension(&self) -> Option<&BigUint> {
        match self {
            GrowthClass::Finite { dimension } => Some(dimension),
            _ => None,
        }
    }
}

impl fmt::Display for GrowthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrowthClass::Finite { dimension } => write!(f, "finite (dimension {dimension})"),
            GrowthClass::Polynomial { gk_degree: 1 } => write!(f, "polynomial (linear)"),
            GrowthClass::Polynomial { gk_degree } => write!(f, "polynomial (degree {gk_degree})"),
            GrowthClass::Exponential => write!(f, "exponential"),
        }
    }
}

/// Growth class plus whether it is authoritative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthVerdict {
    pub class: GrowthClass,
    /// Set when the obstruction set was truncated: the normal words are a
    /// superset of the true ones and the class only bounds the growth above.
    pub upper_bound_only: bool,
}

/// Strongly connected structure of the live automaton.
pub(crate) struct SccInfo {
    /// Component of each state.
    pub component: Vec<usize>,
    /// Components in reverse topological order (sinks first).
    pub members: Vec<Vec<usize>>,
    /// Transitions with both ends inside the component (self-loops and
    /// parallel letters each count once).
    pub internal_edges: Vec<usize>,
}

impl SccInfo {
    pub fn is_cyclic(&self, c: usize) -> bool {
        self.internal_edges[c] >= 1
    }

    /// More edges than vertices: at least two distinct cycles.
    pub fn is_branching(&self, c: usize) -> bool {
        self.internal_edges[c] > self.members[c].len()
    }
}

pub(crate) fn scc_info(aut: &AvoidanceAutomaton) -> SccInfo {
    let n = aut.state_count();
    let mut g: DiGraph<(), u8> = DiGraph::with_capacity(n, n * aut.alphabet_size());
    let nodes: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
    for (s, a, t) in aut.edges() {
        g.add_edge(nodes[s], nodes[t], a);
    }
    let sccs = tarjan_scc(&g);
    let mut component = vec![0; n];
    let members: Vec<Vec<usize>> = sccs
        .iter()
        .map(|c| {
            let mut v: Vec<usize> = c.iter().map(|x| x.index()).collect();
            v.sort_unstable();
            v
        })
        .collect();
    for (c, m) in members.iter().enumerate() {
        for &s in m {
            component[s] = c;
        }
    }
    let mut internal_edges = vec![0; members.len()];
    for (s, _, t) in aut.edges() {
        if component[s] == component[t] {
            internal_edges[component[s]] += 1;
        }
    }
    SccInfo {
        component,
        members,
        internal_edges,
    }
}

/// Structural growth classification of the normal words.
///
/// * finite iff no cycle is reachable; the dimension is the number of paths
///   from the start state;
/// * exponential iff some component carries two distinct cycles;
/// * otherwise polynomial, of degree equal to the largest number of cyclic
///   components met along a path of the condensation.
pub fn classify_growth(aut: &AvoidanceAutomaton) -> GrowthVerdict {
    GrowthVerdict {
        class: classify_class(aut),
        upper_bound_only: !aut.is_complete(),
    }
}

fn classify_class(aut: &AvoidanceAutomaton) -> GrowthClass {
    if aut.state_count() == 0 {
        return GrowthClass::Finite {
            dimension: BigUint::zero(),
        };
    }
    let info = scc_info(aut);
    let comps = info.members.len();
    if (0..comps).any(|c| info.is_branching(c)) {
        return GrowthClass::Exponential;
    }
    if (0..comps).any(|c| info.is_cyclic(c)) {
        // longest chain of cyclic components; sinks come first in `members`
        let mut depth = vec![0usize; comps];
        for c in 0..comps {
            let mut best = 0;
            for &s in &info.members[c] {
                for a in 0..aut.alphabet_size() as u8 {
                    if let Some(t) = aut.next(s, a) {
                        let d = info.component[t];
                        if d != c {
                            best = best.max(depth[d]);
                        }
                    }
                }
            }
            depth[c] = best + usize::from(info.is_cyclic(c));
        }
        return GrowthClass::Polynomial {
            gk_degree: depth[info.component[0]],
        };
    }
    // acyclic: count paths from the start in topological order
    let mut paths = vec![BigUint::zero(); aut.state_count()];
    paths[0] = BigUint::one();
    let mut total = BigUint::zero();
    for c in (0..comps).rev() {
        let s = info.members[c][0];
        let here = std::mem::take(&mut paths[s]);
        for a in 0..aut.alphabet_size() as u8 {
            if let Some(t) = aut.next(s, a) {
                paths[t] += &here;
            }
        }
        total += here;
    }
    GrowthClass::Finite { dimension: total }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::growth::build_automaton;
    use crate::ncgb::{ObstructionSet, Word};

    fn aut(words: &[&str], alphabet: usize) -> AvoidanceAutomaton {
        build_automaton(
            &ObstructionSet::from_words(words.iter().map(|w| Word::parse(w).unwrap())),
            alphabet,
        )
    }

    #[test]
    fn finite_counts_unit() {
        let v = classify_growth(&aut(&["0,0"], 1));
        assert_eq!(v.class, GrowthClass::Finite { dimension: 2u32.into() });
        assert!(!v.upper_bound_only);
    }

    #[test]
    fn one_letter_free_algebra_is_linear() {
        assert_eq!(classify_growth(&aut(&[], 1)).class, GrowthClass::Polynomial { gk_degree: 1 });
    }

    #[test]
    fn two_letters_free_algebra_is_exponential() {
        assert_eq!(classify_growth(&aut(&[], 2)).class, GrowthClass::Exponential);
    }

    #[test]
    fn chained_cycles_raise_degree() {
        // normal words are 0^a 1^b: quadratic cumulative growth
        assert_eq!(classify_growth(&aut(&["1,0"], 2)).class, GrowthClass::Polynomial { gk_degree: 2 });
        // 0^a 1^b 2^c
        assert_eq!(
            classify_growth(&aut(&["1,0", "2,0", "2,1"], 3)).class,
            GrowthClass::Polynomial { gk_degree: 3 }
        );
    }

    #[test]
    fn coarse_order() {
        assert!(CoarseGrowth::Finite < CoarseGrowth::Polynomial);
        assert!(CoarseGrowth::Polynomial < CoarseGrowth::Exponential);
        let json = serde_json::to_string(&GrowthClass::Finite { dimension: 10u32.into() }).unwrap();
        assert_eq!(json, r#"{"kind":"finite","dimension":10}"#);
    }
}
