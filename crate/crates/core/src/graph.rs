//! Edge two-colored stars.
//!
//! A star has a center `0` and leaves `1..=n`. Every center-leaf edge is
//! solid and implicit; the only data is the set of dashed leaf-leaf pairs.
//! Dashed pairs become commutation relations in the associated algebra and
//! every other leaf pair becomes an orthogonality relation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest leaf count accepted anywhere in the crate. Canonical codes are
/// packed into a `u128`, which holds the 120 leaf pairs of a 16-leaf star.
pub const MAX_LEAVES: usize = 16;

/// Default upper bound on `n` for [`enumerate_graphs`].
pub const DEFAULT_ENUMERATION_CAP: usize = 7;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("malformed graph spec `{0}`: expected `K(<n>; <i>-<j>, ...)` or `K(<n>;)`")]
    Malformed(String),
    #[error("leaf count {0} exceeds the supported maximum of {MAX_LEAVES}")]
    TooManyLeaves(usize),
    #[error("dashed pair {0}-{1} references a leaf outside 1..={2}")]
    LeafOutOfRange(usize, usize, usize),
    #[error("dashed pair {0}-{0} is a loop")]
    Loop(usize),
    #[error("enumeration for n = {n} exceeds the cap {cap}")]
    CapExceeded { n: usize, cap: usize },
}

/// A star `K_{n,1}` together with its dashed leaf pairs.
///
/// Pairs are stored as `(i, j)` with `1 <= i < j <= n`, sorted and free of
/// duplicates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawStar", into = "RawStar")]
pub struct TwoColoredStar {
    n: usize,
    dashed: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct RawStar {
    n: usize,
    dashed: Vec<[usize; 2]>,
}

impl TryFrom<RawStar> for TwoColoredStar {
    type Error = GraphError;
    fn try_from(raw: RawStar) -> Result<Self, Self::Error> {
        TwoColoredStar::new(raw.n, raw.dashed.into_iter().map(|[i, j]| (i, j)))
    }
}

impl From<TwoColoredStar> for RawStar {
    fn from(g: TwoColoredStar) -> Self {
        RawStar {
            n: g.n,
            dashed: g.dashed.iter().map(|&(i, j)| [i, j]).collect(),
        }
    }
}

impl TwoColoredStar {
    /// Builds a star, normalizing pair orientation and dropping duplicates.
    pub fn new<I>(n: usize, pairs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::with_duplicate_count(n, pairs).map(|(g, _)| g)
    }

    fn with_duplicate_count<I>(n: usize, pairs: I) -> Result<(Self, usize), GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n > MAX_LEAVES {
            return Err(GraphError::TooManyLeaves(n));
        }
        let mut set = BTreeSet::new();
        let mut duplicates = 0;
        for (a, b) in pairs {
            if a == b {
                return Err(GraphError::Loop(a));
            }
            if a == 0 || b == 0 || a > n || b > n {
                return Err(GraphError::LeafOutOfRange(a, b, n));
            }
            if !set.insert((a.min(b), a.max(b))) {
                duplicates += 1;
            }
        }
        Ok((
            TwoColoredStar {
                n,
                dashed: set.into_iter().collect(),
            },
            duplicates,
        ))
    }

    /// The star with no dashed pairs.
    pub fn empty(n: usize) -> Self {
        TwoColoredStar { n, dashed: Vec::new() }
    }

    /// `K(n; 1-2, 1-3, ..., 1-n)`: one leaf dashed to every other leaf.
    pub fn star_pattern(n: usize) -> Self {
        TwoColoredStar {
            n,
            dashed: (2..=n).map(|j| (1, j)).collect(),
        }
    }

    pub fn leaves(&self) -> usize {
        self.n
    }

    pub fn dashed(&self) -> &[(usize, usize)] {
        &self.dashed
    }

    pub fn is_dashed(&self, i: usize, j: usize) -> bool {
        let key = (i.min(j), i.max(j));
        self.dashed.binary_search(&key).is_ok()
    }

    /// Number of dashed pairs touching each leaf, indexed `0..=n` (entry 0 unused).
    pub fn dashed_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n + 1];
        for &(i, j) in &self.dashed {
            deg[i] += 1;
            deg[j] += 1;
        }
        deg
    }

    /// Copy of the graph with one dashed pair removed.
    pub fn without_dashed(&self, i: usize, j: usize) -> Self {
        let key = (i.min(j), i.max(j));
        TwoColoredStar {
            n: self.n,
            dashed: self.dashed.iter().copied().filter(|&p| p != key).collect(),
        }
    }

    /// Relabels leaves by `perm`, where `perm[k - 1]` is the new label of leaf `k`.
    pub fn relabeled(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n, "permutation length must equal leaf count");
        let mut dashed: Vec<_> = self
            .dashed
            .iter()
            .map(|&(i, j)| {
                let (a, b) = (perm[i - 1], perm[j - 1]);
                (a.min(b), a.max(b))
            })
            .collect();
        dashed.sort_unstable();
        TwoColoredStar { n: self.n, dashed }
    }

    fn adjacency(&self) -> Vec<Vec<bool>> {
        let mut adj = vec![vec![false; self.n + 1]; self.n + 1];
        for &(i, j) in &self.dashed {
            adj[i][j] = true;
            adj[j][i] = true;
        }
        adj
    }
}

impl fmt::Display for TwoColoredStar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K({};", self.n)?;
        for (k, (i, j)) in self.dashed.iter().enumerate() {
            let sep = if k == 0 { " " } else { ", " };
            write!(f, "{sep}{i}-{j}")?;
        }
        write!(f, ")")
    }
}

impl std::str::FromStr for TwoColoredStar {
    type Err = GraphError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_graph(s).map(|p| p.graph)
    }
}

/// Result of [`parse_graph`]: the graph plus how many duplicate pairs were dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedGraph {
    pub graph: TwoColoredStar,
    pub duplicates: usize,
}

/// Parses `K(<n>; <i>-<j>, ...)` or `K(<n>;)`. Whitespace is insignificant.
pub fn parse_graph(spec: &str) -> Result<ParsedGraph, GraphError> {
    let malformed = || GraphError::Malformed(spec.to_string());
    let compact: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    let body = compact
        .strip_prefix("K(")
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(malformed)?;
    let (n_text, pairs_text) = body.split_once(';').ok_or_else(malformed)?;
    let n: usize = n_text.parse().map_err(|_| malformed())?;
    let mut pairs = Vec::new();
    if !pairs_text.is_empty() {
        for item in pairs_text.split(',') {
            let (a, b) = item.split_once('-').ok_or_else(malformed)?;
            let a: usize = a.parse().map_err(|_| malformed())?;
            let b: usize = b.parse().map_err(|_| malformed())?;
            pairs.push((a, b));
        }
    }
    let (graph, duplicates) = TwoColoredStar::with_duplicate_count(n, pairs)?;
    Ok(ParsedGraph { graph, duplicates })
}

/// Connected components of the dashed graph, restricted to leaves that touch
/// at least one dashed pair. `nu` is the number of components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DashedComponents {
    pub partition: Vec<Vec<usize>>,
    pub nu: usize,
}

pub fn dashed_components(g: &TwoColoredStar) -> DashedComponents {
    let n = g.leaves();
    let mut parent: Vec<usize> = (0..=n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut root = x;
        while parent[root] != root {
            root = parent[root];
        }
        let mut cur = x;
        while parent[cur] != root {
            let next = parent[cur];
            parent[cur] = root;
            cur = next;
        }
        root
    }
    for &(i, j) in g.dashed() {
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        if ri != rj {
            parent[ri.max(rj)] = ri.min(rj);
        }
    }
    let deg = g.dashed_degrees();
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (leaf, &d) in deg.iter().enumerate().skip(1) {
        if d > 0 {
            let root = find(&mut parent, leaf);
            groups.entry(root).or_default().push(leaf);
        }
    }
    let partition: Vec<Vec<usize>> = groups.into_values().collect();
    DashedComponents {
        nu: partition.len(),
        partition,
    }
}

/// Output of [`prune_isolated_leaves`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pruned {
    pub graph: TwoColoredStar,
    pub removed: Vec<usize>,
    /// `kept[k - 1]` is the original label of pruned leaf `k`.
    pub kept: Vec<usize>,
}

/// Drops leaves that touch no dashed pair and relabels the rest `1..=n'`
/// in their original order.
pub fn prune_isolated_leaves(g: &TwoColoredStar) -> Pruned {
    let deg = g.dashed_degrees();
    let (kept, removed): (Vec<usize>, Vec<usize>) = (1..=g.leaves()).partition(|&l| deg[l] > 0);
    let mut new_label = vec![0; g.leaves() + 1];
    for (idx, &leaf) in kept.iter().enumerate() {
        new_label[leaf] = idx + 1;
    }
    let dashed = g
        .dashed()
        .iter()
        .map(|&(i, j)| (new_label[i], new_label[j]))
        .collect();
    Pruned {
        graph: TwoColoredStar {
            n: kept.len(),
            dashed,
        },
        removed,
        kept,
    }
}

/// Isomorphism-class certificate of the dashed graph.
///
/// Vertices are placed in order of non-increasing dashed degree, and among
/// all such placements the one with the largest adjacency bit string wins.
/// Position pairs are ranked colexicographically and earlier pairs are
/// more significant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CanonicalForm {
    pub n: usize,
    pub edges: usize,
    pub code: u128,
}

// Colex rank of the position pair a < b: pairs among the first `k`
// positions occupy ranks `0..k(k-1)/2`.
fn pair_rank(a: usize, b: usize) -> usize {
    b * (b - 1) / 2 + a
}

pub fn canonical_form(g: &TwoColoredStar) -> CanonicalForm {
    canonical_labeling(g).0
}

/// Certificate plus the graph relabeled into canonical position.
pub fn canonical_labeling(g: &TwoColoredStar) -> (CanonicalForm, TwoColoredStar) {
    let n = g.leaves();
    let adj = g.adjacency();
    let deg = g.dashed_degrees();
    let mut target_deg: Vec<usize> = deg[1..].to_vec();
    target_deg.sort_unstable_by(|a, b| b.cmp(a));
    let pairs = n * n.saturating_sub(1) / 2;

    struct Search<'a> {
        n: usize,
        pairs: usize,
        adj: &'a [Vec<bool>],
        deg: &'a [usize],
        target_deg: &'a [usize],
        order: Vec<usize>,
        used: Vec<bool>,
        best: Option<(u128, Vec<usize>)>,
    }

    impl Search<'_> {
        // `code` holds the bits fixed by positions placed so far; a branch is
        // cut once its prefix is already below the incumbent's prefix.
        fn run(&mut self, code: u128) {
            let pos = self.order.len();
            if let Some((best, _)) = &self.best {
                let fixed_mask = self.prefix_mask(pos);
                if code & fixed_mask < best & fixed_mask {
                    return;
                }
            }
            if pos == self.n {
                if self.best.as_ref().is_none_or(|(b, _)| code > *b) {
                    self.best = Some((code, self.order.clone()));
                }
                return;
            }
            for v in 1..=self.n {
                if self.used[v] || self.deg[v] != self.target_deg[pos] {
                    continue;
                }
                let mut next = code;
                for (a, &u) in self.order.iter().enumerate() {
                    if self.adj[u][v] {
                        next |= 1u128 << (self.pairs - 1 - pair_rank(a, pos));
                    }
                }
                self.used[v] = true;
                self.order.push(v);
                self.run(next);
                self.order.pop();
                self.used[v] = false;
            }
        }

        // Bits for every pair (a, b) with a < b < pos.
        fn prefix_mask(&self, pos: usize) -> u128 {
            let fixed = pos * pos.saturating_sub(1) / 2;
            if fixed == 0 {
                return 0;
            }
            let ones = if fixed >= 128 { u128::MAX } else { (1u128 << fixed) - 1 };
            ones << (self.pairs - fixed)
        }
    }

    let mut search = Search {
        n,
        pairs,
        adj: &adj,
        deg: &deg,
        target_deg: &target_deg,
        order: Vec::with_capacity(n),
        used: vec![false; n + 1],
        best: None,
    };
    search.run(0);
    let (code, order) = search.best.unwrap_or((0, Vec::new()));
    // order[pos] = original vertex at canonical position pos
    let mut perm = vec![0; n];
    for (pos, &v) in order.iter().enumerate() {
        perm[v - 1] = pos + 1;
    }
    let canonical = if n == 0 { g.clone() } else { g.relabeled(&perm) };
    (
        CanonicalForm {
            n,
            edges: g.dashed().len(),
            code,
        },
        canonical,
    )
}

pub fn is_isomorphic(g1: &TwoColoredStar, g2: &TwoColoredStar) -> bool {
    if g1.leaves() != g2.leaves() || g1.dashed().len() != g2.dashed().len() {
        return false;
    }
    let mut d1 = g1.dashed_degrees();
    let mut d2 = g2.dashed_degrees();
    d1.sort_unstable();
    d2.sort_unstable();
    d1 == d2 && canonical_form(g1) == canonical_form(g2)
}

/// Injective map from pattern leaves into host leaves carrying dashed pairs
/// to dashed pairs. `map[k - 1]` is the image of pattern leaf `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    pub fn image(&self, leaf: usize) -> usize {
        self.map[leaf - 1]
    }

    pub fn is_valid(&self, host: &TwoColoredStar, pattern: &TwoColoredStar) -> bool {
        if self.map.len() != pattern.leaves() {
            return false;
        }
        let mut seen = BTreeSet::new();
        if !self
            .map
            .iter()
            .all(|&v| v >= 1 && v <= host.leaves() && seen.insert(v))
        {
            return false;
        }
        pattern
            .dashed()
            .iter()
            .all(|&(i, j)| host.is_dashed(self.image(i), self.image(j)))
    }
}

/// Finds a (not necessarily induced) copy of `pattern` inside `host`.
pub fn contains_subgraph(host: &TwoColoredStar, pattern: &TwoColoredStar) -> Option<Embedding> {
    let m = pattern.leaves();
    if m > host.leaves() || pattern.dashed().len() > host.dashed().len() {
        return None;
    }
    let host_adj = host.adjacency();
    let host_deg = host.dashed_degrees();
    let pat_adj = pattern.adjacency();
    let pat_deg = pattern.dashed_degrees();
    // Most constrained pattern leaves first; ties keep label order.
    let mut order: Vec<usize> = (1..=m).collect();
    order.sort_by(|&a, &b| pat_deg[b].cmp(&pat_deg[a]).then(a.cmp(&b)));

    #[allow(clippy::too_many_arguments)]
    fn extend(
        k: usize,
        order: &[usize],
        image: &mut [usize],
        used: &mut [bool],
        host_adj: &[Vec<bool>],
        host_deg: &[usize],
        pat_adj: &[Vec<bool>],
        pat_deg: &[usize],
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let p = order[k];
        for h in 1..used.len() {
            if used[h] || host_deg[h] < pat_deg[p] {
                continue;
            }
            let consistent = order[..k]
                .iter()
                .all(|&q| !pat_adj[p][q] || host_adj[h][image[q]]);
            if !consistent {
                continue;
            }
            used[h] = true;
            image[p] = h;
            if extend(k + 1, order, image, used, host_adj, host_deg, pat_adj, pat_deg) {
                return true;
            }
            used[h] = false;
        }
        false
    }

    let mut image = vec![0; m + 1];
    let mut used = vec![false; host.leaves() + 1];
    extend(
        0, &order, &mut image, &mut used, &host_adj, &host_deg, &pat_adj, &pat_deg,
    )
    .then(|| Embedding {
        map: image[1..].to_vec(),
    })
}

/// One representative per isomorphism class of dashed configurations on `n`
/// leaves, in canonical order. Representatives are in canonical labeling.
pub fn enumerate_graphs(n: usize) -> Result<Vec<TwoColoredStar>, GraphError> {
    enumerate_graphs_with_cap(n, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_graphs_with_cap(n: usize, cap: usize) -> Result<Vec<TwoColoredStar>, GraphError> {
    let cap = cap.min(MAX_LEAVES);
    if n > cap {
        return Err(GraphError::CapExceeded { n, cap });
    }
    // Classes with k + 1 dashed pairs are exactly the one-pair extensions of
    // classes with k pairs.
    let mut all: BTreeMap<CanonicalForm, TwoColoredStar> = BTreeMap::new();
    let (form, rep) = canonical_labeling(&TwoColoredStar::empty(n));
    all.insert(form, rep.clone());
    let mut layer = vec![rep];
    while !layer.is_empty() {
        let mut next: BTreeMap<CanonicalForm, TwoColoredStar> = BTreeMap::new();
        for g in &layer {
            for i in 1..=n {
                for j in (i + 1)..=n {
                    if g.is_dashed(i, j) {
                        continue;
                    }
                    let mut dashed = g.dashed().to_vec();
                    dashed.push((i, j));
                    dashed.sort_unstable();
                    let h = TwoColoredStar { n, dashed };
                    let (form, rep) = canonical_labeling(&h);
                    next.entry(form).or_insert(rep);
                }
            }
        }
        layer = next.values().cloned().collect();
        all.extend(next);
    }
    Ok(all.into_values().collect())
}
