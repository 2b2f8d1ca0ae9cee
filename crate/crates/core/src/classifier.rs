//! Growth predicted from the graph alone.
//!
//! After dropping leaves that touch no dashed pair (`n'` leaves remain):
//!
//! * finite when `n' = 0`, when the dashed graph is a star (one leaf dashed
//!   to all others), or when `n' = 3` and it is a triangle;
//! * linear when `n' = 4` and it is not a star;
//! * exponential otherwise, and then one of three minimal exponential
//!   configurations embeds.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{
    contains_subgraph, dashed_components, prune_isolated_leaves, Embedding, TwoColoredStar,
};
use crate::growth::CoarseGrowth;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Branch {
    #[serde(rename = "(i)-star")]
    Star,
    #[serde(rename = "(i)-triangle")]
    Triangle,
    #[serde(rename = "(i)-empty")]
    Empty,
    #[serde(rename = "(ii)")]
    FourLeaves,
    #[serde(rename = "(iii)")]
    Exponential,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Star => "(i)-star",
            Branch::Triangle => "(i)-triangle",
            Branch::Empty => "(i)-empty",
            Branch::FourLeaves => "(ii)",
            Branch::Exponential => "(iii)",
        })
    }
}

/// Coarse verdict of the classifier. Polynomial verdicts are always linear.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TheoremClass {
    #[serde(rename = "finite")]
    Finite,
    #[serde(rename = "polynomial-linear")]
    PolynomialLinear,
    #[serde(rename = "exponential")]
    Exponential,
}

impl TheoremClass {
    pub fn coarse(self) -> CoarseGrowth {
        match self {
            TheoremClass::Finite => CoarseGrowth::Finite,
            TheoremClass::PolynomialLinear => CoarseGrowth::Polynomial,
            TheoremClass::Exponential => CoarseGrowth::Exponential,
        }
    }
}

impl fmt::Display for TheoremClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TheoremClass::Finite => "finite",
            TheoremClass::PolynomialLinear => "polynomial-linear",
            TheoremClass::Exponential => "exponential",
        })
    }
}

/// A minimal exponential configuration found inside the graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub pattern: TwoColoredStar,
    /// Pattern leaves mapped to leaves of the original (unpruned) graph.
    pub embedding: Embedding,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremVerdict {
    pub coarse: TheoremClass,
    pub branch: Branch,
    pub witness: Option<Witness>,
    /// Number of dashed components of the pruned graph.
    pub nu: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassifierError {
    #[error("{0} is classified exponential but none of the minimal exponential configurations embeds")]
    MissingWitness(TwoColoredStar),
}

/// `K(5; 1-2,2-3,4-5)`, `K(6; 1-6,2-3,4-5)`, `K(5; 1-2,1-4,1-5,2-3)`, in
/// the order they are tried.
pub fn minimal_exponential_patterns() -> [TwoColoredStar; 3] {
    let mk = |n, pairs: &[(usize, usize)]| TwoColoredStar::new(n, pairs.iter().copied()).unwrap();
    [
        mk(5, &[(1, 2), (2, 3), (4, 5)]),
        mk(6, &[(1, 6), (2, 3), (4, 5)]),
        mk(5, &[(1, 2), (1, 4), (1, 5), (2, 3)]),
    ]
}

/// True when one leaf is dashed to every other leaf and no other pair is dashed.
fn is_star_pattern(g: &TwoColoredStar) -> bool {
    let n = g.leaves();
    n >= 2 && g.dashed().len() == n - 1 && g.dashed_degrees().iter().any(|&d| d == n - 1)
}

fn is_triangle(g: &TwoColoredStar) -> bool {
    g.leaves() == 3 && g.dashed().len() == 3
}

pub fn classify_by_theorem(g: &TwoColoredStar) -> Result<TheoremVerdict, ClassifierError> {
    let pruned = prune_isolated_leaves(g);
    let h = &pruned.graph;
    let nu = dashed_components(h).nu;
    let verdict = |coarse, branch| TheoremVerdict {
        coarse,
        branch,
        witness: None,
        nu,
    };
    if h.leaves() == 0 {
        return Ok(verdict(TheoremClass::Finite, Branch::Empty));
    }
    if is_star_pattern(h) {
        return Ok(verdict(TheoremClass::Finite, Branch::Star));
    }
    if is_triangle(h) {
        return Ok(verdict(TheoremClass::Finite, Branch::Triangle));
    }
    if h.leaves() == 4 {
        return Ok(verdict(TheoremClass::PolynomialLinear, Branch::FourLeaves));
    }
    for pattern in minimal_exponential_patterns() {
        if let Some(e) = contains_subgraph(h, &pattern) {
            let map = e.map.iter().map(|&leaf| pruned.kept[leaf - 1]).collect();
            return Ok(TheoremVerdict {
                coarse: TheoremClass::Exponential,
                branch: Branch::Exponential,
                witness: Some(Witness {
                    pattern,
                    embedding: Embedding { map },
                }),
                nu,
            });
        }
    }
    Err(ClassifierError::MissingWitness(g.clone()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NuViolation {
    /// Finite verdict with `nu != 1`.
    FiniteNeedsOneComponent { nu: usize },
    /// Polynomial verdict with `nu > 2`.
    PolynomialNeedsAtMostTwo { nu: usize },
    /// `nu >= 3` without an exponential verdict.
    ManyComponentsNeedExponential { nu: usize },
}

impl fmt::Display for NuViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NuViolation::FiniteNeedsOneComponent { nu } => write!(f, "finite but nu = {nu} (expected 1)"),
            NuViolation::PolynomialNeedsAtMostTwo { nu } => write!(f, "polynomial but nu = {nu} (expected <= 2)"),
            NuViolation::ManyComponentsNeedExponential { nu } => write!(f, "nu = {nu} >= 3 but not exponential"),
        }
    }
}

/// Necessary conditions relating the number of dashed components to the
/// growth class. `nu` is taken on the pruned graph; the pure star with no
/// dashed pairs (`nu = 0`) is exempt from the finite condition.
pub fn check_nu_conditions(g: &TwoColoredStar, coarse: CoarseGrowth) -> Vec<NuViolation> {
    let nu = dashed_components(&prune_isolated_leaves(g).graph).nu;
    let mut out = Vec::new();
    if coarse == CoarseGrowth::Finite && nu > 1 {
        out.push(NuViolation::FiniteNeedsOneComponent { nu });
    }
    if coarse == CoarseGrowth::Polynomial && nu > 2 {
        out.push(NuViolation::PolynomialNeedsAtMostTwo { nu });
    }
    if nu >= 3 && coarse != CoarseGrowth::Exponential {
        out.push(NuViolation::ManyComponentsNeedExponential { nu });
    }
    out
}
