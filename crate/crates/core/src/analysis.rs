//! End-to-end analysis of one graph and the exhaustive cross-validation sweep.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num::BigUint;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::classifier::{check_nu_conditions, classify_by_theorem, ClassifierError, NuViolation, TheoremClass, TheoremVerdict};
use crate::graph::{canonical_form, dashed_components, enumerate_graphs_with_cap, prune_isolated_leaves, GraphError, TwoColoredStar};
use crate::growth::{automaton_for, classify_growth, hilbert_prefix, search_free_pair, CoarseGrowth, FreePairCertificate, GrowthClass, GrowthVerdict};
use crate::ncgb::{buchberger, default_degree_bound, GroebnerError, GroebnerResult, Word};
use crate::presentation::{build_presentation, ParameterMode, PresentationError};

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Classifier(#[from] ClassifierError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Theorem,
    Groebner,
    #[default]
    Both,
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "theorem" => Ok(Method::Theorem),
            "groebner" => Ok(Method::Groebner),
            "both" => Ok(Method::Both),
            other => Err(format!("unknown method `{other}` (expected theorem, groebner or both)")),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Theorem => "theorem",
            Method::Groebner => "groebner",
            Method::Both => "both",
        })
    }
}

#[derive(Clone, Debug)]
pub struct AnalysisOptions {
    pub method: Method,
    /// `None` selects `2n + 8`.
    pub degree_bound: Option<usize>,
    pub mode: ParameterMode,
    /// Length of the reported Hilbert prefix.
    pub max_degree: usize,
    /// Block length bound for the free-pair search on exponential classes.
    pub max_block_len: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            method: Method::Both,
            degree_bound: None,
            mode: ParameterMode::Symbolic,
            max_degree: 20,
            max_block_len: 12,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GroebnerSummary {
    pub obstructions: Vec<Word>,
    pub complete: bool,
    pub degree_bound: usize,
    pub basis_size: usize,
    pub unresolved_overlaps: usize,
}

impl GroebnerSummary {
    fn new(r: &GroebnerResult) -> Self {
        GroebnerSummary {
            obstructions: r.obstructions.words().to_vec(),
            complete: r.complete,
            degree_bound: r.degree_bound,
            basis_size: r.basis.len(),
            unresolved_overlaps: r.unresolved_overlaps,
        }
    }
}

/// Reasons a report is flagged.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Discrepancy {
    ClassMismatch { theorem: TheoremClass, engine: GrowthClass },
    NuCondition { violation: NuViolation },
    IncompleteBasis { unresolved_overlaps: usize },
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Discrepancy::ClassMismatch { theorem, engine } => {
                write!(f, "theorem predicts {theorem}, engine computed {engine}")
            }
            Discrepancy::NuCondition { violation } => write!(f, "nu condition violated: {violation}"),
            Discrepancy::IncompleteBasis { unresolved_overlaps } => write!(
                f,
                "Groebner basis incomplete at the degree bound ({unresolved_overlaps} unresolved overlaps)"
            ),
        }
    }
}

/// Dimension of a finite-dimensional quotient with and without the unit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionCounts {
    #[serde(serialize_with = "crate::bigjson::biguint")]
    pub unital: BigUint,
    #[serde(serialize_with = "crate::bigjson::biguint")]
    pub nonunital: BigUint,
}

impl DimensionCounts {
    fn from_unital(unital: &BigUint) -> Self {
        DimensionCounts {
            unital: unital.clone(),
            nonunital: unital - BigUint::from(unital > &BigUint::from(0u32)),
        }
    }
}

/// Closed form for the star with no dashed pairs: `m^2 + 1` in the number
/// `m = n + 1` of generators, i.e. `n^2 + 2n + 2` in the leaf count.
pub fn pure_star_dimension(leaves: usize) -> BigUint {
    let m = BigUint::from(leaves + 1);
    &m * &m + 1u32
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Timings {
    pub groebner_ms: f64,
    pub growth_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub graph: TwoColoredStar,
    pub pruned: TwoColoredStar,
    pub removed_leaves: Vec<usize>,
    pub nu: usize,
    pub parameter: String,
    pub method: Method,
    pub theorem: TheoremVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub groebner: Option<GroebnerSummary>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_big_vec")]
    pub hilbert_prefix: Option<Vec<BigUint>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub growth: Option<GrowthVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dimension: Option<DimensionCounts>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub free_pair: Option<FreePairCertificate>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub discrepancies: Vec<Discrepancy>,
    /// Wall-clock data; left out of JSON unless requested so that reports stay
    /// byte-for-byte reproducible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

fn opt_big_vec<S: serde::Serializer>(v: &Option<Vec<BigUint>>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => crate::bigjson::biguint_vec(v, s),
        None => s.serialize_none(),
    }
}

impl AnalysisReport {
    pub fn has_discrepancy(&self) -> bool {
        !self.discrepancies.is_empty()
    }

    pub fn engine_class(&self) -> Option<&GrowthClass> {
        self.growth.as_ref().map(|g| &g.class)
    }
}

/// True when the classifier's verdict and the computed class agree.
/// A linear verdict only matches polynomial growth of degree 1.
pub fn classes_agree(theorem: TheoremClass, engine: &GrowthClass) -> bool {
    match (theorem, engine) {
        (TheoremClass::Finite, GrowthClass::Finite { .. }) => true,
        (TheoremClass::PolynomialLinear, GrowthClass::Polynomial { gk_degree }) => *gk_degree == 1,
        (TheoremClass::Exponential, GrowthClass::Exponential) => true,
        _ => false,
    }
}

/// Engine-side results for one graph.
pub struct EngineRun {
    pub groebner: GroebnerResult,
    pub verdict: GrowthVerdict,
    pub automaton: crate::growth::AvoidanceAutomaton,
}

pub fn run_engine(g: &TwoColoredStar, mode: &ParameterMode, degree_bound: Option<usize>) -> Result<EngineRun, AnalysisError> {
    let pres = build_presentation(g, mode.clone())?;
    let bound = degree_bound.unwrap_or_else(|| default_degree_bound(g.leaves()));
    let groebner = buchberger(&pres, bound)?;
    let automaton = automaton_for(&groebner, pres.generators());
    let verdict = classify_growth(&automaton);
    Ok(EngineRun {
        groebner,
        verdict,
        automaton,
    })
}

pub fn analyze(g: &TwoColoredStar, opts: &AnalysisOptions) -> Result<AnalysisReport, AnalysisError> {
    let pruned = prune_isolated_leaves(g);
    let theorem = classify_by_theorem(g)?;
    let mut report = AnalysisReport {
        graph: g.clone(),
        nu: dashed_components(&pruned.graph).nu,
        pruned: pruned.graph,
        removed_leaves: pruned.removed,
        parameter: opts.mode.to_string(),
        method: opts.method,
        theorem,
        groebner: None,
        hilbert_prefix: None,
        growth: None,
        dimension: None,
        free_pair: None,
        notes: Vec::new(),
        discrepancies: Vec::new(),
        timings: None,
    };
    let mut engine_coarse = None;
    if opts.method != Method::Theorem {
        let t0 = Instant::now();
        let pres = build_presentation(g, opts.mode.clone())?;
        let bound = opts.degree_bound.unwrap_or_else(|| default_degree_bound(g.leaves()));
        let gb = buchberger(&pres, bound)?;
        let groebner_ms = t0.elapsed().as_secs_f64() * 1e3;
        let t1 = Instant::now();
        let aut = automaton_for(&gb, pres.generators());
        let verdict = classify_growth(&aut);
        report.hilbert_prefix = Some(hilbert_prefix(&aut, opts.max_degree));
        if verdict.class == GrowthClass::Exponential {
            report.free_pair = search_free_pair(&aut, opts.max_block_len);
        }
        report.timings = Some(Timings {
            groebner_ms,
            growth_ms: t1.elapsed().as_secs_f64() * 1e3,
        });
        if !gb.complete {
            report.discrepancies.push(Discrepancy::IncompleteBasis {
                unresolved_overlaps: gb.unresolved_overlaps,
            });
        }
        if opts.method == Method::Both && !classes_agree(report.theorem.coarse, &verdict.class) {
            report.discrepancies.push(Discrepancy::ClassMismatch {
                theorem: report.theorem.coarse,
                engine: verdict.class.clone(),
            });
        }
        if let Some(d) = verdict.class.dimension() {
            report.dimension = Some(DimensionCounts::from_unital(d));
            if g.dashed().is_empty() {
                let closed = pure_star_dimension(g.leaves());
                report.notes.push(format!(
                    "no dashed pairs: dimension {d} vs closed form (n+1)^2 + 1 = n^2 + 2n + 2 = {closed} \
                     for n = {} leaves; in terms of the generator count m = n + 1 this is m^2 + 1",
                    g.leaves()
                ));
            }
        }
        engine_coarse = Some(verdict.class.coarse());
        report.groebner = Some(GroebnerSummary::new(&gb));
        report.growth = Some(verdict);
    }
    let coarse = engine_coarse.unwrap_or_else(|| report.theorem.coarse.coarse());
    report.discrepancies.extend(
        check_nu_conditions(g, coarse)
            .into_iter()
            .map(|violation| Discrepancy::NuCondition { violation }),
    );
    Ok(report)
}

/// One graph of the sweep.
#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub graph: TwoColoredStar,
    pub pruned: TwoColoredStar,
    pub nu: usize,
    pub theorem: TheoremClass,
    pub branch: crate::classifier::Branch,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<crate::classifier::Witness>,
    pub engine: GrowthClass,
    pub complete: bool,
    pub obstruction_count: usize,
    pub max_obstruction_len: usize,
    pub agree: bool,
    pub discrepancies: Vec<Discrepancy>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepSummary {
    pub max_leaves: usize,
    pub parameter: String,
    /// `None` means the per-graph default `2n + 8`.
    pub degree_bound: Option<usize>,
    pub classes: usize,
    /// Number of classes with exactly `n` leaves, keyed by `n`.
    pub classes_by_leaves: BTreeMap<usize, usize>,
    pub agreements: usize,
    pub incomplete: usize,
    /// `matrix[theorem][engine]` counts, keys are coarse class names.
    pub agreement_matrix: BTreeMap<String, BTreeMap<String, usize>>,
    pub rows: Vec<SweepRow>,
}

impl SweepSummary {
    pub fn all_agree(&self) -> bool {
        self.agreements == self.classes && self.incomplete == 0
    }

    pub fn disagreements(&self) -> impl Iterator<Item = &SweepRow> {
        self.rows.iter().filter(|r| !r.discrepancies.is_empty())
    }
}

/// Runs both classifiers over every isomorphism class with `1..=max_leaves`
/// leaves. Rows are sorted by canonical certificate.
pub fn cross_validate(
    max_leaves: usize,
    enumeration_cap: usize,
    degree_bound: Option<usize>,
    mode: &ParameterMode,
) -> Result<SweepSummary, AnalysisError> {
    let mut graphs = Vec::new();
    for n in 1..=max_leaves {
        graphs.extend(enumerate_graphs_with_cap(n, enumeration_cap)?);
    }
    let mut rows = graphs
        .par_iter()
        .map(|g| sweep_row(g, degree_bound, mode))
        .collect::<Result<Vec<_>, _>>()?;
    rows.sort_by_key(|r| canonical_form(&r.graph));

    let mut matrix: BTreeMap<String, BTreeMap<String, usize>> = BTreeMap::new();
    for r in &rows {
        *matrix
            .entry(r.theorem.to_string())
            .or_default()
            .entry(r.engine.coarse().to_string())
            .or_default() += 1;
    }
    let mut by_leaves = BTreeMap::new();
    for r in &rows {
        *by_leaves.entry(r.graph.leaves()).or_default() += 1;
    }
    Ok(SweepSummary {
        max_leaves,
        classes_by_leaves: by_leaves,
        parameter: mode.to_string(),
        degree_bound,
        classes: rows.len(),
        agreements: rows.iter().filter(|r| r.agree).count(),
        incomplete: rows.iter().filter(|r| !r.complete).count(),
        agreement_matrix: matrix,
        rows,
    })
}

fn sweep_row(g: &TwoColoredStar, degree_bound: Option<usize>, mode: &ParameterMode) -> Result<SweepRow, AnalysisError> {
    let verdict = classify_by_theorem(g)?;
    let run = run_engine(g, mode, degree_bound)?;
    let engine = run.verdict.class.clone();
    let agree = classes_agree(verdict.coarse, &engine);
    let mut discrepancies = Vec::new();
    if !run.groebner.complete {
        discrepancies.push(Discrepancy::IncompleteBasis {
            unresolved_overlaps: run.groebner.unresolved_overlaps,
        });
    }
    if !agree {
        discrepancies.push(Discrepancy::ClassMismatch {
            theorem: verdict.coarse,
            engine: engine.clone(),
        });
    }
    discrepancies.extend(
        check_nu_conditions(g, engine.coarse())
            .into_iter()
            .map(|violation| Discrepancy::NuCondition { violation }),
    );
    Ok(SweepRow {
        graph: g.clone(),
        pruned: prune_isolated_leaves(g).graph,
        nu: verdict.nu,
        theorem: verdict.coarse,
        branch: verdict.branch,
        witness: verdict.witness,
        engine,
        complete: run.groebner.complete,
        obstruction_count: run.groebner.obstructions.len(),
        max_obstruction_len: run.groebner.obstructions.max_len(),
        agree,
        discrepancies,
    })
}

/// Coarse growth computed by the engine, for property checks.
pub fn engine_coarse(g: &TwoColoredStar) -> Result<CoarseGrowth, AnalysisError> {
    Ok(run_engine(g, &ParameterMode::Symbolic, None)?.verdict.class.coarse())
}
