//! Acceptance criteria. Runs as a plain binary so that every criterion
//! prints exactly one PASS/FAIL line; exits nonzero if any fails.

mod common;

use std::process::ExitCode;

use num::{BigRational, BigUint, ToPrimitive};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use tlgrowth_core::analysis::{analyze, cross_validate, run_engine, AnalysisOptions};
use tlgrowth_core::classifier::{classify_by_theorem, TheoremClass};
use tlgrowth_core::growth::{check_free_pair, hilbert_prefix, search_free_pair, CoarseGrowth, GrowthClass};
use tlgrowth_core::ncgb::{reduce_with_strategy, ReductionStrategy};
use tlgrowth_core::{enumerate_graphs, prune_isolated_leaves, NcPolynomial, ParameterMode, Scalar, TwoColoredStar, Word};

use common::{brute_force_counts, leaves_up_to, pure_star_rules};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn graph(spec: &str) -> TwoColoredStar {
    spec.parse().unwrap()
}

fn word(s: &str) -> Word {
    Word::parse(s).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn engine_class(g: &TwoColoredStar, mode: &ParameterMode) -> Result<GrowthClass, String> {
    let run = run_engine(g, mode, None).map_err(|e| format!("{g}: {e}"))?;
    ensure(run.groebner.complete, || format!("{g}: incomplete basis"))?;
    Ok(run.verdict.class)
}

fn criterion_1() -> Outcome {
    let s = cross_validate(6, 6, None, &ParameterMode::Symbolic).map_err(|e| e.to_string())?;
    if let Some(row) = s.disagreements().next() {
        return Err(format!("{}: {:?}", row.graph, row.discrepancies));
    }
    ensure(s.all_agree(), || format!("{}/{} agree, {} incomplete", s.agreements, s.classes, s.incomplete))?;
    for row in &s.rows {
        let needs = row.theorem == TheoremClass::Exponential;
        match &row.witness {
            Some(w) => ensure(needs && w.embedding.is_valid(&row.graph, &w.pattern), || {
                format!("{}: bad witness", row.graph)
            })?,
            None => ensure(!needs, || format!("{}: exponential without witness", row.graph))?,
        }
    }
    Ok(format!("{} classes, 100% agreement, all complete", s.classes))
}

fn criterion_2() -> Outcome {
    let mut cases: Vec<(TwoColoredStar, CoarseGrowth, Option<usize>)> = Vec::new();
    for n in 2..=6 {
        cases.push((TwoColoredStar::star_pattern(n), CoarseGrowth::Finite, None));
    }
    cases.push((graph("K(3; 1-2,1-3,2-3)"), CoarseGrowth::Finite, None));
    for g in enumerate_graphs(4).unwrap() {
        let pruned = prune_isolated_leaves(&g).graph;
        if pruned.leaves() == 4 && !tlgrowth_core::is_isomorphic(&pruned, &TwoColoredStar::star_pattern(4)) {
            cases.push((g, CoarseGrowth::Polynomial, Some(1)));
        }
    }
    for spec in ["K(5; 1-2,2-3,4-5)", "K(6; 1-6,2-3,4-5)", "K(5; 1-2,1-4,1-5,2-3)"] {
        cases.push((graph(spec), CoarseGrowth::Exponential, None));
    }
    let linear = cases.iter().filter(|c| c.2.is_some()).count();
    ensure(linear == 6, || format!("{linear} non-star n = 4 configurations, expected 6"))?;
    for (g, want, gk) in &cases {
        let got = engine_class(g, &ParameterMode::Symbolic)?;
        ensure(got.coarse() == *want, || format!("{g}: engine {got}, expected {want}"))?;
        if let Some(d) = gk {
            ensure(got == GrowthClass::Polynomial { gk_degree: *d }, || format!("{g}: {got}"))?;
        }
        let theorem = classify_by_theorem(g).map_err(|e| e.to_string())?;
        ensure(theorem.coarse.coarse() == *want, || format!("{g}: theorem {}", theorem.coarse))?;
    }
    Ok(format!("{} graphs, exact class match", cases.len()))
}

fn criterion_3() -> Outcome {
    for n in 1..=6usize {
        let g = TwoColoredStar::empty(n);
        let brute: u64 = brute_force_counts(&pure_star_rules(n), n as u8 + 1, 8).iter().sum();
        let closed = (n * n + 2 * n + 2) as u64;
        ensure(brute == closed, || format!("n = {n}: enumeration {brute} vs {closed}"))?;
        let report = analyze(&g, &AnalysisOptions::default()).map_err(|e| e.to_string())?;
        let dim = report.dimension.as_ref().ok_or_else(|| format!("n = {n}: no dimension"))?;
        ensure(dim.unital == BigUint::from(brute), || format!("n = {n}: engine {} vs {brute}", dim.unital))?;
        ensure(!report.notes.is_empty(), || format!("n = {n}: report lacks the indexing note"))?;
        // With m = n + 1 generators the count is m^2 + 1.
        let m = (n + 1) as u64;
        ensure(brute == m * m + 1, || format!("n = {n}: reindexed form fails"))?;
    }
    Ok("dimensions 5, 10, 17, 26, 37, 50 equal word enumeration; (n+1)^2 + 1 reindexing documented".into())
}

fn criterion_4() -> Outcome {
    let modes: Vec<ParameterMode> = [(1, 2), (1, 3), (2, 3)]
        .into_iter()
        .map(|(p, q)| ParameterMode::Specialized(BigRational::new(p.into(), q.into())))
        .collect();
    let graphs = leaves_up_to(5);
    for g in &graphs {
        let base = run_engine(g, &ParameterMode::Symbolic, None).map_err(|e| e.to_string())?;
        for m in &modes {
            let other = run_engine(g, m, None).map_err(|e| e.to_string())?;
            ensure(other.groebner.complete, || format!("{g} at t = {m}: incomplete"))?;
            ensure(other.groebner.obstructions == base.groebner.obstructions, || {
                format!("{g}: obstruction sets differ at t = {m}")
            })?;
        }
    }
    Ok(format!("{} classes x 4 parameter values, identical obstruction sets", graphs.len()))
}

fn criterion_5() -> Outcome {
    let g = graph("K(5; 1-2,2-3,4-5)");
    let run = run_engine(&g, &ParameterMode::Symbolic, None).map_err(|e| e.to_string())?;
    let cert = check_free_pair(&word("0,1,2,0,4,5"), &word("0,2,3,0,4,5"), &run.groebner.obstructions)
        .map_err(|v| format!("{g}: {v}"))?;

    let h = graph("K(4; 1-2,3-4)");
    let run = run_engine(&h, &ParameterMode::Symbolic, None).map_err(|e| e.to_string())?;
    let q = word("0,1,2").concat(&word("0,3,4"));
    for m in 1..=50 {
        ensure(run.groebner.obstructions.is_normal(&q.repeat(m)), || format!("{h}: (q1 q2)^{m} reducible"))?;
    }
    ensure(search_free_pair(&run.automaton, 12).is_none(), || format!("{h}: unexpected free pair"))?;
    Ok(format!("pair verified (window {}), (q1 q2)^m normal for m <= 50, no free pair at bound 12", cert.window_bound))
}

fn random_scalar(rng: &mut StdRng) -> Scalar {
    let c = Scalar::from_ratio(rng.gen_range(-6..=6), rng.gen_range(1..=5));
    match rng.gen_range(0..4) {
        0 => &c * &Scalar::t(),
        1 => &c / &(&Scalar::t() + &Scalar::one()),
        _ => c,
    }
}

fn random_poly(rng: &mut StdRng, generators: u8) -> NcPolynomial {
    let terms = rng.gen_range(0..=5);
    NcPolynomial::from_terms((0..terms).map(|_| {
        let len = rng.gen_range(0..=7);
        let w = Word::new((0..len).map(|_| rng.gen_range(0..generators)).collect());
        (w, random_scalar(rng))
    }))
}

fn criterion_6() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x7e3a);
    let small = leaves_up_to(4);
    let mut checked = 0;
    for g in &small {
        let run = run_engine(g, &ParameterMode::Symbolic, None).map_err(|e| e.to_string())?;
        let gb = &run.groebner;
        let k = g.leaves() as u8 + 1;
        for _ in 0..1000 {
            let p = random_poly(&mut rng, k);
            let q = random_poly(&mut rng, k);
            let c = random_scalar(&mut rng);
            let rp = gb.reduce(&p);
            ensure(rp.words().all(|w| gb.obstructions.is_normal(w)), || format!("{g}: {p} not fully reduced"))?;
            ensure(gb.reduce(&rp) == rp, || format!("{g}: reduction of {p} not idempotent"))?;
            ensure(gb.reduce(&p.scale(&c).add(&q)) == rp.scale(&c).add(&gb.reduce(&q)), || {
                format!("{g}: reduction not linear on {p}, {q}")
            })?;
            let other = reduce_with_strategy(&p, &gb.basis, ReductionStrategy::SmallestRightmost);
            ensure(other == rp, || format!("{g}: rewrite order changes normal form of {p}"))?;
            checked += 1;
        }
        let obs: Vec<Vec<u8>> = gb.obstructions.words().iter().map(|w| w.letters().to_vec()).collect();
        let brute = brute_force_counts(&obs, k, 8);
        let counted: Vec<u64> = hilbert_prefix(&run.automaton, 8).iter().map(|a| a.to_u64().unwrap()).collect();
        ensure(brute == counted, || format!("{g}: path counts {counted:?} vs enumeration {brute:?}"))?;
    }

    let mid = leaves_up_to(5);
    let mut edges = 0;
    for g in &mid {
        let run = run_engine(g, &ParameterMode::Symbolic, None).map_err(|e| e.to_string())?;
        let class = run.verdict.class.clone();
        let cumulative = cumulative_prefix(&run.automaton, 12);
        for &(i, j) in g.dashed() {
            let smaller = g.without_dashed(i, j);
            let sub = run_engine(&smaller, &ParameterMode::Symbolic, None).map_err(|e| e.to_string())?;
            ensure(sub.verdict.class.coarse() <= class.coarse(), || {
                format!("{g} -> {smaller}: {} exceeds {class}", sub.verdict.class)
            })?;
            let sub_cum = cumulative_prefix(&sub.automaton, 12);
            ensure(sub_cum.iter().zip(&cumulative).all(|(a, b)| a <= b), || {
                format!("{g} -> {smaller}: filtered dimensions increase")
            })?;
            edges += 1;
        }
        let pruned = prune_isolated_leaves(g).graph;
        let pc = engine_class(&pruned, &ParameterMode::Symbolic)?;
        ensure(pc.coarse() == class.coarse(), || format!("{g}: pruning changes {class} to {pc}"))?;
    }
    Ok(format!(
        "{checked} random polynomials over {} graphs; path counts to degree 8; {edges} edge deletions and {} prunings",
        small.len(),
        mid.len()
    ))
}

fn cumulative_prefix(aut: &tlgrowth_core::growth::AvoidanceAutomaton, d: usize) -> Vec<BigUint> {
    let mut total = BigUint::from(0u32);
    hilbert_prefix(aut, d)
        .into_iter()
        .map(|a| {
            total += a;
            total.clone()
        })
        .collect()
}

fn criterion_7() -> Outcome {
    let mut failures = Vec::new();
    let mut details = Vec::new();
    for spec in ["K(5; 1-2,2-3,4-5)", "K(6; 1-6,2-3,4-5)", "K(5; 1-2,1-4,1-5,2-3)"] {
        let g = graph(spec);
        let run = run_engine(&g, &ParameterMode::Symbolic, None).map_err(|e| e.to_string())?;
        let cum = cumulative_prefix(&run.automaton, 30);
        let ratio = cum[30].to_f64().unwrap() / cum[0].to_f64().unwrap();
        if ratio > 1.05f64.powi(30) {
            details.push(format!("{g}: cumulative ratio {ratio:.0}"));
        } else {
            failures.push(format!("{g}: cumulative ratio {ratio:.2} <= 1.05^30"));
        }
    }

    let d4 = graph("K(4; 1-2,1-3,1-4,2-3,2-4,3-4)");
    let run = run_engine(&d4, &ParameterMode::Symbolic, None).map_err(|e| e.to_string())?;
    let h = hilbert_prefix(&run.automaton, 60);
    let tail = &h[20..=60];
    if tail.iter().all(|a| a == &tail[0]) {
        details.push(format!("{d4}: entries constant ({}) on degrees 20..60", tail[0]));
    } else {
        let distinct: std::collections::BTreeSet<String> = tail.iter().map(|a| a.to_string()).collect();
        let period = (1..tail.len()).find(|&p| tail.iter().zip(&tail[p..]).all(|(a, b)| a == b));
        failures.push(format!(
            "{d4}: entries on degrees 20..60 are not constant (values {{{}}}, period {}); bounded, so growth is linear",
            distinct.into_iter().collect::<Vec<_>>().join(", "),
            period.map_or("none".into(), |p| p.to_string())
        ));
    }
    if failures.is_empty() {
        Ok(details.join("; "))
    } else {
        Err(failures.join("; "))
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("1 theorem cross-validation, n <= 6", criterion_1),
        ("2 example battery", criterion_2),
        ("3 pure star dimension oracle", criterion_3),
        ("4 parameter independence, n <= 5", criterion_4),
        ("5 witness verification", criterion_5),
        ("6 property suites", criterion_6),
        ("7 growth signatures", criterion_7),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("criterion {name}: PASS ({detail})"),
            Err(why) => {
                failed += 1;
                println!("criterion {name}: FAIL ({why})");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 7 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
