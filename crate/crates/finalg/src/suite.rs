//! The eight-part verification suite behind the `suite` subcommand and the
//! integration tests. Each part sweeps a deterministic corpus of small
//! algebras and reports one line per check; a part is ok when nothing
//! failed. No part panics on a broken algebra — failures become report
//! lines so the whole suite always runs to completion.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{generate_congruence, product, quotient, Congruence, FiniteAlgebra, Homomorphism};
use crate::equivalence::{
    builtin_hoop_witness, check_bj_witness, check_maltsev, enumerate_points_l2, roundtrip_hoop,
    roundtrip_point,
};
use crate::ideals::{
    filter_congruence_bijection, is_relative_u_ideal, negation_duality, IdealError,
};
use crate::iso::{enumerate_homomorphisms, find_isomorphism};
use crate::oracle::{congruence_by_intersection, pullback_mediates};
use crate::search::find_models;
use crate::term::{check_theory, CorpusVerdict, Theory};
use crate::theories::{
    boolean_algebra_from_ring, boolean_cube, builtins, cyclic_ring, cyclic_rng, derived_mv_ops,
    godel_chain, hoop_reduct, lukasiewicz_chain, mv_order, ring_from_boolean_algebra, zero_rng,
};
use crate::unital::{check_augmentation, dorroh, mv_closure, UnitalError};

/// Outcome of one suite part.
#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub name: &'static str,
    pub ok: bool,
    /// Names of the algebras the part swept, sorted.
    pub corpus: Vec<String>,
    /// One line per check; failing lines start with `FAIL`.
    pub details: Vec<String>,
    pub duration: Duration,
}

/// The part names accepted by [`run_named`], in run order.
pub const PART_NAMES: [&str; 8] = [
    "axioms",
    "semi-abelian-witness",
    "ideal-determination",
    "mv-closure",
    "roundtrips",
    "duality-order",
    "dorroh-boolean",
    "oracles",
];

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 7;

/// Wall-clock budget a part is expected to stay under, where one is pinned.
pub fn budget(name: &str) -> Option<Duration> {
    let secs = match name {
        "axioms" => 1,
        "semi-abelian-witness" => 30,
        "ideal-determination" => 10,
        "mv-closure" => 5,
        "roundtrips" => 10,
        "duality-order" => 2,
        "dorroh-boolean" => 60,
        _ => return None,
    };
    Some(Duration::from_secs(secs))
}

/// Runs every part in order.
pub fn run_all(seed: u64) -> Vec<CriterionReport> {
    PART_NAMES
        .iter()
        .map(|n| run_named(n, seed).expect("listed part exists"))
        .collect()
}

/// Runs a single part by name.
pub fn run_named(name: &str, seed: u64) -> Option<CriterionReport> {
    Some(match name {
        "axioms" => axioms(),
        "semi-abelian-witness" => semi_abelian_witness(),
        "ideal-determination" => ideal_determination(),
        "mv-closure" => closure(),
        "roundtrips" => roundtrips(),
        "duality-order" => duality_order(),
        "dorroh-boolean" => dorroh_boolean(),
        "oracles" => oracles(seed),
        _ => return None,
    })
}

struct Part {
    name: &'static str,
    corpus: Vec<String>,
    details: Vec<String>,
    failures: usize,
    start: Instant,
}

impl Part {
    fn new(name: &'static str) -> Self {
        Part {
            name,
            corpus: Vec::new(),
            details: Vec::new(),
            failures: 0,
            start: Instant::now(),
        }
    }

    fn member(&mut self, alg: &FiniteAlgebra) {
        self.corpus.push(alg.name().to_string());
    }

    fn pass(&mut self, line: impl Into<String>) {
        self.details.push(line.into());
    }

    fn fail(&mut self, line: impl std::fmt::Display) {
        self.failures += 1;
        self.details.push(format!("FAIL {line}"));
    }

    fn record(&mut self, outcome: Result<String, String>) {
        match outcome {
            Ok(line) => self.pass(line),
            Err(line) => self.fail(line),
        }
    }

    fn finish(mut self) -> CriterionReport {
        self.corpus.sort();
        self.corpus.dedup();
        CriterionReport {
            name: self.name,
            ok: self.failures == 0,
            corpus: self.corpus,
            details: self.details,
            duration: self.start.elapsed(),
        }
    }
}

fn theory(name: &str) -> &'static Theory {
    builtins().get(name).expect("builtin theory")
}

/// First failing equation of a theory check, rendered for a report line.
fn theory_ok(alg: &FiniteAlgebra, th: &str) -> Result<(), String> {
    match check_theory(alg, theory(th)) {
        Ok(v) if v.ok() => Ok(()),
        Ok(v) => {
            let (eq, verdict) = v
                .verdicts
                .iter()
                .find(|(_, v)| !v.holds())
                .expect("not ok means some equation failed");
            Err(format!(
                "{}: `{}` fails at {:?}",
                alg.name(),
                eq,
                verdict.counterexample().unwrap_or_default()
            ))
        }
        Err(e) => Err(format!("{}: {e}", alg.name())),
    }
}

fn arcs(models: Vec<FiniteAlgebra>) -> Vec<Arc<FiniteAlgebra>> {
    models.into_iter().map(Arc::new).collect()
}

/// Hoop models up to `max` elements plus chain reducts up to `luk`.
fn hoop_corpus(max: usize, luk: usize) -> Vec<Arc<FiniteAlgebra>> {
    let mut out = Vec::new();
    for n in 1..=max {
        out.extend(arcs(find_models(theory("hoop"), n, None)));
    }
    for n in 2..=luk {
        out.push(Arc::new(
            hoop_reduct(&lukasiewicz_chain(n)).expect("chains carry the hoop operations"),
        ));
    }
    out
}

/// Wajsberg models up to `max` elements plus chain reducts up to `luk`.
fn wajsberg_corpus(max: usize, luk: usize) -> Vec<Arc<FiniteAlgebra>> {
    let mut out = Vec::new();
    for n in 1..=max {
        out.extend(arcs(find_models(theory("whoop"), n, None)));
    }
    for n in 2..=luk {
        out.push(Arc::new(
            hoop_reduct(&lukasiewicz_chain(n)).expect("chains carry the hoop operations"),
        ));
    }
    out
}

/// MV models up to four elements plus the five-chain and the eight-element cube.
fn mv_corpus() -> Vec<Arc<FiniteAlgebra>> {
    let mut out = Vec::new();
    for n in 1..=4 {
        out.extend(arcs(find_models(theory("mv"), n, None)));
    }
    out.push(Arc::new(lukasiewicz_chain(5)));
    out.push(Arc::new(boolean_cube(3)));
    out
}

/// Chains pass the MV axioms and the derived identities; their reducts are
/// Wajsberg hoops.
pub fn axioms() -> CriterionReport {
    let mut part = Part::new("axioms");
    for n in 2..=5 {
        let chain = lukasiewicz_chain(n);
        part.member(&chain);
        let outcome = (|| {
            theory_ok(&chain, "mv")?;
            derived_mv_ops(&chain).map_err(|e| format!("{}: {e}", chain.name()))?;
            let reduct = hoop_reduct(&chain).map_err(|e| format!("{}: {e}", chain.name()))?;
            theory_ok(&reduct, "whoop")?;
            Ok(format!(
                "{}: MV axioms, derived identities, and the Wajsberg reduct all hold",
                chain.name()
            ))
        })();
        part.record(outcome);
    }
    part.finish()
}

fn corpus_line(label: &str, v: &CorpusVerdict) -> Result<String, String> {
    match &v.failure {
        None => Ok(format!("{label} on {} algebras", v.certified_on.len())),
        Some(f) => Err(format!(
            "{label}: `{}` fails on {} at {:?}",
            f.equation, f.algebra, f.assignment
        )),
    }
}

/// The unit-and-kernel witness terms and the induced Mal'tsev term hold on
/// every small hoop.
pub fn semi_abelian_witness() -> CriterionReport {
    let mut part = Part::new("semi-abelian-witness");
    let corpus = hoop_corpus(4, 5);
    for a in &corpus {
        part.member(a);
    }
    let w = builtin_hoop_witness();
    let outcome = check_bj_witness(&w, &corpus)
        .map_err(|e| e.to_string())
        .and_then(|v| corpus_line("witness schemas hold", &v));
    part.record(outcome);
    let outcome = check_maltsev(&w, &corpus)
        .map_err(|e| e.to_string())
        .and_then(|v| corpus_line("Mal'tsev identities hold", &v));
    part.record(outcome);
    part.finish()
}

/// Filters match congruences one-for-one on small hoops, and the
/// kernel-subset test agrees with the filter test on every subset of every
/// small MV-algebra.
pub fn ideal_determination() -> CriterionReport {
    let mut part = Part::new("ideal-determination");
    for h in hoop_corpus(4, 4) {
        part.member(&h);
        let outcome = filter_congruence_bijection(&h)
            .map(|p| {
                format!(
                    "{}: {} filters match {} congruences both ways",
                    h.name(),
                    p.pairs.len(),
                    p.pairs.len()
                )
            })
            .map_err(|e| format!("{}: {e}", h.name()));
        part.record(outcome);
    }
    for a in arcs((1..=4).flat_map(|n| find_models(theory("mv"), n, None)).collect()) {
        part.member(&a);
        let n = a.size();
        let mut holding = 0usize;
        let mut rejected = 0usize;
        let mut problem = None;
        for mask in 0..(1u64 << n) {
            let members: BTreeSet<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            match is_relative_u_ideal(&a, &members) {
                Ok(v) if v.holds() => holding += 1,
                Ok(_) => rejected += 1,
                Err(IdealError::EmptySubset) if members.is_empty() => rejected += 1,
                Err(e) => {
                    problem = Some(format!("{}: subset {:?}: {e}", a.name(), members));
                    break;
                }
            }
        }
        let outcome = match problem {
            None => Ok(format!(
                "{}: all {} subsets agree with the filter test ({} kernels, {} rejected)",
                a.name(),
                1u64 << n,
                holding,
                rejected
            )),
            Some(p) => Err(p),
        };
        part.record(outcome);
    }
    part.finish()
}

/// The closure of a Wajsberg hoop is an MV-algebra of twice the size, the
/// unit embeds, the odd slice of its sum is the derived hoop sum, and the
/// embedded image is the kernel at the base point.
pub fn closure() -> CriterionReport {
    let mut part = Part::new("mv-closure");
    for w in wajsberg_corpus(4, 5) {
        part.member(&w);
        let outcome = (|| {
            let r = mv_closure(&w).map_err(|e| format!("{}: {e}", w.name()))?;
            theory_ok(&r.output, "mv")?;
            if r.output.size() != 2 * w.size() {
                return Err(format!(
                    "{}: closure has {} elements, expected {}",
                    w.name(),
                    r.output.size(),
                    2 * w.size()
                ));
            }
            if !r.unit.is_injective() {
                return Err(format!("{}: unit map is not injective", w.name()));
            }
            for a in w.elements() {
                for b in w.elements() {
                    let ab = w.apply("dot", &[a, b]);
                    let sum = w.apply("imp", &[w.apply("imp", &[a, ab]), b]);
                    if r.output.apply("oplus", &[2 * a + 1, 2 * b + 1]) != 2 * sum + 1 {
                        return Err(format!(
                            "{}: sum of embedded {a} and {b} disagrees with the derived hoop sum",
                            w.name()
                        ));
                    }
                }
            }
            if !check_augmentation(&r).holds() {
                return Err(format!(
                    "{}: embedded image differs from the kernel at the base point",
                    w.name()
                ));
            }
            Ok(format!(
                "{}: closure {} is MV, doubles the carrier, embeds the hoop, and keeps it as the kernel",
                w.name(),
                r.output.name()
            ))
        })();
        part.record(outcome);
    }
    part.finish()
}

/// Every small Wajsberg hoop is recovered from its closure, and every point
/// over the two-element chain is recovered from its kernel.
pub fn roundtrips() -> CriterionReport {
    let mut part = Part::new("roundtrips");
    for w in wajsberg_corpus(4, 5) {
        part.member(&w);
        let outcome = roundtrip_hoop(&w)
            .map(|_| format!("{}: isomorphic to the kernel of its closure", w.name()))
            .map_err(|e| format!("{}: {e}", w.name()));
        part.record(outcome);
    }

    let mut totals = mv_corpus();
    for n in 2..=4 {
        let p = product(
            &Arc::new(lukasiewicz_chain(n)),
            &Arc::new(lukasiewicz_chain(2)),
        )
        .expect("chains share the MV signature");
        totals.push(p.algebra);
    }
    for w in wajsberg_corpus(4, 4) {
        if let Ok(r) = mv_closure(&w) {
            totals.push(r.output);
        }
    }
    let mut points = 0usize;
    for t in totals.iter().filter(|t| t.size() <= 8) {
        part.member(t);
        let pts = match enumerate_points_l2(t) {
            Ok(pts) => pts,
            Err(e) => {
                part.fail(format!("{}: {e}", t.name()));
                continue;
            }
        };
        for pt in pts {
            points += 1;
            if let Err(e) = roundtrip_point(&pt) {
                part.fail(format!("point of {}: {e}", t.name()));
            }
        }
    }
    part.pass(format!(
        "{points} points over the two-element chain rebuilt from their kernels"
    ));

    for n in 2..=4 {
        let chain = Arc::new(lukasiewicz_chain(n));
        let outcome = (|| {
            let w = Arc::new(hoop_reduct(&chain).map_err(|e| e.to_string())?);
            let r = mv_closure(&w).map_err(|e| e.to_string())?;
            let p = product(&chain, &Arc::new(lukasiewicz_chain(2))).map_err(|e| e.to_string())?;
            match find_isomorphism(&r.output, &p.algebra) {
                Some(_) => Ok(format!(
                    "{}: closure of the reduct is the chain times the two-chain",
                    r.output.name()
                )),
                None => Err(format!(
                    "{}: closure of the reduct is not isomorphic to {}",
                    r.output.name(),
                    p.algebra.name()
                )),
            }
        })();
        part.record(outcome);
    }
    part.finish()
}

/// Negation swaps ideals and filters through an isomorphism onto the order
/// dual, and the four order characterisations agree pairwise.
pub fn duality_order() -> CriterionReport {
    let mut part = Part::new("duality-order");
    for a in mv_corpus() {
        part.member(&a);
        let outcome = (|| {
            let d = negation_duality(&a).map_err(|e| format!("{}: {e}", a.name()))?;
            let ord = mv_order(&a).map_err(|e| format!("{}: {e}", a.name()))?;
            Ok(format!(
                "{}: negation swaps {} ideal/filter pairs; order characterisations agree on {} comparable pairs",
                a.name(),
                d.pairs.len(),
                ord.len()
            ))
        })();
        part.record(outcome);
    }
    part.finish()
}

/// Attaching an identity to a commutative rng gives a unital ring with the
/// rng embedded as an ideal and the scalar part as quotient; Boolean rings
/// survive the round trip through their lattice form.
pub fn dorroh_boolean() -> CriterionReport {
    let mut part = Part::new("dorroh-boolean");
    let rngs = arcs(
        (1..=4)
            .flat_map(|n| find_models(theory("crng"), n, None))
            .collect(),
    );
    for r in &rngs {
        part.member(r);
        let mut attached = Vec::new();
        let mut problem = None;
        for m in 1..=4 {
            let c = match dorroh(r, m) {
                Ok(c) => c,
                Err(UnitalError::NotAnExponent { .. }) => continue,
                Err(e) => {
                    problem = Some(format!("{}: exponent {m}: {e}", r.name()));
                    break;
                }
            };
            let checked = (|| {
                theory_ok(&c.output, "cring").map_err(|e| format!("exponent {m}: {e}"))?;
                // the adjoined (0,1) sits at index 1 % m: for m = 1 the
                // scalar 1 collapses onto 0
                if c.output.constant("one") != Some(1 % m) {
                    return Err(format!(
                        "exponent {m}: identity of {} is not the adjoined (0,1)",
                        c.output.name()
                    ));
                }
                let embedded: BTreeSet<usize> = r.elements().map(|x| x * m).collect();
                match crate::ideals::is_ring_ideal(&c.output, &embedded) {
                    Ok(true) => {}
                    Ok(false) => {
                        return Err(format!(
                            "exponent {m}: embedded copy is not an ideal of {}",
                            c.output.name()
                        ))
                    }
                    Err(e) => return Err(format!("exponent {m}: {e}")),
                }
                let repr: Vec<usize> = c.output.elements().map(|e| e % m).collect();
                let cong = Congruence::from_repr(&c.output, repr)
                    .map_err(|e| format!("exponent {m}: {e}"))?;
                let (q, _) = quotient(&c.output, &cong);
                if find_isomorphism(&q, &Arc::new(cyclic_ring(m))).is_none() {
                    return Err(format!(
                        "exponent {m}: quotient by the embedded copy is not the cyclic ring"
                    ));
                }
                Ok(())
            })();
            match checked {
                Ok(()) => attached.push(m),
                Err(e) => {
                    problem = Some(format!("{}: {e}", r.name()));
                    break;
                }
            }
        }
        let outcome = match problem {
            Some(p) => Err(p),
            None if attached.is_empty() => Err(format!("{}: no exponent up to 4 works", r.name())),
            None => Ok(format!(
                "{}: identity attached for exponents {:?}; ring axioms, embedded ideal, and cyclic quotient all check",
                r.name(),
                attached
            )),
        };
        part.record(outcome);
    }

    let rings = arcs(
        (1..=4)
            .flat_map(|n| find_models(theory("booring"), n, None))
            .collect(),
    );
    for r in &rings {
        part.member(r);
        let outcome = (|| {
            let b = boolean_algebra_from_ring(r).map_err(|e| format!("{}: {e}", r.name()))?;
            let back = ring_from_boolean_algebra(&b).map_err(|e| format!("{}: {e}", r.name()))?;
            if back.same_tables(r) {
                Ok(format!(
                    "{}: lattice translation round-trips to the same tables",
                    r.name()
                ))
            } else {
                Err(format!("{}: translation round trip changed a table", r.name()))
            }
        })();
        part.record(outcome);
    }
    part.finish()
}

type Cospan = (Homomorphism, Homomorphism, Vec<Arc<FiniteAlgebra>>);

/// All cospans with legs from `pool` into `cod`, paired with the tests.
fn cross(pool: &[&Arc<FiniteAlgebra>], cod: &Arc<FiniteAlgebra>, tests: &[Arc<FiniteAlgebra>]) -> Vec<Cospan> {
    let legs: Vec<Vec<Homomorphism>> = pool
        .iter()
        .map(|x| enumerate_homomorphisms(x, cod))
        .collect();
    let mut out = Vec::new();
    for fs in &legs {
        for gs in &legs {
            for f in fs {
                for g in gs {
                    out.push((f.clone(), g.clone(), tests.to_vec()));
                }
            }
        }
    }
    out
}

/// Pool of cospans with their test algebras for the mediator search,
/// mixing the three signatures round-robin.
fn cospan_pool() -> Vec<Cospan> {
    let l2 = Arc::new(lukasiewicz_chain(2));
    let l3 = Arc::new(lukasiewicz_chain(3));
    let b4 = Arc::new(boolean_cube(2));
    let p32 = product(&l3, &l2)
        .expect("chains share the MV signature")
        .algebra;
    let z2 = Arc::new(cyclic_rng(2));
    let z4 = Arc::new(cyclic_rng(4));
    let n2 = Arc::new(zero_rng(2));
    let l2h = Arc::new(hoop_reduct(&lukasiewicz_chain(2)).expect("chain reduct"));
    let l3h = Arc::new(hoop_reduct(&lukasiewicz_chain(3)).expect("chain reduct"));
    let g3 = Arc::new(godel_chain(3));

    let families = vec![
        cross(&[&b4, &p32, &l2], &l2, &[Arc::clone(&l2), Arc::clone(&b4)]),
        cross(&[&z2, &z4, &n2], &z2, &[Arc::clone(&z2), Arc::clone(&n2)]),
        cross(&[&l2h, &l3h, &g3], &l2h, &[Arc::clone(&l2h), Arc::clone(&l3h)]),
    ];

    let mut out = Vec::new();
    let longest = families.iter().map(Vec::len).max().unwrap_or(0);
    for i in 0..longest {
        for family in &families {
            if i < family.len() {
                out.push(family[i].clone());
            }
        }
    }
    out
}

/// The congruence generator matches the intersection oracle on every small
/// algebra, and pullbacks mediate every commuting cone uniquely on twenty
/// cospans.
pub fn oracles(seed: u64) -> CriterionReport {
    let mut part = Part::new("oracles");
    let mut pool: Vec<Arc<FiniteAlgebra>> = Vec::new();
    for n in 1..=4 {
        pool.extend(arcs(find_models(theory("mv"), n, None)));
        pool.extend(arcs(find_models(theory("hoop"), n, None)));
    }
    pool.push(Arc::new(lukasiewicz_chain(5)));
    pool.push(Arc::new(
        hoop_reduct(&lukasiewicz_chain(5)).expect("chain reduct"),
    ));
    for n in 2..=3 {
        pool.extend(arcs(find_models(theory("crng"), n, None)));
    }
    pool.push(Arc::new(cyclic_ring(4)));
    pool.push(Arc::new(cyclic_ring(5)));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut comparisons = 0usize;
    let mut mismatches = 0usize;
    for a in &pool {
        part.member(a);
        debug_assert!(a.size() <= 5);
        let mut sets: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
        for x in a.elements() {
            for y in x + 1..a.size() {
                sets.push(vec![(x, y)]);
            }
        }
        for _ in 0..4 {
            sets.push(
                (0..3)
                    .map(|_| (rng.gen_range(0..a.size()), rng.gen_range(0..a.size())))
                    .collect(),
            );
        }
        for pairs in sets {
            comparisons += 1;
            let fast = generate_congruence(a, &pairs);
            let slow = congruence_by_intersection(a, &pairs);
            match (fast, slow) {
                (Ok(f), Ok(s)) if f.repr() == s.repr() => {}
                (Ok(f), Ok(s)) => {
                    mismatches += 1;
                    part.fail(format!(
                        "{}: pairs {:?}: generated {:?} but intersection gives {:?}",
                        a.name(),
                        pairs,
                        f.repr(),
                        s.repr()
                    ));
                }
                (f, s) => {
                    mismatches += 1;
                    part.fail(format!(
                        "{}: pairs {:?}: {:?} vs {:?}",
                        a.name(),
                        pairs,
                        f.err(),
                        s.err()
                    ));
                }
            }
        }
    }
    if mismatches == 0 {
        part.pass(format!(
            "{comparisons} generating sets across {} algebras: saturation and intersection agree",
            pool.len()
        ));
    }

    let cospans = cospan_pool();
    debug_assert!(cospans.len() >= 20);
    let mut cones = 0usize;
    let mut bad = 0usize;
    for (i, (f, g, tests)) in cospans.iter().take(20).enumerate() {
        match pullback_mediates(f, g, tests) {
            Ok(c) => cones += c.cones,
            Err(e) => {
                bad += 1;
                part.fail(format!("cospan {i}: {e}"));
            }
        }
    }
    if bad == 0 {
        part.pass(format!(
            "20 cospans: every commuting cone has exactly one mediating map ({cones} cones)"
        ));
    }
    part.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_part_has_a_budget_or_is_the_oracle_part() {
        for name in PART_NAMES {
            assert!(budget(name).is_some() || name == "oracles");
        }
        assert!(budget("nonsense").is_none());
    }

    #[test]
    fn run_named_rejects_unknown_parts() {
        assert!(run_named("nonsense", 0).is_none());
    }

    #[test]
    fn axioms_part_is_ok_and_covers_four_chains() {
        let r = axioms();
        assert!(r.ok, "{:?}", r.details);
        assert_eq!(r.corpus, vec!["L2", "L3", "L4", "L5"]);
        assert_eq!(r.details.len(), 4);
    }

    #[test]
    fn cospan_pool_is_deep_enough_and_mixed() {
        let pool = cospan_pool();
        assert!(pool.len() >= 20, "only {} cospans", pool.len());
        let sigs: std::collections::BTreeSet<String> = pool
            .iter()
            .take(20)
            .map(|(f, _, _)| f.cod().name().to_string())
            .collect();
        assert!(sigs.len() >= 3, "first twenty cospans hit {sigs:?}");
    }

    #[test]
    fn duality_part_sweeps_the_whole_mv_corpus() {
        let r = duality_order();
        assert!(r.ok, "{:?}", r.details);
        assert!(r.corpus.iter().any(|n| n == "B8"));
        assert!(r.corpus.iter().any(|n| n == "L5"));
    }
}
