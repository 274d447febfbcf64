//! Full verification sweep. Each part of the suite runs against its
//! deterministic corpus and must come back clean inside its wall-clock
//! budget; run with `--nocapture` to see the one-line verdicts.

use finalg::suite::{budget, run_named, DEFAULT_SEED};

fn run_part(name: &str) {
    let r = run_named(name, DEFAULT_SEED).expect("known part");
    let b = budget(name);
    let within = b.map_or(true, |b| r.duration <= b);
    let verdict = if r.ok && within { "pass" } else { "FAIL" };
    match b {
        Some(b) => println!(
            "{verdict} {}: {} corpus members in {} ms (budget {} ms)",
            r.name,
            r.corpus.len(),
            r.duration.as_millis(),
            b.as_millis()
        ),
        None => println!(
            "{verdict} {}: {} corpus members in {} ms",
            r.name,
            r.corpus.len(),
            r.duration.as_millis()
        ),
    }
    for line in &r.details {
        if line.starts_with("FAIL") {
            println!("  {line}");
        }
    }
    assert!(r.ok, "part {} reported failures: {:?}", r.name, r.details);
    assert!(
        within,
        "part {} took {:?}, over its {:?} budget",
        r.name,
        r.duration,
        b.expect("only budgeted parts can overrun")
    );
}

#[test]
fn chain_axioms_and_reducts() {
    run_part("axioms");
}

#[test]
fn semi_abelian_witness_terms() {
    run_part("semi-abelian-witness");
}

#[test]
fn ideal_determination() {
    run_part("ideal-determination");
}

#[test]
fn mv_closure_of_wajsberg_hoops() {
    run_part("mv-closure");
}

#[test]
fn equivalence_roundtrips() {
    run_part("roundtrips");
}

#[test]
fn negation_duality_and_order() {
    run_part("duality-order");
}

#[test]
fn dorroh_and_boolean_translations() {
    run_part("dorroh-boolean");
}

#[test]
fn oracle_agreement() {
    run_part("oracles");
}
