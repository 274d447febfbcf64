//! Attaching an identity to a commutative rng: pairs (r, n) with n a
//! scalar mod m, the rng embedded as an ideal, and the scalar ring
//! recovered as the quotient by that ideal.

use std::collections::BTreeSet;
use std::sync::Arc;

use finalg::algebra::{quotient, Congruence};
use finalg::ideals::is_ring_ideal;
use finalg::iso::find_isomorphism;
use finalg::theories::{builtins, cyclic_ring, zero_rng};
use finalg::term::check_theory;
use finalg::unital::{dorroh, UnitalError};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let r = Arc::new(zero_rng(3));
    println!("input: {r}");

    // 3 annihilates every element additively, so 3 and 6 work but 4 does not
    match dorroh(&r, 4) {
        Err(UnitalError::NotAnExponent { m, element, .. }) => {
            println!("exponent 4 rejected: {m}-fold sum of {element} is nonzero")
        }
        Err(e) => println!("unexpected error: {e}"),
        Ok(_) => println!("unexpected success"),
    }

    let c = dorroh(&r, 3)?;
    println!("output:\n{}", c.output);
    let verdict = check_theory(&c.output, builtins().get("cring").unwrap())?;
    println!("output is a unital commutative ring: {}", verdict.ok());
    println!(
        "adjoined identity: one = {}",
        c.output.constant("one").unwrap()
    );

    // the embedded copy of the rng is an ideal ...
    let embedded: BTreeSet<usize> = c.unit.image();
    println!(
        "embedded copy {:?} is an ideal: {}",
        embedded,
        is_ring_ideal(&c.output, &embedded)?
    );

    // ... and collapsing it leaves the scalar ring
    let repr: Vec<usize> = c.output.elements().map(|e| e % 3).collect();
    let cong = Congruence::from_repr(&c.output, repr)?;
    let (q, _onto) = quotient(&c.output, &cong);
    let z3 = Arc::new(cyclic_ring(3));
    println!(
        "quotient by the embedded ideal is Z3: {}",
        find_isomorphism(&q, &z3).is_some()
    );
    Ok(())
}
