//! Boolean algebras and idempotent unital rings are the same structures:
//! symmetric difference and meet in one direction, x+y+xy and 1+x in the
//! other, and attaching an identity to an idempotent rng lands back in the
//! unital class.

use std::sync::Arc;

use finalg::search::find_models;
use finalg::theories::{boolean_lattice, builtins, cyclic_ring, ring_from_boolean_algebra, boolean_algebra_from_ring};
use finalg::term::satisfies;
use finalg::unital::boolean_unitalise;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cat = builtins();

    // lattice -> ring -> lattice round trip on the four-element power set
    let p4 = boolean_lattice(2);
    let ring = ring_from_boolean_algebra(&p4)?;
    println!("{} as a ring:\n{ring}", p4.name());
    println!("idempotent unital ring: {}", satisfies(&ring, cat.get("booring").unwrap()));
    let back = boolean_algebra_from_ring(&ring)?;
    println!("translating back recovers the lattice: {}", back.same_tables(&p4));

    // ring -> lattice works from the ring side too
    let z2 = cyclic_ring(2);
    let lat = boolean_algebra_from_ring(&z2)?;
    println!("\n{} as a lattice:\n{lat}", z2.name());

    // idempotent rngs: every one of size <= 4 unitalises with exponent 2
    let rngs: Vec<Arc<_>> = (1..=4)
        .flat_map(|n| find_models(cat.get("boorng").unwrap(), n, None))
        .map(Arc::new)
        .collect();
    println!("\nidempotent rngs of size <= 4: {}", rngs.len());
    for r in &rngs {
        let c = boolean_unitalise(r)?;
        println!(
            "  {} ({} elements) -> {} ({} elements), unital and idempotent",
            r.name(),
            r.size(),
            c.output.name(),
            c.output.size()
        );
    }
    Ok(())
}
