//! Filters of a hoop match its congruences one for one: each filter is the
//! class of 1, and quotienting by the matched congruence collapses exactly
//! that filter.

use std::sync::Arc;

use finalg::algebra::quotient;
use finalg::ideals::{enumerate_filters, filter_congruence_bijection};
use finalg::theories::{boolean_cube, hoop_reduct};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let b4 = Arc::new(hoop_reduct(&boolean_cube(2))?);

    for f in enumerate_filters(&b4)? {
        println!("{f}");
    }

    let pairing = filter_congruence_bijection(&b4)?;
    println!("\n{} filters <-> {} congruences", pairing.pairs.len(), pairing.pairs.len());
    for (filter, cong) in &pairing.pairs {
        let (q, onto) = quotient(&b4, cong);
        println!(
            "  {:?} is the 1-class of a congruence with {} blocks; quotient {} has {} elements ({} onto)",
            filter.sorted(),
            cong.num_blocks(),
            q.name(),
            q.size(),
            if onto.is_surjective() { "surjective" } else { "not" },
        );
    }
    Ok(())
}
