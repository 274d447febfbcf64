//! Negation turns the ideals of an oplus/neg/zero algebra into the filters
//! of its dot/imp/one reduct, preserving inclusion, and the natural order
//! has four equivalent characterisations that are checked to agree.

use std::sync::Arc;

use finalg::ideals::negation_duality;
use finalg::theories::{boolean_cube, lukasiewicz_chain, mv_order};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for a in [Arc::new(lukasiewicz_chain(4)), Arc::new(boolean_cube(2))] {
        let d = negation_duality(&a)?;
        println!("{}:", a.name());
        println!("  negation map {:?} is an isomorphism onto the dual", d.iso.map());
        for (ideal, filter) in &d.pairs {
            println!("  {:?}  <->  {:?}", ideal.sorted(), filter.sorted());
        }

        let rel = mv_order(&a)?;
        println!(
            "  order has {} related pairs, all four characterisations agree",
            rel.len()
        );
        // on the chain the order is the numeric one
        if a.name() == "L4" {
            let numeric = rel.iter().all(|&(x, y)| x <= y);
            let complete = rel.len() == (a.size() * (a.size() + 1)) / 2;
            println!("  chain order is the numeric order: {}", numeric && complete);
        }
        println!();
    }
    Ok(())
}
