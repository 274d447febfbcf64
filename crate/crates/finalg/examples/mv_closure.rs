//! Doubling a bounded dot/imp/one algebra into an oplus/neg/zero algebra:
//! two tagged copies of the carrier, an embedding onto the kernel of the
//! augmentation, and a canonical retraction onto the two-element chain.

use std::sync::Arc;

use finalg::algebra::kernel_class;
use finalg::theories::{builtins, hoop_reduct, lukasiewicz_chain};
use finalg::term::check_theory;
use finalg::unital::{check_augmentation, mv_closure};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let w = Arc::new(hoop_reduct(&lukasiewicz_chain(3))?);
    println!("input: {w}");

    let closed = mv_closure(&w)?;
    println!("output:\n{}", closed.output);

    let verdict = check_theory(&closed.output, builtins().get("mv").unwrap())?;
    println!("output satisfies the oplus/neg/zero axioms: {}", verdict.ok());

    // the embedding doubles every element onto the tagged copy of the unit
    // side, and its image is exactly the kernel of the projection
    println!("embedding: {:?}", closed.unit.map());
    println!("projection: {:?}", closed.point.proj().map());
    println!("section: {:?}", closed.point.sect().map());
    println!(
        "kernel of the projection over {}: {:?}",
        closed.base_kernel,
        kernel_class(closed.point.proj(), closed.base_kernel)
    );
    println!("image = kernel: {}", check_augmentation(&closed).holds());

    // the projection retracts the section
    let pt = &closed.point;
    let retracts = pt
        .base()
        .elements()
        .all(|b| pt.proj().apply(pt.sect().apply(b)) == b);
    println!("projection . section = id: {retracts}");
    Ok(())
}
