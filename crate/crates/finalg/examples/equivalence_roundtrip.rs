//! The kernel of a point over the two-element chain is a bounded
//! dot/imp/one algebra, and closing that kernel recovers the point up to a
//! comparison isomorphism checked through the whole split diagram.

use std::sync::Arc;

use finalg::algebra::product;
use finalg::equivalence::{enumerate_points_l2, kernel_functor, phi_isomorphism, roundtrip_hoop, roundtrip_point};
use finalg::theories::{hoop_reduct, lukasiewicz_chain};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // hoop -> point -> hoop
    let w = Arc::new(hoop_reduct(&lukasiewicz_chain(3))?);
    let back = roundtrip_hoop(&w)?;
    println!(
        "closing {} and taking the kernel gives {} ~ {}",
        w.name(),
        back.dom().name(),
        back.cod().name()
    );

    // point -> kernel -> closure -> point, on a product total
    let l4 = Arc::new(lukasiewicz_chain(4));
    let l2 = Arc::new(lukasiewicz_chain(2));
    let total = product(&l4, &l2)?.algebra;
    let points = enumerate_points_l2(&total)?;
    println!("\n{} admits {} point(s) over the two-element chain", total.name(), points.len());

    for pt in &points {
        let k = kernel_functor(pt)?;
        println!(
            "kernel of the point with projection {:?} is {} with {} elements",
            pt.proj().map(),
            k.algebra.name(),
            k.algebra.size()
        );

        let r = phi_isomorphism(pt)?;
        println!("  comparison map {:?} is an isomorphism", r.phi.map());

        // the comparison map also commutes with both split rows
        let phi = roundtrip_point(pt)?;
        println!("  split diagram verified: {} ~ {}", phi.dom().name(), phi.cod().name());
    }
    Ok(())
}
