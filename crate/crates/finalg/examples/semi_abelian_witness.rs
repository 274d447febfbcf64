//! The binary-term witness for the dot/imp/one axioms: constants, the
//! alpha terms, the collation term theta, the equation schemas they must
//! satisfy, and the induced Mal'tsev term — all checked over a corpus of
//! finite models.

use std::sync::Arc;

use finalg::equivalence::{builtin_hoop_witness, builtin_mv_witness, check_bj_witness, check_maltsev};
use finalg::search::find_models;
use finalg::theories::builtins;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let w = builtin_hoop_witness();
    for (i, (alpha, e)) in w.alphas.iter().zip(&w.constants).enumerate() {
        println!("alpha{} = {alpha}   (constant {e})", i + 1);
    }
    println!("theta = {}", w.theta);
    println!("\nschemas:");
    for eq in w.schemas() {
        println!("  {eq}");
    }
    println!("maltsev term: p(x,y,z) = {}", w.maltsev_term());

    let corpus: Vec<Arc<_>> = (1..=4)
        .flat_map(|n| find_models(builtins().get("hoop").unwrap(), n, None))
        .map(Arc::new)
        .collect();
    let verdict = check_bj_witness(&w, &corpus)?;
    println!(
        "\nschemas hold on {} dot/imp/one models: {:?}",
        verdict.certified_on.len(),
        verdict.certified_on
    );
    let m = check_maltsev(&w, &corpus)?;
    println!(
        "p(x,y,y) = x and p(x,x,y) = y on all of them: {}",
        m.failure.is_none()
    );

    // the same witness transported along the interdefinability of the two
    // signatures works for oplus/neg/zero models
    let mw = builtin_mv_witness();
    let mv_corpus: Vec<Arc<_>> = (1..=4)
        .flat_map(|n| find_models(builtins().get("mv").unwrap(), n, None))
        .map(Arc::new)
        .collect();
    let mv_verdict = check_bj_witness(&mw, &mv_corpus)?;
    println!(
        "translated schemas hold on {} oplus/neg/zero models",
        mv_verdict.certified_on.len()
    );
    Ok(())
}
