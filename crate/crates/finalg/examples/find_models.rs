//! Enumerate every hoop and every MV-algebra with at most four elements,
//! one representative per isomorphism class.

use finalg::search::find_models;
use finalg::theories::builtins;

fn main() {
    let cat = builtins();
    for theory in ["hoop", "whoop", "mv"] {
        let th = cat.get(theory).expect("builtin theory");
        print!("{theory}:");
        for n in 1..=4 {
            print!("  size {n}: {} models", find_models(th, n, None).len());
        }
        println!();
    }

    // the two four-element MV-algebras: the chain and the square
    let mv = cat.get("mv").expect("builtin theory");
    for m in find_models(mv, 4, None) {
        println!("\n{m}");
    }

    // a limit cuts the raw search short; the first hit is still canonical
    let first = find_models(mv, 4, Some(1));
    println!("with limit 1: just {}", first[0].name());
}
