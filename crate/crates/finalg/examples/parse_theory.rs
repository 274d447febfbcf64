//! Declaring a theory in text, finding its finite models, and exporting
//! one of them in the exchange formats.

use finalg::parse::{parse_algebra, parse_theory};
use finalg::search::find_models;

const MONOID: &str = "
theory cmonoid {
  op mul / 2, e / 0;
  point e;
  eq mul(mul(x0, x1), x2) = mul(x0, mul(x1, x2));
  eq mul(x0, e) = x0;
  eq mul(x0, x1) = mul(x1, x0);
}
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let th = parse_theory(MONOID)?;
    println!("parsed theory `{}` with {} axioms", th.name, th.equations.len());

    for n in 1..=4 {
        let models = find_models(&th, n, None);
        println!("  commutative monoids of size {n}: {}", models.len());
    }

    let one = &find_models(&th, 3, None)[0];
    println!("\nfirst model of size 3, text form:\n{one}");
    println!("json form:\n{}", one.to_json());

    // the text form parses back to the same tables
    let reparsed = parse_algebra(&one.to_string())?;
    println!("\nround trip through text: {}", reparsed.same_tables(one));
    Ok(())
}
