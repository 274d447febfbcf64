//! Build a chain, check it against the equational theories it belongs to,
//! and watch a deliberately broken table fail with a counterexample.

use finalg::term::{check_theory, eval_term, Term};
use finalg::theories::{builtins, hoop_reduct, lukasiewicz_chain};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let l4 = lukasiewicz_chain(4);
    let mv = builtins().get("mv").expect("builtin theory");
    println!("{l4}");

    let verdict = check_theory(&l4, mv)?;
    for (eq, v) in &verdict.verdicts {
        println!("  {eq}  {}", if v.holds() { "holds" } else { "fails" });
    }

    // the 0-free reduct keeps the symmetry law of its chain
    let whoop = builtins().get("whoop").expect("builtin theory");
    let reduct = hoop_reduct(&l4)?;
    println!(
        "\n{} satisfies `{}`: {}",
        reduct.name(),
        whoop.name,
        check_theory(&reduct, whoop)?.ok()
    );

    // evaluating one term by hand: x -> (y -> x) is constantly 1
    let t = Term::app("imp", vec![Term::var(0), Term::app("imp", vec![Term::var(1), Term::var(0)])]);
    for x in reduct.elements() {
        for y in reduct.elements() {
            assert_eq!(eval_term(&t, &reduct, &[x, y])?, 3);
        }
    }
    println!("`{t}` evaluates to 1 everywhere on {}", reduct.name());

    // break commutativity and the check names the first bad assignment
    let mut bad = l4.table("oplus").expect("mv signature").to_vec();
    bad[1] = 3; // 0 + 1/3 becomes 1
    let broken = l4.with_table("oplus", bad)?;
    let verdict = check_theory(&broken, mv)?;
    for (eq, v) in &verdict.verdicts {
        if let Some(at) = v.counterexample() {
            println!("broken table: `{eq}` fails at {at:?}");
        }
    }
    Ok(())
}
