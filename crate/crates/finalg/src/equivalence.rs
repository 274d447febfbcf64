//! The correspondence between split epimorphisms onto the two-element
//! algebra and symmetric dot/imp/one algebras: the kernel construction in
//! one direction, the doubling closure with its explicit comparison map in
//! the other, round trips both ways, the split short five checker that
//! powers them, and term witnesses for the underlying exactness
//! properties.

use std::collections::BTreeSet;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{
    kernel_class, subalgebra, AlgebraError, FiniteAlgebra, Homomorphism, Point,
};
use crate::iso::{enumerate_homomorphisms, find_isomorphism};
use crate::term::{
    check_identity, satisfies, CorpusVerdict, Equation, EvalError, Term, Theory, Verdict,
};
use crate::theories::{
    builtins, hoop_reduct, hoop_term_in_mv, lukasiewicz_chain, mv_dot, mv_imp, ModelError,
};
use crate::unital::{mv_closure, ClosureResult, UnitalError};

#[derive(Debug, Error)]
pub enum EquivError {
    #[error("the point must sit over the two-element algebra")]
    WrongBase,
    #[error("`{algebra}`: the fibre over 1 is not closed under {symbol} at {args:?}")]
    FibreNotClosed {
        algebra: String,
        symbol: String,
        args: Vec<usize>,
    },
    #[error("comparison map fails to preserve `{symbol}` at {args:?}")]
    NotPreserved { symbol: String, args: Vec<usize> },
    #[error("the {square} square does not commute at element {at}")]
    SquareBroken { square: &'static str, at: usize },
    #[error("the compared maps have mismatched endpoints")]
    EndpointMismatch,
    #[error("the comparison map is not bijective")]
    NotBijective,
    #[error("no isomorphism onto the expected algebra `{expected}`")]
    NoIsomorphism { expected: String },
    #[error("witness shape: {0}")]
    BadWitness(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Unital(#[from] UnitalError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

fn require(a: &FiniteAlgebra, theory: &str) -> Result<(), EquivError> {
    let th = builtins().get(theory).expect("built-in theory name");
    if satisfies(a, th) {
        Ok(())
    } else {
        Err(ModelError::NotAModel {
            algebra: a.name().to_string(),
            theory: theory.to_string(),
        }
        .into())
    }
}

/// All points of an oplus/neg/zero algebra over the two-element chain.
/// The base is initial, so each projection determines its section: the
/// unique map sending 0 to zero and 1 to the top.
pub fn enumerate_points_l2(total: &Arc<FiniteAlgebra>) -> Result<Vec<Point>, EquivError> {
    require(total, "mv")?;
    let base = Arc::new(lukasiewicz_chain(2));
    let zero = crate::theories::mv_zero(total);
    let one = crate::theories::mv_one(total);
    let mut points = Vec::new();
    for proj in enumerate_homomorphisms(total, &base) {
        let sect = Homomorphism::new(Arc::clone(&base), Arc::clone(total), vec![zero, one])?;
        points.push(Point::new(proj, sect)?);
    }
    Ok(points)
}

/// The kernel of a point over the two-element algebra, taken at the unit:
/// the fibre over 1 as a dot/imp/one subalgebra of the reduct.
pub struct KernelResult {
    pub algebra: Arc<FiniteAlgebra>,
    /// Embedding of the kernel into the reduct of the point's total.
    pub inclusion: Homomorphism,
}

pub fn kernel_functor(pt: &Point) -> Result<KernelResult, EquivError> {
    require(pt.total(), "mv")?;
    if !pt.base().same_tables(&lukasiewicz_chain(2)) {
        return Err(EquivError::WrongBase);
    }
    let reduct = Arc::new(hoop_reduct(pt.total())?);
    let fibre: BTreeSet<usize> = kernel_class(pt.proj(), 1).into_iter().collect();
    let name = format!("K({})", pt.total().name());
    let sub = subalgebra(&reduct, &fibre, name).map_err(|e| match e {
        AlgebraError::NotClosed { symbol, args, .. } => EquivError::FibreNotClosed {
            algebra: pt.total().name().to_string(),
            symbol,
            args,
        },
        other => EquivError::Algebra(other),
    })?;
    // kernels of these points are always symmetric hoops; this is a
    // consistency check on the construction, not an input condition
    require(&sub.algebra, "whoop")?;
    Ok(KernelResult {
        algebra: sub.algebra,
        inclusion: sub.inclusion,
    })
}

/// The comparison between the closure of a point's kernel and the point
/// itself, with everything that went into it.
pub struct PhiResult {
    pub kernel: KernelResult,
    pub closure: ClosureResult,
    /// The comparison isomorphism from the closed kernel onto the total.
    pub phi: Homomorphism,
}

/// Builds the comparison map `(w, i) ↦ (s(i) ⇒ w) ⊙ (w ⇒ s(i))` from the
/// closure of the kernel to the total, and verifies it preserves the
/// operations, commutes with the kernel embeddings, sections and
/// projections, and is bijective.
pub fn phi_isomorphism(pt: &Point) -> Result<PhiResult, EquivError> {
    let kernel = kernel_functor(pt)?;
    let closure = mv_closure(&kernel.algebra)?;
    let total = pt.total();
    let map: Vec<usize> = (0..closure.output.size())
        .map(|e| {
            let w = kernel.inclusion.apply(e / 2);
            let s = pt.sect().apply(e % 2);
            mv_dot(total, mv_imp(total, s, w), mv_imp(total, w, s))
        })
        .collect();
    let phi = Homomorphism::new(Arc::clone(&closure.output), Arc::clone(total), map).map_err(
        |e| match e {
            AlgebraError::NotAHomomorphism { symbol, args } => {
                EquivError::NotPreserved { symbol, args }
            }
            other => EquivError::Algebra(other),
        },
    )?;
    // the three commuting squares, checked on raw maps since the kernel
    // embeddings live in the reduct signature
    for e in closure.output.elements() {
        if pt.proj().apply(phi.apply(e)) != closure.point.proj().apply(e) {
            return Err(EquivError::SquareBroken {
                square: "projection",
                at: e,
            });
        }
    }
    for i in 0..2 {
        if phi.apply(closure.point.sect().apply(i)) != pt.sect().apply(i) {
            return Err(EquivError::SquareBroken {
                square: "section",
                at: i,
            });
        }
    }
    for w in kernel.algebra.elements() {
        if phi.apply(closure.unit.apply(w)) != kernel.inclusion.apply(w) {
            return Err(EquivError::SquareBroken {
                square: "kernel",
                at: w,
            });
        }
    }
    if !phi.is_bijective() {
        return Err(EquivError::NotBijective);
    }
    Ok(PhiResult {
        kernel,
        closure,
        phi,
    })
}

/// Closing a symmetric algebra and taking the kernel of the resulting
/// point recovers the algebra up to isomorphism; returns the witnessing
/// isomorphism.
pub fn roundtrip_hoop(w: &Arc<FiniteAlgebra>) -> Result<Homomorphism, EquivError> {
    let closure = mv_closure(w)?;
    let kernel = kernel_functor(&closure.point)?;
    find_isomorphism(&kernel.algebra, w).ok_or_else(|| EquivError::NoIsomorphism {
        expected: w.name().to_string(),
    })
}

/// Taking the kernel of a point and closing it recovers the point: the
/// comparison map is an isomorphism compatible with the whole split
/// diagram, certified through the split short five checker. Returns the
/// inverse of the comparison.
pub fn roundtrip_point(pt: &Point) -> Result<Homomorphism, EquivError> {
    let r = phi_isomorphism(pt)?;
    check_split_short_five(
        &r.closure.unit,
        &r.kernel.inclusion,
        &r.closure.point,
        pt,
        &r.phi,
    )
}

/// The split short five argument on raw maps: given kernel embeddings
/// `k`, `k'` into the totals of two points over a common base and a
/// comparison `phi` with `p' ∘ phi = p`, `phi ∘ s = s'` and
/// `phi ∘ k = k'`, concludes that `phi` is an isomorphism and returns its
/// inverse. The kernel embeddings may land in reducts of the totals; only
/// carrier alignment is required.
pub fn check_split_short_five(
    k: &Homomorphism,
    k2: &Homomorphism,
    p: &Point,
    p2: &Point,
    phi: &Homomorphism,
) -> Result<Homomorphism, EquivError> {
    let aligned = phi.dom().size() == p.total().size()
        && phi.cod().size() == p2.total().size()
        && k.cod().size() == p.total().size()
        && k2.cod().size() == p2.total().size()
        && k.dom().size() == k2.dom().size()
        && p.base().size() == p2.base().size();
    if !aligned {
        return Err(EquivError::EndpointMismatch);
    }
    for e in 0..p.total().size() {
        if p2.proj().apply(phi.apply(e)) != p.proj().apply(e) {
            return Err(EquivError::SquareBroken {
                square: "projection",
                at: e,
            });
        }
    }
    for j in 0..p.base().size() {
        if phi.apply(p.sect().apply(j)) != p2.sect().apply(j) {
            return Err(EquivError::SquareBroken {
                square: "section",
                at: j,
            });
        }
    }
    for x in 0..k.dom().size() {
        if phi.apply(k.apply(x)) != k2.apply(x) {
            return Err(EquivError::SquareBroken {
                square: "kernel",
                at: x,
            });
        }
    }
    phi.inverse().ok_or(EquivError::NotBijective)
}

/// Term witness for the ideal-determined shape of a pointed variety:
/// constants `e₁..eₙ`, binary terms `α₁..αₙ` with `αᵢ(x, x) = eᵢ`, and an
/// `(n+1)`-ary term `θ` with `θ(α₁(x,y), …, αₙ(x,y), y) = x`.
pub struct BJWitness {
    pub theory: Theory,
    pub constants: Vec<Term>,
    pub alphas: Vec<Term>,
    pub theta: Term,
}

impl BJWitness {
    pub fn new(
        theory: Theory,
        constants: Vec<Term>,
        alphas: Vec<Term>,
        theta: Term,
    ) -> Result<BJWitness, EquivError> {
        let n = alphas.len();
        if n == 0 {
            return Err(EquivError::BadWitness("at least one alpha".into()));
        }
        if constants.len() != n {
            return Err(EquivError::BadWitness(format!(
                "{} constants for {} alphas",
                constants.len(),
                n
            )));
        }
        for c in &constants {
            c.validate(&theory.signature)?;
            if !c.variables().is_empty() {
                return Err(EquivError::BadWitness(format!("`{c}` is not closed")));
            }
        }
        for a in &alphas {
            a.validate(&theory.signature)?;
            if a.variables().iter().any(|&v| v > 1) {
                return Err(EquivError::BadWitness(format!(
                    "`{a}` uses more than two variables"
                )));
            }
        }
        theta.validate(&theory.signature)?;
        if theta.variables().iter().any(|&v| v > n) {
            return Err(EquivError::BadWitness(format!(
                "theta may use at most {} variables",
                n + 1
            )));
        }
        Ok(BJWitness {
            theory,
            constants,
            alphas,
            theta,
        })
    }

    /// The equations the witness claims, in checkable form.
    pub fn schemas(&self) -> Vec<Equation> {
        let mut eqs = Vec::new();
        for (alpha, e) in self.alphas.iter().zip(&self.constants) {
            eqs.push(Equation {
                lhs: alpha.substitute(&[Term::var(0), Term::var(0)]),
                rhs: e.clone(),
            });
        }
        let mut subs: Vec<Term> = self.alphas.clone();
        subs.push(Term::var(1));
        eqs.push(Equation {
            lhs: self.theta.substitute(&subs),
            rhs: Term::var(0),
        });
        eqs
    }

    /// The ternary term `θ(α₁(x,y), …, αₙ(x,y), z)` the witness induces.
    pub fn maltsev_term(&self) -> Term {
        let mut subs: Vec<Term> = self.alphas.clone();
        subs.push(Term::var(2));
        self.theta.substitute(&subs)
    }
}

/// The dot/imp/one witness: both constants are the unit,
/// `α₁(x,y) = x→y`, `α₂(x,y) = ((x→y)→y)→x` and `θ(u,v,z) = (u→z)·v`.
pub fn builtin_hoop_witness() -> BJWitness {
    let theory = builtins().get("hoop").unwrap().clone();
    let one = Term::constant("one");
    let x = Term::var(0);
    let y = Term::var(1);
    let alpha1 = Term::app("imp", vec![x.clone(), y.clone()]);
    let alpha2 = Term::app(
        "imp",
        vec![Term::app("imp", vec![alpha1.clone(), y]), x],
    );
    let theta = Term::app(
        "dot",
        vec![
            Term::app("imp", vec![Term::var(0), Term::var(2)]),
            Term::var(1),
        ],
    );
    BJWitness::new(theory, vec![one.clone(), one], vec![alpha1, alpha2], theta)
        .expect("the built-in witness is well-formed")
}

/// The same witness transported along the term translation into the
/// oplus/neg/zero signature.
pub fn builtin_mv_witness() -> BJWitness {
    let h = builtin_hoop_witness();
    BJWitness::new(
        builtins().get("mv").unwrap().clone(),
        h.constants.iter().map(hoop_term_in_mv).collect(),
        h.alphas.iter().map(hoop_term_in_mv).collect(),
        hoop_term_in_mv(&h.theta),
    )
    .expect("the translated witness is well-formed")
}

/// Checks both witness schemas exhaustively on every corpus member. A
/// pass certifies exactly the corpus; a failure refutes the witness for
/// the whole variety.
pub fn check_bj_witness(
    w: &BJWitness,
    corpus: &[Arc<FiniteAlgebra>],
) -> Result<CorpusVerdict, EquivError> {
    let schemas = w.schemas();
    let mut certified = Vec::new();
    for alg in corpus {
        if !satisfies(alg, &w.theory) {
            return Err(ModelError::NotAModel {
                algebra: alg.name().to_string(),
                theory: w.theory.name.clone(),
            }
            .into());
        }
        for eq in &schemas {
            if let Verdict::Counterexample(at) = check_identity(alg, eq)? {
                return Ok(CorpusVerdict::fail(alg.name(), eq.to_string(), at));
            }
        }
        certified.push(alg.name().to_string());
    }
    Ok(CorpusVerdict::pass(certified))
}

/// Checks `p(x,y,y) = x` and `p(x,x,y) = y` for the induced ternary term
/// on every corpus member.
pub fn check_maltsev(
    w: &BJWitness,
    corpus: &[Arc<FiniteAlgebra>],
) -> Result<CorpusVerdict, EquivError> {
    let p = w.maltsev_term();
    let left = Equation {
        lhs: p.substitute(&[Term::var(0), Term::var(1), Term::var(1)]),
        rhs: Term::var(0),
    };
    let right = Equation {
        lhs: p.substitute(&[Term::var(0), Term::var(0), Term::var(1)]),
        rhs: Term::var(1),
    };
    let mut certified = Vec::new();
    for alg in corpus {
        if !satisfies(alg, &w.theory) {
            return Err(ModelError::NotAModel {
                algebra: alg.name().to_string(),
                theory: w.theory.name.clone(),
            }
            .into());
        }
        for eq in [&left, &right] {
            if let Verdict::Counterexample(at) = check_identity(alg, eq)? {
                return Ok(CorpusVerdict::fail(alg.name(), eq.to_string(), at));
            }
        }
        certified.push(alg.name().to_string());
    }
    Ok(CorpusVerdict::pass(certified))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::product;
    use crate::theories::godel_chain;
    use crate::unital::closure_hom;

    fn l(n: usize) -> Arc<FiniteAlgebra> {
        Arc::new(lukasiewicz_chain(n))
    }

    #[test]
    fn the_square_has_two_points_and_chain_totals_have_one() {
        let l2 = l(2);
        let b4 = product(&l2, &l2).unwrap().algebra;
        assert_eq!(enumerate_points_l2(&b4).unwrap().len(), 2);
        assert_eq!(enumerate_points_l2(&l(3)).unwrap().len(), 0);
        assert_eq!(enumerate_points_l2(&l2).unwrap().len(), 1);
    }

    #[test]
    fn kernel_of_a_product_projection_is_the_other_factor() {
        let l3 = l(3);
        let l2 = l(2);
        let prod = product(&l3, &l2).unwrap().algebra;
        let points = enumerate_points_l2(&prod).unwrap();
        assert_eq!(points.len(), 1);
        let k = kernel_functor(&points[0]).unwrap();
        assert_eq!(k.algebra.size(), 3);
        assert_eq!(k.algebra.name(), "K((L3xL2))");
        let expected = Arc::new(hoop_reduct(&l3).unwrap());
        assert!(find_isomorphism(&k.algebra, &expected).is_some());
    }

    #[test]
    fn kernel_of_the_identity_point_is_trivial() {
        let l2 = l(2);
        let points = enumerate_points_l2(&l2).unwrap();
        let k = kernel_functor(&points[0]).unwrap();
        assert_eq!(k.algebra.size(), 1);
    }

    #[test]
    fn comparison_map_on_the_square() {
        let l2 = l(2);
        let b4 = product(&l2, &l2).unwrap().algebra;
        for pt in enumerate_points_l2(&b4).unwrap() {
            let r = phi_isomorphism(&pt).unwrap();
            assert!(r.phi.is_bijective());
            // zero goes to zero and the closed kernel's top to the top
            assert_eq!(r.phi.apply(crate::theories::mv_zero(&r.closure.output)), 0);
        }
    }

    #[test]
    fn round_trips_on_chain_reducts() {
        for n in 2..=4 {
            let w = Arc::new(hoop_reduct(&lukasiewicz_chain(n)).unwrap());
            roundtrip_hoop(&w).unwrap();
        }
        let g2 = Arc::new(godel_chain(2));
        roundtrip_hoop(&g2).unwrap();
    }

    #[test]
    fn round_trips_on_points_of_products() {
        for n in 2..=3 {
            let ln = l(n);
            let l2 = l(2);
            let prod = product(&ln, &l2).unwrap().algebra;
            for pt in enumerate_points_l2(&prod).unwrap() {
                let inverse = roundtrip_point(&pt).unwrap();
                // inverse really inverts
                let r = phi_isomorphism(&pt).unwrap();
                for e in r.closure.output.elements() {
                    assert_eq!(inverse.apply(r.phi.apply(e)), e);
                }
            }
        }
    }

    #[test]
    fn five_checker_accepts_the_identity_comparison() {
        let w = Arc::new(godel_chain(2));
        let cr = mv_closure(&w).unwrap();
        let phi = Homomorphism::identity(&cr.output);
        let inv = check_split_short_five(&cr.unit, &cr.unit, &cr.point, &cr.point, &phi).unwrap();
        assert_eq!(inv.map(), phi.map());
    }

    #[test]
    fn five_checker_names_the_broken_square() {
        let l2 = l(2);
        let b4 = product(&l2, &l2).unwrap().algebra;
        let points = enumerate_points_l2(&b4).unwrap();
        // compare a point against itself through a non-commuting map:
        // the swap automorphism of the square exchanges the fibres
        let swap = Homomorphism::new(Arc::clone(&b4), Arc::clone(&b4), vec![0, 2, 1, 3]).unwrap();
        let r = phi_isomorphism(&points[0]).unwrap();
        let composed = r.phi.then(&swap).unwrap();
        let err = check_split_short_five(
            &r.closure.unit,
            &r.kernel.inclusion,
            &r.closure.point,
            &points[0],
            &composed,
        )
        .unwrap_err();
        assert!(matches!(
            err,
            EquivError::SquareBroken {
                square: "projection",
                ..
            }
        ));
    }

    #[test]
    fn witness_schemas_hold_on_chain_reducts() {
        let w = builtin_hoop_witness();
        let corpus: Vec<Arc<FiniteAlgebra>> = (2..=5)
            .map(|n| Arc::new(hoop_reduct(&lukasiewicz_chain(n)).unwrap()))
            .collect();
        let verdict = check_bj_witness(&w, &corpus).unwrap();
        assert!(verdict.ok(), "{:?}", verdict.failure);
        assert_eq!(verdict.certified_on.len(), 4);
        let verdict = check_maltsev(&w, &corpus).unwrap();
        assert!(verdict.ok(), "{:?}", verdict.failure);
    }

    #[test]
    fn translated_witness_holds_on_chains() {
        let w = builtin_mv_witness();
        let corpus: Vec<Arc<FiniteAlgebra>> = (2..=5).map(l).collect();
        assert!(check_bj_witness(&w, &corpus).unwrap().ok());
        assert!(check_maltsev(&w, &corpus).unwrap().ok());
    }

    #[test]
    fn broken_witness_fails_in_the_two_chain() {
        let hoop = builtins().get("hoop").unwrap().clone();
        let one = Term::constant("one");
        let x = Term::var(0);
        let y = Term::var(1);
        let alpha = Term::app("imp", vec![x, y]);
        // theta that ignores its first argument cannot recover x
        let theta = Term::var(1);
        let w = BJWitness::new(hoop, vec![one], vec![alpha], theta).unwrap();
        let h2 = Arc::new(hoop_reduct(&lukasiewicz_chain(2)).unwrap());
        let verdict = check_bj_witness(&w, &[h2]).unwrap();
        let failure = verdict.failure.unwrap();
        assert_eq!(failure.algebra, "L2_hoop");
        assert_eq!(failure.assignment, vec![0, 1]);
    }

    #[test]
    fn witness_construction_rejects_malformed_shapes() {
        let hoop = builtins().get("hoop").unwrap().clone();
        let one = Term::constant("one");
        let alpha = Term::app("imp", vec![Term::var(0), Term::var(1)]);
        // no alphas at all
        assert!(BJWitness::new(hoop.clone(), vec![], vec![], Term::var(0)).is_err());
        // constant count mismatch
        assert!(BJWitness::new(
            hoop.clone(),
            vec![one.clone(), one.clone()],
            vec![alpha.clone()],
            Term::var(0)
        )
        .is_err());
        // theta with too many variables for one alpha
        assert!(BJWitness::new(hoop, vec![one], vec![alpha], Term::var(5)).is_err());
    }

    #[test]
    fn comparison_is_natural_in_the_point() {
        // morphisms of points between the two points of the square:
        // search all homomorphisms of totals and keep the commuting ones
        let l2 = l(2);
        let b4 = product(&l2, &l2).unwrap().algebra;
        let points = enumerate_points_l2(&b4).unwrap();
        let mut checked = 0usize;
        for pt in &points {
            for pt2 in &points {
                for g in enumerate_homomorphisms(&b4, &b4) {
                    let over = (0..b4.size())
                        .all(|e| pt2.proj().apply(g.apply(e)) == pt.proj().apply(e));
                    let under = (0..2).all(|j| g.apply(pt.sect().apply(j)) == pt2.sect().apply(j));
                    if !(over && under) {
                        continue;
                    }
                    let r = phi_isomorphism(pt).unwrap();
                    let r2 = phi_isomorphism(pt2).unwrap();
                    // restrict g to the kernels
                    let kmap: Vec<usize> = r
                        .kernel
                        .algebra
                        .elements()
                        .map(|w| {
                            let in_total = g.apply(r.kernel.inclusion.apply(w));
                            r2.kernel
                                .inclusion
                                .map()
                                .iter()
                                .position(|&e| e == in_total)
                                .expect("point morphisms restrict to kernels")
                        })
                        .collect();
                    let kg = Homomorphism::new(
                        Arc::clone(&r.kernel.algebra),
                        Arc::clone(&r2.kernel.algebra),
                        kmap,
                    )
                    .unwrap();
                    let lifted = closure_hom(&kg, &r.closure, &r2.closure).unwrap();
                    for e in r.closure.output.elements() {
                        assert_eq!(
                            r2.phi.apply(lifted.apply(e)),
                            g.apply(r.phi.apply(e)),
                            "naturality at {e}"
                        );
                    }
                    checked += 1;
                }
            }
        }
        assert!(checked >= 2, "found {checked} point morphisms");
    }
}
