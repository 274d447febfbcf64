//! Adjoining the missing structure to a pointed algebra: the two-tag
//! closure that turns a dot/imp/one algebra with the symmetry law into an
//! oplus/neg/zero algebra, and the classical construction that adjoins a
//! unit to a ring without one. Both come packaged with their unit
//! embedding, a projection onto the base with its canonical section, and
//! the kernel condition relating the two.

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{kernel_class, AlgebraError, FiniteAlgebra, Homomorphism, Point};
use crate::term::satisfies;
use crate::theories::{builtins, cyclic_ring, hoop_reduct, lukasiewicz_chain, ModelError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum UnitalError {
    #[error("{m} is not an additive exponent of `{algebra}`: {m}-fold sum of {element} is not zero")]
    NotAnExponent {
        algebra: String,
        m: usize,
        element: usize,
    },
    #[error("the map does not act on the inputs of these closures")]
    InputMismatch,
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// An algebra together with its closure: the enlarged algebra, the unit
/// embedding of the input into the matching reduct of the output, and the
/// output presented as a split epimorphism onto the base.
pub struct ClosureResult {
    pub input: Arc<FiniteAlgebra>,
    pub output: Arc<FiniteAlgebra>,
    /// Embedding of the input into the reduct of the output carrying the
    /// input's signature.
    pub unit: Homomorphism,
    /// The output over the base algebra, with the canonical section.
    pub point: Point,
    /// Base element at which the kernel of the projection is taken.
    pub base_kernel: usize,
}

/// Whether the image of the unit is exactly the kernel of the projection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AugmentationVerdict {
    Holds,
    /// The first output element on which image and kernel disagree.
    Fails { element: usize },
}

impl AugmentationVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, AugmentationVerdict::Holds)
    }
}

fn require(a: &FiniteAlgebra, theory: &str) -> Result<(), UnitalError> {
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

/// The sum the dot/imp/one structure already determines:
/// `imp(imp(a, dot(a, b)), b)`.
fn hoop_sum(w: &FiniteAlgebra, a: usize, b: usize) -> usize {
    let ab = w.apply("dot", &[a, b]);
    w.apply("imp", &[w.apply("imp", &[a, ab]), b])
}

/// Doubles the carrier of a symmetric dot/imp/one algebra into an
/// oplus/neg/zero algebra: element `w` with tag `i` is encoded as
/// `2·w + i`, tag 1 carrying the original algebra and tag 0 its mirror.
/// The zero is the unit with tag 0, negation flips the tag, and the sum
/// is the derived sum on two tag-1 elements, the product on two tag-0
/// elements, and the residual across tags.
pub fn mv_closure(w: &Arc<FiniteAlgebra>) -> Result<ClosureResult, UnitalError> {
    require(w, "whoop")?;
    let n = w.size();
    let one_w = w.constant("one").expect("hoop signature");
    let enc = |elem: usize, tag: usize| 2 * elem + tag;
    let total = 2 * n;
    let mut oplus = vec![0usize; total * total];
    for e1 in 0..total {
        for e2 in 0..total {
            let (w1, i1) = (e1 / 2, e1 % 2);
            let (w2, i2) = (e2 / 2, e2 % 2);
            oplus[e1 * total + e2] = match (i1, i2) {
                (1, 1) => enc(hoop_sum(w, w1, w2), 1),
                (0, 0) => enc(w.apply("dot", &[w1, w2]), 0),
                // the tag-0 component is the antecedent of the residual
                (0, 1) => enc(w.apply("imp", &[w1, w2]), 1),
                _ => enc(w.apply("imp", &[w2, w1]), 1),
            };
        }
    }
    let neg: Vec<usize> = (0..total).map(|e| e ^ 1).collect();
    let zero = enc(one_w, 0);
    let output = Arc::new(FiniteAlgebra::new(
        format!("M({})", w.name()),
        "mv",
        builtins().get("mv").unwrap().signature.clone(),
        total,
        vec![oplus, neg, vec![zero]],
    )?);
    // the closure of a symmetric input always satisfies the oplus/neg/zero
    // axioms; failing here means corrupt tables, not bad input
    require(&output, "mv")?;
    let reduct = Arc::new(hoop_reduct(&output)?);
    let unit_map: Vec<usize> = (0..n).map(|e| enc(e, 1)).collect();
    let unit = Homomorphism::new(Arc::clone(w), reduct, unit_map)?;
    assert!(unit.is_injective(), "the unit embeds the input");
    let base = Arc::new(lukasiewicz_chain(2));
    let proj_map: Vec<usize> = (0..total).map(|e| e % 2).collect();
    let proj = Homomorphism::new(Arc::clone(&output), Arc::clone(&base), proj_map)?;
    // the base is initial, so the section is forced: tag i at the unit
    let sect_map: Vec<usize> = (0..2).map(|i| enc(one_w, i)).collect();
    let sect = Homomorphism::new(base, Arc::clone(&output), sect_map)?;
    let point = Point::new(proj, sect)?;
    Ok(ClosureResult {
        input: Arc::clone(w),
        output,
        unit,
        point,
        base_kernel: 1,
    })
}

/// Holds iff the image of the unit equals the kernel class of the
/// projection at `base_kernel`; reports the first element separating the
/// two otherwise.
pub fn check_augmentation(cr: &ClosureResult) -> AugmentationVerdict {
    let image = cr.unit.image();
    let kernel: std::collections::BTreeSet<usize> =
        kernel_class(cr.point.proj(), cr.base_kernel).into_iter().collect();
    match image.symmetric_difference(&kernel).next() {
        None => AugmentationVerdict::Holds,
        Some(&element) => AugmentationVerdict::Fails { element },
    }
}

/// Repeated addition `m · x` in an add/neg/zero algebra.
fn n_fold_sum(r: &FiniteAlgebra, m: usize, x: usize) -> usize {
    let zero = r.constant("zero").expect("additive signature");
    (0..m).fold(zero, |acc, _| r.apply("add", &[acc, x]))
}

/// Adjoins a unit to a ring without one: the carrier becomes pairs
/// `(r, n)` with `n` in the integers modulo `m`, encoded as `r·m + n`,
/// with componentwise addition and
/// `(r, n)(r', n') = (r·n' + n·r' + r·r', n·n')`. The unit is `(0, 1)`.
/// `m` must be an additive exponent of the input so the scalar action is
/// well defined on the quotient.
pub fn dorroh(r: &Arc<FiniteAlgebra>, m: usize) -> Result<ClosureResult, UnitalError> {
    require(r, "crng")?;
    assert!(m >= 1, "the scalar ring needs at least one element");
    let zero_r = r.constant("zero").expect("ring signature");
    if let Some(x) = r.elements().find(|&x| n_fold_sum(r, m, x) != zero_r) {
        return Err(UnitalError::NotAnExponent {
            algebra: r.name().to_string(),
            m,
            element: x,
        });
    }
    let k = r.size();
    let total = k * m;
    let enc = |elem: usize, n: usize| elem * m + n;
    let scalar = |n: usize, x: usize| n_fold_sum(r, n, x);
    let mut add = vec![0usize; total * total];
    let mut mul = vec![0usize; total * total];
    for e1 in 0..total {
        for e2 in 0..total {
            let (r1, n1) = (e1 / m, e1 % m);
            let (r2, n2) = (e2 / m, e2 % m);
            add[e1 * total + e2] = enc(r.apply("add", &[r1, r2]), (n1 + n2) % m);
            let cross = r.apply("add", &[scalar(n2, r1), scalar(n1, r2)]);
            let prod = r.apply("add", &[cross, r.apply("mul", &[r1, r2])]);
            mul[e1 * total + e2] = enc(prod, n1 * n2 % m);
        }
    }
    let neg: Vec<usize> = (0..total)
        .map(|e| enc(r.apply("neg", &[e / m]), (m - e % m) % m))
        .collect();
    let zero = enc(zero_r, 0);
    let one = enc(zero_r, 1 % m);
    let output = Arc::new(FiniteAlgebra::new(
        format!("D({},{})", r.name(), m),
        "cring",
        builtins().get("cring").unwrap().signature.clone(),
        total,
        vec![add, mul, neg, vec![zero], vec![one]],
    )?);
    require(&output, "cring")?;
    let crng_symbols = ["add", "mul", "neg", "zero"];
    let reduct = Arc::new(output.reduct(
        format!("{}_rng", output.name()),
        "crng",
        &crng_symbols,
    )?);
    let unit_map: Vec<usize> = (0..k).map(|e| enc(e, 0)).collect();
    let unit = Homomorphism::new(Arc::clone(r), reduct, unit_map)?;
    assert!(unit.is_injective(), "the unit embeds the input");
    let base = Arc::new(cyclic_ring(m));
    let proj_map: Vec<usize> = (0..total).map(|e| e % m).collect();
    let proj = Homomorphism::new(Arc::clone(&output), Arc::clone(&base), proj_map)?;
    let sect_map: Vec<usize> = (0..m).map(|n| enc(zero_r, n)).collect();
    let sect = Homomorphism::new(base, Arc::clone(&output), sect_map)?;
    let point = Point::new(proj, sect)?;
    Ok(ClosureResult {
        input: Arc::clone(r),
        output,
        unit,
        point,
        base_kernel: 0,
    })
}

/// The idempotent special case: adjoin a unit over the two-element scalar
/// ring. The output of a ring with idempotent multiplication and
/// characteristic two is again one.
pub fn boolean_unitalise(r: &Arc<FiniteAlgebra>) -> Result<ClosureResult, UnitalError> {
    require(r, "boorng")?;
    let cr = dorroh(r, 2)?;
    require(&cr.output, "booring")?;
    Ok(cr)
}

/// The action of a map `h` between closure inputs on the closed algebras:
/// `(w, i)` goes to `(h(w), i)`. Valid for the doubling closure, whose
/// encoding keeps the tag in the low bit.
pub fn closure_hom(
    h: &Homomorphism,
    from: &ClosureResult,
    to: &ClosureResult,
) -> Result<Homomorphism, UnitalError> {
    if !h.dom().same_tables(&from.input) || !h.cod().same_tables(&to.input) {
        return Err(UnitalError::InputMismatch);
    }
    let map: Vec<usize> = (0..from.output.size())
        .map(|e| 2 * h.apply(e / 2) + e % 2)
        .collect();
    Ok(Homomorphism::new(
        Arc::clone(&from.output),
        Arc::clone(&to.output),
        map,
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::product;
    use crate::ideals::is_ring_ideal;
    use crate::iso::find_isomorphism;
    use crate::theories::{
        boolean_algebra_from_ring, boolean_lattice, cyclic_rng, godel_chain, trivial_algebra,
        zero_rng,
    };

    fn whoop_trivial() -> Arc<FiniteAlgebra> {
        let sig = builtins().get("whoop").unwrap().signature.clone();
        Arc::new(trivial_algebra(sig, "whoop"))
    }

    #[test]
    fn closure_of_the_one_element_algebra_is_the_two_chain() {
        let cr = mv_closure(&whoop_trivial()).unwrap();
        assert_eq!(cr.output.size(), 2);
        assert!(cr.output.same_tables(&lukasiewicz_chain(2)));
        assert!(check_augmentation(&cr).holds());
    }

    #[test]
    fn closure_of_the_idempotent_two_chain_is_the_square() {
        let w = Arc::new(godel_chain(2));
        let cr = mv_closure(&w).unwrap();
        let l2 = Arc::new(lukasiewicz_chain(2));
        let square = product(&l2, &l2).unwrap().algebra;
        assert!(find_isomorphism(&cr.output, &square).is_some());
    }

    #[test]
    fn closure_of_the_three_chain_reduct_is_the_chain_times_two() {
        let w = Arc::new(hoop_reduct(&lukasiewicz_chain(3)).unwrap());
        let cr = mv_closure(&w).unwrap();
        assert_eq!(cr.output.size(), 6);
        let l3 = Arc::new(lukasiewicz_chain(3));
        let l2 = Arc::new(lukasiewicz_chain(2));
        let expected = product(&l3, &l2).unwrap().algebra;
        assert!(find_isomorphism(&cr.output, &expected).is_some());
    }

    #[test]
    fn tag_one_sums_restrict_to_the_derived_sum() {
        let w = Arc::new(hoop_reduct(&lukasiewicz_chain(4)).unwrap());
        let cr = mv_closure(&w).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                let lifted = cr.output.apply("oplus", &[2 * a + 1, 2 * b + 1]);
                assert_eq!(lifted, 2 * hoop_sum(&w, a, b) + 1);
            }
        }
        // and on a chain reduct, the derived sum is the truncated sum of
        // the source
        let l4 = lukasiewicz_chain(4);
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(hoop_sum(&w, a, b), l4.apply("oplus", &[a, b]));
            }
        }
    }

    #[test]
    fn the_section_lands_on_the_unit_with_each_tag() {
        let w = Arc::new(hoop_reduct(&lukasiewicz_chain(3)).unwrap());
        let cr = mv_closure(&w).unwrap();
        let one_w = w.constant("one").unwrap();
        assert_eq!(cr.point.sect().apply(0), 2 * one_w);
        assert_eq!(cr.point.sect().apply(1), 2 * one_w + 1);
        // and the projection splits it
        assert_eq!(cr.point.proj().apply(2 * one_w + 1), 1);
    }

    #[test]
    fn corrupted_projection_fails_augmentation_with_the_offending_element() {
        let w = Arc::new(godel_chain(2));
        let cr = mv_closure(&w).unwrap();
        // redirect (0, 1) — encoded 1 — from fibre 1 to fibre 0
        let mut bad_map = cr.point.proj().map().to_vec();
        bad_map[1] = 0;
        let bad_proj = Homomorphism::unchecked(
            Arc::clone(cr.point.proj().dom()),
            Arc::clone(cr.point.proj().cod()),
            bad_map,
        );
        let bad_point = Point::unchecked(bad_proj, cr.point.sect().clone());
        let corrupted = ClosureResult {
            input: cr.input,
            output: cr.output,
            unit: cr.unit,
            point: bad_point,
            base_kernel: 1,
        };
        assert_eq!(
            check_augmentation(&corrupted),
            AugmentationVerdict::Fails { element: 1 }
        );
    }

    #[test]
    fn doubling_always_doubles() {
        let mv = builtins().get("mv").unwrap();
        for n in 2..=4 {
            let w = Arc::new(hoop_reduct(&lukasiewicz_chain(n)).unwrap());
            let cr = mv_closure(&w).unwrap();
            assert_eq!(cr.output.size(), 2 * n);
            assert!(satisfies(&cr.output, mv));
            assert!(check_augmentation(&cr).holds());
        }
    }

    #[test]
    fn closure_rejects_an_asymmetric_input() {
        let g3 = Arc::new(godel_chain(3));
        assert!(matches!(
            mv_closure(&g3),
            Err(UnitalError::Model(ModelError::NotAModel { .. }))
        ));
    }

    #[test]
    fn unit_adjunction_on_the_two_element_field_gives_the_product() {
        let r = Arc::new(cyclic_rng(2));
        let cr = dorroh(&r, 2).unwrap();
        assert_eq!(cr.output.size(), 4);
        let z2 = Arc::new(cyclic_ring(2));
        let expected = product(&z2, &z2).unwrap().algebra;
        assert!(find_isomorphism(&cr.output, &expected).is_some());
        assert!(check_augmentation(&cr).holds());
    }

    #[test]
    fn unit_adjunction_on_the_zero_ring() {
        let r = Arc::new(zero_rng(2));
        let cr = dorroh(&r, 2).unwrap();
        assert_eq!(cr.output.size(), 4);
        require(&cr.output, "cring").unwrap();
        // the embedded copy absorbs multiplication
        let image = cr.unit.image();
        assert!(is_ring_ideal(&cr.output, &image).unwrap());
        // collapsing it leaves the scalar ring
        let pairs: Vec<(usize, usize)> = image.iter().map(|&e| (e, 0)).collect();
        let c = crate::algebra::generate_congruence(&cr.output, &pairs).unwrap();
        let (q, _) = crate::algebra::quotient(&cr.output, &c);
        assert!(find_isomorphism(&q, &Arc::new(cyclic_ring(2))).is_some());
    }

    #[test]
    fn the_unit_pair_is_a_two_sided_identity() {
        let r = Arc::new(zero_rng(3));
        let cr = dorroh(&r, 3).unwrap();
        let one = cr.output.constant("one").unwrap();
        for e in cr.output.elements() {
            assert_eq!(cr.output.apply("mul", &[e, one]), e);
            assert_eq!(cr.output.apply("mul", &[one, e]), e);
        }
    }

    #[test]
    fn exponent_validation_rejects_mismatched_scalars() {
        let r = Arc::new(cyclic_rng(3));
        assert!(matches!(
            dorroh(&r, 2),
            Err(UnitalError::NotAnExponent { m: 2, element: 1, .. })
        ));
        // 3 and 6 both annihilate
        assert!(dorroh(&r, 3).is_ok());
        assert!(dorroh(&r, 6).is_ok());
    }

    #[test]
    fn boolean_unitalisation_translates_to_a_lattice() {
        let sig = builtins().get("crng").unwrap().signature.clone();
        let r = Arc::new(trivial_algebra(sig, "crng"));
        let cr = boolean_unitalise(&r).unwrap();
        assert_eq!(cr.output.size(), 2);
        let lattice = boolean_algebra_from_ring(&cr.output).unwrap();
        assert!(lattice.same_tables(&boolean_lattice(1)));
        // a non-Boolean rng is rejected before any table is built
        let z3 = Arc::new(cyclic_rng(3));
        assert!(matches!(
            boolean_unitalise(&z3),
            Err(UnitalError::Model(ModelError::NotAModel { .. }))
        ));
    }

    #[test]
    fn closure_action_on_a_hoop_map_commutes_with_units() {
        // collapse the idempotent 2-chain to the one-element algebra
        let w2 = Arc::new(godel_chain(2));
        let w1 = whoop_trivial();
        let from = mv_closure(&w2).unwrap();
        let to = mv_closure(&w1).unwrap();
        let collapse = Homomorphism::new(Arc::clone(&w2), Arc::clone(&w1), vec![0, 0]).unwrap();
        let lifted = closure_hom(&collapse, &from, &to).unwrap();
        // unit naturality: lifting after the unit equals the unit after
        // the map, elementwise on the shared carrier
        for e in 0..w2.size() {
            assert_eq!(
                lifted.apply(from.unit.apply(e)),
                to.unit.apply(collapse.apply(e))
            );
        }
    }
}
