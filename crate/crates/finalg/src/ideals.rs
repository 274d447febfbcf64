//! Filters of hoops, ideals of oplus/neg/zero algebras and of rings, the
//! filter–congruence correspondence, the negation duality, ideal-term
//! checking relative to a corpus, and the relative-ideal decision
//! procedure that ties the additive and the multiplicative views together.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{
    enumerate_congruences, generate_congruence, quotient, AlgebraError, Congruence, FiniteAlgebra,
    Homomorphism,
};
use crate::term::{
    check_identity, satisfies, variable_name, CorpusVerdict, Equation, Term, Theory, Verdict,
};
use crate::theories::{
    builtins, hoop_reduct, mv_leq, mv_zero, negation_dual, ModelError,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IdealError {
    #[error("subset member {element} is outside the carrier of `{algebra}` (size {size})")]
    OutOfCarrier {
        algebra: String,
        element: usize,
        size: usize,
    },
    #[error("the empty subset: ideals and filters contain their constant by definition")]
    EmptySubset,
    #[error("subset {members:?} of `{algebra}` is not a {kind}")]
    NotCertified {
        algebra: String,
        members: Vec<usize>,
        kind: SubsetKind,
    },
    #[error("the theory `{theory}` declares no point constant")]
    NoPointConstant { theory: String },
    #[error("designated variable `{variable}` does not occur in the term")]
    DesignatedVariableAbsent { variable: String },
    #[error("`{algebra}`: congruence classes and the filter predicate disagree on {subset:?}")]
    Inconsistent { algebra: String, subset: Vec<usize> },
    #[error(
        "`{algebra}`: negation sends ideal {ideal:?} to {image:?}, which is not a filter"
    )]
    DualityBroken {
        algebra: String,
        ideal: Vec<usize>,
        image: Vec<usize>,
    },
    #[error(
        "`{algebra}`: filter {filter:?} generates a congruence whose unit class {class:?} differs"
    )]
    ClassMismatch {
        algebra: String,
        filter: Vec<usize>,
        class: Vec<usize>,
    },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// The predicate a certified subset satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SubsetKind {
    /// Upward-closed submonoid of a dot/imp/one algebra containing one.
    Filter,
    /// Downward-closed submonoid of an oplus/neg/zero algebra containing
    /// zero.
    MvIdeal,
    /// Additively closed, negation-closed, multiplication-absorbing subset
    /// of a ring containing zero.
    RingIdeal,
    /// Kernel of a quotient map, taken at the unit in the hoop sense.
    UIdeal,
    /// Kernel of a quotient map at zero, in pointed signatures at zero.
    ZeroIdeal,
}

impl fmt::Display for SubsetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SubsetKind::Filter => "filter",
            SubsetKind::MvIdeal => "mv-ideal",
            SubsetKind::RingIdeal => "ring-ideal",
            SubsetKind::UIdeal => "u-ideal",
            SubsetKind::ZeroIdeal => "zero-ideal",
        };
        write!(f, "{s}")
    }
}

/// A subset of a carrier together with the predicate it was checked
/// against on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetWitness {
    alg: Arc<FiniteAlgebra>,
    members: BTreeSet<usize>,
    kind: SubsetKind,
}

impl SubsetWitness {
    /// Certifies `members` against the predicate named by `kind`.
    pub fn new(
        alg: &Arc<FiniteAlgebra>,
        members: BTreeSet<usize>,
        kind: SubsetKind,
    ) -> Result<SubsetWitness, IdealError> {
        check_range(&alg.name().to_string(), alg.size(), &members)?;
        let certified = match kind {
            SubsetKind::Filter => is_filter(alg, &members)?,
            SubsetKind::MvIdeal => is_mv_ideal(alg, &members)?,
            SubsetKind::RingIdeal => is_ring_ideal(alg, &members)?,
            SubsetKind::UIdeal => {
                matches!(is_relative_u_ideal(alg, &members)?, UIdealVerdict::Holds { .. })
            }
            SubsetKind::ZeroIdeal => is_zero_ideal(alg, &members)?,
        };
        if !certified {
            return Err(IdealError::NotCertified {
                algebra: alg.name().to_string(),
                members: members.into_iter().collect(),
                kind,
            });
        }
        Ok(SubsetWitness {
            alg: Arc::clone(alg),
            members,
            kind,
        })
    }

    pub fn alg(&self) -> &Arc<FiniteAlgebra> {
        &self.alg
    }

    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    pub fn kind(&self) -> SubsetKind {
        self.kind
    }

    pub fn contains(&self, e: usize) -> bool {
        self.members.contains(&e)
    }

    /// Members as a sorted list, the external exchange form.
    pub fn sorted(&self) -> Vec<usize> {
        self.members.iter().copied().collect()
    }
}

impl fmt::Display for SubsetWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {{", self.kind)?;
        for (i, e) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}} of {}", self.alg.name())
    }
}

fn check_range(algebra: &str, size: usize, members: &BTreeSet<usize>) -> Result<(), IdealError> {
    if let Some(&e) = members.iter().find(|&&e| e >= size) {
        return Err(IdealError::OutOfCarrier {
            algebra: algebra.to_string(),
            element: e,
            size,
        });
    }
    Ok(())
}

fn require(a: &FiniteAlgebra, theory: &str) -> Result<(), IdealError> {
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

/// Submonoid of a dot/imp/one algebra containing one and upward closed
/// under the natural order.
pub fn is_filter(h: &FiniteAlgebra, members: &BTreeSet<usize>) -> Result<bool, IdealError> {
    require(h, "hoop")?;
    check_range(&h.name().to_string(), h.size(), members)?;
    let one = h.constant("one").expect("hoop signature");
    Ok(filter_by_order(h, one, members))
}

fn filter_by_order(h: &FiniteAlgebra, one: usize, set: &BTreeSet<usize>) -> bool {
    set.contains(&one)
        && set
            .iter()
            .all(|&x| set.iter().all(|&y| set.contains(&h.apply("dot", &[x, y]))))
        && set.iter().all(|&x| {
            h.elements()
                .all(|y| h.apply("imp", &[x, y]) != one || set.contains(&y))
        })
}

/// The closure-under-detachment characterization: one is in, and from `x`
/// and `imp(x, y)` both in, `y` is in.
fn filter_by_detachment(h: &FiniteAlgebra, one: usize, set: &BTreeSet<usize>) -> bool {
    set.contains(&one)
        && set.iter().all(|&x| {
            h.elements()
                .all(|y| !set.contains(&h.apply("imp", &[x, y])) || set.contains(&y))
        })
}

/// Submonoid of an oplus/neg/zero algebra containing zero and downward
/// closed under the natural order.
pub fn is_mv_ideal(a: &FiniteAlgebra, members: &BTreeSet<usize>) -> Result<bool, IdealError> {
    require(a, "mv")?;
    check_range(&a.name().to_string(), a.size(), members)?;
    let zero = mv_zero(a);
    Ok(members.contains(&zero)
        && members.iter().all(|&x| {
            members
                .iter()
                .all(|&y| members.contains(&a.apply("oplus", &[x, y])))
        })
        && members
            .iter()
            .all(|&x| a.elements().all(|y| !mv_leq(a, y, x) || members.contains(&y))))
}

/// Subgroup of the additive group that absorbs multiplication.
pub fn is_ring_ideal(r: &FiniteAlgebra, members: &BTreeSet<usize>) -> Result<bool, IdealError> {
    require(r, "crng")?;
    check_range(&r.name().to_string(), r.size(), members)?;
    let zero = r.constant("zero").expect("ring signature");
    Ok(members.contains(&zero)
        && members.iter().all(|&x| {
            members
                .iter()
                .all(|&y| members.contains(&r.apply("add", &[x, y])))
        })
        && members
            .iter()
            .all(|&x| members.contains(&r.apply("neg", &[x])))
        && members
            .iter()
            .all(|&i| r.elements().all(|x| members.contains(&r.apply("mul", &[x, i])))))
}

/// Kernel at the point constant: the subset is the class of the point in
/// some congruence of the algebra.
pub fn is_zero_ideal(a: &Arc<FiniteAlgebra>, members: &BTreeSet<usize>) -> Result<bool, IdealError> {
    let theory = builtins()
        .get(a.theory())
        .ok_or_else(|| IdealError::NoPointConstant {
            theory: a.theory().to_string(),
        })?;
    let point = theory
        .point_constant
        .as_ref()
        .ok_or_else(|| IdealError::NoPointConstant {
            theory: theory.name.clone(),
        })?;
    let at = a.constant(point).expect("declared point constant");
    check_range(&a.name().to_string(), a.size(), members)?;
    if members.is_empty() {
        return Err(IdealError::EmptySubset);
    }
    let target: Vec<usize> = members.iter().copied().collect();
    Ok(enumerate_congruences(a)
        .iter()
        .any(|c| c.class_of(at) == target))
}

/// All filters of a dot/imp/one algebra, sorted by member set. Both
/// textbook characterizations are computed for every candidate subset and
/// must agree.
pub fn enumerate_filters(h: &Arc<FiniteAlgebra>) -> Result<Vec<SubsetWitness>, IdealError> {
    require(h, "hoop")?;
    let n = h.size();
    let one = h.constant("one").expect("hoop signature");
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let set: BTreeSet<usize> = (0..n).filter(|&e| mask >> e & 1 == 1).collect();
        let by_order = filter_by_order(h, one, &set);
        let by_detachment = filter_by_detachment(h, one, &set);
        assert_eq!(
            by_order, by_detachment,
            "the two filter characterizations split on {set:?} in {}",
            h.name()
        );
        if by_order {
            out.push(SubsetWitness {
                alg: Arc::clone(h),
                members: set,
                kind: SubsetKind::Filter,
            });
        }
    }
    out.sort_by(|a, b| a.members.cmp(&b.members));
    Ok(out)
}

/// All ideals of an oplus/neg/zero algebra, sorted by member set.
pub fn enumerate_mv_ideals(a: &Arc<FiniteAlgebra>) -> Result<Vec<SubsetWitness>, IdealError> {
    require(a, "mv")?;
    let n = a.size();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let set: BTreeSet<usize> = (0..n).filter(|&e| mask >> e & 1 == 1).collect();
        if is_mv_ideal(a, &set)? {
            out.push(SubsetWitness {
                alg: Arc::clone(a),
                members: set,
                kind: SubsetKind::MvIdeal,
            });
        }
    }
    out.sort_by(|a, b| a.members.cmp(&b.members));
    Ok(out)
}

/// Checks whether `t` is an ideal term in the designated variables:
/// substituting the theory's point constant for each designated variable
/// must force `t` to the point constant under every assignment of the
/// remaining variables, in every corpus algebra. A refutation is sound for
/// the whole variety; a pass certifies only the corpus.
pub fn is_ideal_term(
    th: &Theory,
    t: &Term,
    designated: &BTreeSet<usize>,
    corpus: &[Arc<FiniteAlgebra>],
) -> Result<CorpusVerdict, IdealError> {
    let point = th
        .point_constant
        .as_ref()
        .ok_or_else(|| IdealError::NoPointConstant {
            theory: th.name.clone(),
        })?;
    let vars = t.variables();
    if let Some(&missing) = designated.iter().find(|v| !vars.contains(v)) {
        return Err(IdealError::DesignatedVariableAbsent {
            variable: variable_name(missing),
        });
    }
    let width = vars.iter().next_back().map_or(0, |&m| m + 1);
    let subs: Vec<Term> = (0..width)
        .map(|i| {
            if designated.contains(&i) {
                Term::constant(point.clone())
            } else {
                Term::var(i)
            }
        })
        .collect();
    let eq = Equation {
        lhs: t.substitute(&subs),
        rhs: Term::constant(point.clone()),
    };
    let mut certified = Vec::new();
    for alg in corpus {
        if !satisfies(alg, th) {
            return Err(ModelError::NotAModel {
                algebra: alg.name().to_string(),
                theory: th.name.clone(),
            }
            .into());
        }
        match check_identity(alg, &eq).expect("validated signature") {
            Verdict::Holds => certified.push(alg.name().to_string()),
            Verdict::Counterexample(at) => {
                return Ok(CorpusVerdict::fail(alg.name(), eq.to_string(), at))
            }
        }
    }
    Ok(CorpusVerdict::pass(certified))
}

/// The negation map as an isomorphism onto the dual algebra, with the
/// induced pairing of ideals to filters of the hoop reduct.
pub struct DualityResult {
    pub iso: Homomorphism,
    pub pairs: Vec<(SubsetWitness, SubsetWitness)>,
}

/// Verifies that negation is an isomorphism onto the dual structure and
/// that it pairs the ideals with the filters of the reduct bijectively,
/// preserving inclusion.
pub fn negation_duality(a: &Arc<FiniteAlgebra>) -> Result<DualityResult, IdealError> {
    require(a, "mv")?;
    let dual = Arc::new(negation_dual(a)?);
    let neg_map: Vec<usize> = a.elements().map(|x| a.apply("neg", &[x])).collect();
    let iso = Homomorphism::new(Arc::clone(a), dual, neg_map)?;
    assert!(iso.is_bijective(), "negation is an involution");
    let reduct = Arc::new(hoop_reduct(a)?);
    let ideals = enumerate_mv_ideals(a)?;
    let filters = enumerate_filters(&reduct)?;
    let mut pairs = Vec::new();
    let mut hit = vec![false; filters.len()];
    for ideal in ideals {
        let image: BTreeSet<usize> = ideal.members.iter().map(|&x| iso.apply(x)).collect();
        let position = filters.iter().position(|f| f.members == image);
        let Some(at) = position else {
            return Err(IdealError::DualityBroken {
                algebra: a.name().to_string(),
                ideal: ideal.sorted(),
                image: image.into_iter().collect(),
            });
        };
        hit[at] = true;
        pairs.push((ideal, filters[at].clone()));
    }
    assert!(
        hit.iter().all(|&h| h),
        "every filter is the image of an ideal"
    );
    // inclusion in the ideal column must match inclusion in the filter
    // column pairwise
    for (i1, f1) in &pairs {
        for (i2, f2) in &pairs {
            assert_eq!(
                i1.members.is_subset(&i2.members),
                f1.members.is_subset(&f2.members),
                "the pairing preserves inclusion"
            );
        }
    }
    Ok(DualityResult { iso, pairs })
}

/// The two mutually inverse maps between filters and congruences.
pub struct FilterCongruencePairing {
    pub pairs: Vec<(SubsetWitness, Congruence)>,
}

/// For every congruence the class of one is a filter, and for every
/// filter the congruence generated by collapsing it to one recovers the
/// filter as its unit class; the two directions are verified to be
/// mutually inverse bijections.
pub fn filter_congruence_bijection(
    h: &Arc<FiniteAlgebra>,
) -> Result<FilterCongruencePairing, IdealError> {
    require(h, "hoop")?;
    let one = h.constant("one").expect("hoop signature");
    let filters = enumerate_filters(h)?;
    let congruences = enumerate_congruences(h);
    // congruence -> filter: the unit class
    for c in &congruences {
        let class: BTreeSet<usize> = c.class_of(one).into_iter().collect();
        if !is_filter(h, &class)? {
            return Err(IdealError::Inconsistent {
                algebra: h.name().to_string(),
                subset: class.into_iter().collect(),
            });
        }
    }
    // filter -> congruence: generated by collapsing the filter to one
    let mut pairs = Vec::new();
    for f in filters {
        let collapse: Vec<(usize, usize)> = f.members.iter().map(|&x| (x, one)).collect();
        let c = generate_congruence(h, &collapse)?;
        let class: Vec<usize> = c.class_of(one);
        if class != f.sorted() {
            return Err(IdealError::ClassMismatch {
                algebra: h.name().to_string(),
                filter: f.sorted(),
                class,
            });
        }
        pairs.push((f, c));
    }
    // mutually inverse: counts agree and every congruence arises
    assert_eq!(
        pairs.len(),
        congruences.len(),
        "filters and congruences are in bijection on {}",
        h.name()
    );
    for c in &congruences {
        assert!(
            pairs.iter().any(|(_, d)| d.repr() == c.repr()),
            "congruence {:?} of {} arises from its unit class",
            c.repr(),
            h.name()
        );
    }
    Ok(FilterCongruencePairing { pairs })
}

/// Outcome of the relative-ideal decision: either a congruence and the
/// quotient map whose kernel at the unit is the requested subset, or a
/// definite refusal.
#[derive(Debug)]
pub enum UIdealVerdict {
    Holds {
        congruence: Congruence,
        quotient: Homomorphism,
    },
    Fails,
}

impl UIdealVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, UIdealVerdict::Holds { .. })
    }
}

/// Decides whether `members` is the kernel, taken at the unit in the
/// dot/imp/one sense, of some quotient of the oplus/neg/zero algebra `b`.
/// The decision runs over all congruences of `b` and is cross-checked
/// against the filter predicate on the reduct; the two must agree.
pub fn is_relative_u_ideal(
    b: &Arc<FiniteAlgebra>,
    members: &BTreeSet<usize>,
) -> Result<UIdealVerdict, IdealError> {
    require(b, "mv")?;
    check_range(&b.name().to_string(), b.size(), members)?;
    if members.is_empty() {
        return Err(IdealError::EmptySubset);
    }
    let one = crate::theories::mv_one(b);
    let target: Vec<usize> = members.iter().copied().collect();
    let found = enumerate_congruences(b)
        .into_iter()
        .find(|c| c.class_of(one) == target);
    let reduct = Arc::new(hoop_reduct(b)?);
    let filter = is_filter(&reduct, members)?;
    if found.is_some() != filter {
        return Err(IdealError::Inconsistent {
            algebra: b.name().to_string(),
            subset: target,
        });
    }
    Ok(match found {
        Some(congruence) => {
            let (_, map) = quotient(b, &congruence);
            UIdealVerdict::Holds {
                congruence,
                quotient: map,
            }
        }
        None => UIdealVerdict::Fails,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theories::{boolean_cube, cyclic_ring, lukasiewicz_chain};

    fn set(elems: &[usize]) -> BTreeSet<usize> {
        elems.iter().copied().collect()
    }

    #[test]
    fn filters_of_the_three_chain_reduct() {
        let h = Arc::new(hoop_reduct(&lukasiewicz_chain(3)).unwrap());
        let filters = enumerate_filters(&h).unwrap();
        let sets: Vec<Vec<usize>> = filters.iter().map(|f| f.sorted()).collect();
        // {1,2} is not a filter: 1 dot 1 = 0 escapes
        assert_eq!(sets, vec![vec![0, 1, 2], vec![2]]);
    }

    #[test]
    fn filters_of_the_two_chain() {
        let h = Arc::new(hoop_reduct(&lukasiewicz_chain(2)).unwrap());
        let sets: Vec<Vec<usize>> = enumerate_filters(&h)
            .unwrap()
            .iter()
            .map(|f| f.sorted())
            .collect();
        assert_eq!(sets, vec![vec![0, 1], vec![1]]);
    }

    #[test]
    fn the_unit_singleton_is_always_a_filter() {
        for n in 2..=5 {
            let h = Arc::new(hoop_reduct(&lukasiewicz_chain(n)).unwrap());
            let one = h.constant("one").unwrap();
            assert!(is_filter(&h, &set(&[one])).unwrap());
        }
    }

    #[test]
    fn ideals_of_small_mv_algebras() {
        let l3 = Arc::new(lukasiewicz_chain(3));
        let sets: Vec<Vec<usize>> = enumerate_mv_ideals(&l3)
            .unwrap()
            .iter()
            .map(|i| i.sorted())
            .collect();
        // {0,1} fails: 1 oplus 1 = 2 escapes
        assert_eq!(sets, vec![vec![0], vec![0, 1, 2]]);
        let b4 = Arc::new(boolean_cube(2));
        assert_eq!(enumerate_mv_ideals(&b4).unwrap().len(), 4);
    }

    #[test]
    fn ring_ideal_predicate_on_z4() {
        let z4 = Arc::new(cyclic_ring(4));
        assert!(is_ring_ideal(&z4, &set(&[0, 2])).unwrap());
        assert!(!is_ring_ideal(&z4, &set(&[0, 1])).unwrap());
        assert!(is_ring_ideal(&z4, &set(&[0])).unwrap());
        assert!(is_ring_ideal(&z4, &set(&[0, 1, 2, 3])).unwrap());
    }

    #[test]
    fn witness_construction_enforces_the_predicate() {
        let l3 = Arc::new(lukasiewicz_chain(3));
        let h = Arc::new(hoop_reduct(&l3).unwrap());
        assert!(SubsetWitness::new(&h, set(&[2]), SubsetKind::Filter).is_ok());
        let err = SubsetWitness::new(&h, set(&[1, 2]), SubsetKind::Filter).unwrap_err();
        assert!(matches!(err, IdealError::NotCertified { .. }));
        let err = SubsetWitness::new(&h, set(&[7]), SubsetKind::Filter).unwrap_err();
        assert!(matches!(err, IdealError::OutOfCarrier { element: 7, .. }));
    }

    #[test]
    fn annihilation_is_an_ideal_term_for_rings() {
        let th = builtins().get("crng").unwrap();
        let corpus: Vec<Arc<FiniteAlgebra>> = (2..=4)
            .map(|m| Arc::new(crate::theories::cyclic_rng(m)))
            .collect();
        let t = Term::app("mul", vec![Term::var(0), Term::var(1)]);
        let verdict = is_ideal_term(th, &t, &set(&[1]), &corpus).unwrap();
        assert!(verdict.ok());
        assert_eq!(verdict.certified_on, vec!["Z2rng", "Z3rng", "Z4rng"]);
    }

    #[test]
    fn residuation_toward_the_unit_is_an_ideal_term_for_hoops() {
        let th = builtins().get("hoop").unwrap();
        let h2 = Arc::new(hoop_reduct(&lukasiewicz_chain(2)).unwrap());
        let h3 = Arc::new(hoop_reduct(&lukasiewicz_chain(3)).unwrap());
        let corpus = vec![h2, h3];
        // x -> 1 collapses to 1; 1 -> x does not
        let good = Term::app("imp", vec![Term::var(0), Term::var(1)]);
        assert!(is_ideal_term(th, &good, &set(&[1]), &corpus)
            .unwrap()
            .ok());
        let bad = Term::app("imp", vec![Term::var(1), Term::var(0)]);
        let verdict = is_ideal_term(th, &bad, &set(&[1]), &corpus).unwrap();
        let failure = verdict.failure.unwrap();
        assert_eq!(failure.algebra, "L2_hoop");
        assert_eq!(failure.assignment, vec![0]);
    }

    #[test]
    fn ideal_term_checks_validate_their_inputs() {
        let th = builtins().get("crng").unwrap();
        let t = Term::app("mul", vec![Term::var(0), Term::var(1)]);
        let err = is_ideal_term(th, &t, &set(&[5]), &[]).unwrap_err();
        assert!(matches!(err, IdealError::DesignatedVariableAbsent { .. }));
        let booalg = builtins().get("booalg").unwrap();
        let err = is_ideal_term(booalg, &t, &set(&[1]), &[]).unwrap_err();
        assert!(matches!(err, IdealError::NoPointConstant { .. }));
    }

    #[test]
    fn negation_pairs_ideals_with_filters() {
        let l3 = Arc::new(lukasiewicz_chain(3));
        let duality = negation_duality(&l3).unwrap();
        let pairs: Vec<(Vec<usize>, Vec<usize>)> = duality
            .pairs
            .iter()
            .map(|(i, f)| (i.sorted(), f.sorted()))
            .collect();
        assert_eq!(
            pairs,
            vec![
                (vec![0], vec![2]),
                (vec![0, 1, 2], vec![0, 1, 2])
            ]
        );
        let b4 = Arc::new(boolean_cube(2));
        assert_eq!(negation_duality(&b4).unwrap().pairs.len(), 4);
    }

    #[test]
    fn filters_match_congruences_on_small_chains_and_the_square() {
        let l2 = Arc::new(lukasiewicz_chain(2));
        let b4h = Arc::new(
            hoop_reduct(&crate::algebra::product(&l2, &l2).unwrap().algebra).unwrap(),
        );
        let pairing = filter_congruence_bijection(&b4h).unwrap();
        assert_eq!(pairing.pairs.len(), 4);
        let h3 = Arc::new(hoop_reduct(&lukasiewicz_chain(3)).unwrap());
        assert_eq!(filter_congruence_bijection(&h3).unwrap().pairs.len(), 2);
        // the unit singleton always pairs with the identity congruence
        let (f, c) = &filter_congruence_bijection(&h3).unwrap().pairs[1];
        assert_eq!(f.sorted(), vec![2]);
        assert_eq!(c.num_blocks(), 3);
    }

    #[test]
    fn relative_ideal_decision_matches_the_filter_view() {
        let l3 = Arc::new(lukasiewicz_chain(3));
        let verdict = is_relative_u_ideal(&l3, &set(&[2])).unwrap();
        let UIdealVerdict::Holds { quotient, .. } = verdict else {
            panic!("the unit singleton is a kernel");
        };
        // identity congruence: the witnessing quotient is injective
        assert!(quotient.is_injective());
        assert!(!is_relative_u_ideal(&l3, &set(&[1, 2])).unwrap().holds());
        let full = is_relative_u_ideal(&l3, &set(&[0, 1, 2])).unwrap();
        assert!(full.holds());
        assert!(matches!(
            is_relative_u_ideal(&l3, &set(&[])).unwrap_err(),
            IdealError::EmptySubset
        ));
        assert!(matches!(
            is_relative_u_ideal(&l3, &set(&[9])).unwrap_err(),
            IdealError::OutOfCarrier { .. }
        ));
    }

    #[test]
    fn relative_ideal_agreement_is_exhaustive_on_the_square() {
        let b4 = Arc::new(boolean_cube(2));
        let reduct = Arc::new(hoop_reduct(&b4).unwrap());
        let mut holds = 0usize;
        for mask in 1u64..16 {
            let subset: BTreeSet<usize> = (0..4).filter(|&e| mask >> e & 1 == 1).collect();
            let verdict = is_relative_u_ideal(&b4, &subset).unwrap();
            assert_eq!(verdict.holds(), is_filter(&reduct, &subset).unwrap());
            if verdict.holds() {
                holds += 1;
            }
        }
        assert_eq!(holds, 4);
    }

    #[test]
    fn zero_ideal_predicate_on_a_ring() {
        let z4 = Arc::new(cyclic_ring(4));
        assert!(is_zero_ideal(&z4, &set(&[0, 2])).unwrap());
        assert!(!is_zero_ideal(&z4, &set(&[0, 1])).unwrap());
        assert!(matches!(
            is_zero_ideal(&z4, &set(&[])).unwrap_err(),
            IdealError::EmptySubset
        ));
    }
}
