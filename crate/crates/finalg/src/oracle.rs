//! Independent second opinions. The congruence generator and the pullback
//! construction both have fast direct implementations; the functions here
//! recompute the same answers by brute force, sharing no code with the
//! paths they double-check, so the two can be played against each other.

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{
    enumerate_congruences, pullback, AlgebraError, Congruence, FiniteAlgebra, Homomorphism,
};
use crate::iso::enumerate_homomorphisms;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("element {element} is outside the carrier of size {size}")]
    OutOfRange { element: usize, size: usize },
    #[error("cone from `{test}` (left {left:?}, right {right:?}) admits {count} mediating maps, expected exactly one")]
    BadMediator {
        test: String,
        left: Vec<usize>,
        right: Vec<usize>,
        count: usize,
    },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Least congruence containing `pairs`, computed the slow way: enumerate
/// every congruence of the algebra, keep those relating each generating
/// pair, and intersect them pointwise. The full relation always qualifies,
/// so the intersection is over a non-empty family.
pub fn congruence_by_intersection(
    alg: &Arc<FiniteAlgebra>,
    pairs: &[(usize, usize)],
) -> Result<Congruence, OracleError> {
    let n = alg.size();
    for &(a, b) in pairs {
        for e in [a, b] {
            if e >= n {
                return Err(OracleError::OutOfRange {
                    element: e,
                    size: n,
                });
            }
        }
    }
    let containing: Vec<Congruence> = enumerate_congruences(alg)
        .into_iter()
        .filter(|c| pairs.iter().all(|&(a, b)| c.related(a, b)))
        .collect();
    let repr = (0..n)
        .map(|x| {
            (0..=x)
                .find(|&y| containing.iter().all(|c| c.related(x, y)))
                .expect("every congruence relates x to itself")
        })
        .collect();
    Ok(Congruence::from_repr(alg, repr)?)
}

/// Number of commuting cones examined by [`pullback_mediates`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MediatorCensus {
    pub cones: usize,
}

/// Checks the universal property of the pullback of `f : A -> C <- B : g`
/// against brute force: for every test algebra `T` and every commuting
/// cone (h : T -> A, k : T -> B with f∘h = g∘k), exactly one map
/// m : T -> P must satisfy to_left∘m = h and to_right∘m = k. Mediators
/// are searched by full homomorphism enumeration, not constructed.
pub fn pullback_mediates(
    f: &Homomorphism,
    g: &Homomorphism,
    tests: &[Arc<FiniteAlgebra>],
) -> Result<MediatorCensus, OracleError> {
    let pb = pullback(f, g)?;
    let mut cones = 0;
    for t in tests {
        let into_left = enumerate_homomorphisms(t, f.dom());
        let into_right = enumerate_homomorphisms(t, g.dom());
        let into_pullback = enumerate_homomorphisms(t, &pb.algebra);
        for h in &into_left {
            for k in &into_right {
                if t.elements()
                    .any(|e| f.apply(h.apply(e)) != g.apply(k.apply(e)))
                {
                    continue;
                }
                cones += 1;
                let count = into_pullback
                    .iter()
                    .filter(|m| {
                        t.elements().all(|e| {
                            pb.to_left.apply(m.apply(e)) == h.apply(e)
                                && pb.to_right.apply(m.apply(e)) == k.apply(e)
                        })
                    })
                    .count();
                if count != 1 {
                    return Err(OracleError::BadMediator {
                        test: t.name().to_string(),
                        left: h.map().to_vec(),
                        right: k.map().to_vec(),
                        count,
                    });
                }
            }
        }
    }
    Ok(MediatorCensus { cones })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::generate_congruence;
    use crate::theories::{boolean_cube, cyclic_ring, lukasiewicz_chain};

    #[test]
    fn intersection_matches_generation_on_chains_and_cubes() {
        let corpus = vec![
            Arc::new(lukasiewicz_chain(4)),
            Arc::new(boolean_cube(2)),
            Arc::new(cyclic_ring(4)),
        ];
        for alg in &corpus {
            for a in alg.elements() {
                for b in alg.elements() {
                    let fast = generate_congruence(alg, &[(a, b)]).unwrap();
                    let slow = congruence_by_intersection(alg, &[(a, b)]).unwrap();
                    assert_eq!(fast.repr(), slow.repr(), "{} pair ({a},{b})", alg.name());
                }
            }
            let fast = generate_congruence(alg, &[]).unwrap();
            let slow = congruence_by_intersection(alg, &[]).unwrap();
            assert_eq!(fast.repr(), slow.repr());
        }
    }

    #[test]
    fn intersection_rejects_out_of_carrier_pairs() {
        let l2 = Arc::new(lukasiewicz_chain(2));
        let err = congruence_by_intersection(&l2, &[(0, 5)]).unwrap_err();
        assert_eq!(err, OracleError::OutOfRange { element: 5, size: 2 });
    }

    #[test]
    fn cube_projections_mediate_uniquely() {
        let b4 = Arc::new(boolean_cube(2));
        let l2 = Arc::new(lukasiewicz_chain(2));
        let legs = enumerate_homomorphisms(&b4, &l2);
        assert_eq!(legs.len(), 2);
        let tests = vec![Arc::clone(&l2), Arc::clone(&b4)];
        let census = pullback_mediates(&legs[0], &legs[1], &tests).unwrap();
        assert!(census.cones > 0);
    }

    #[test]
    fn ring_quotient_cospans_mediate_uniquely() {
        let z4 = Arc::new(cyclic_ring(4));
        let z2 = Arc::new(cyclic_ring(2));
        let f = enumerate_homomorphisms(&z4, &z2);
        assert_eq!(f.len(), 1);
        let g = Homomorphism::identity(&z2);
        let tests = vec![Arc::clone(&z2), Arc::clone(&z4)];
        let census = pullback_mediates(&f[0], &g, &tests).unwrap();
        // unit preservation rules out any map Z2 -> Z4, so the only
        // commuting cone is (id, mod 2) from Z4 itself
        assert_eq!(census.cones, 1);
    }
}
