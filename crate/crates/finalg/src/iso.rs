//! Backtracking search for homomorphisms and isomorphisms between finite
//! algebras, with invariant-profile pruning for the isomorphism case.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::algebra::{FiniteAlgebra, Homomorphism};

/// Per-element invariants preserved by any isomorphism. Two elements can
/// only correspond if their profiles agree, which cuts the search space
/// hard on the small algebras we deal with.
fn invariant_profiles(alg: &FiniteAlgebra) -> Vec<Vec<usize>> {
    let n = alg.size();
    (0..n)
        .map(|x| {
            let mut p = Vec::new();
            for (symbol, arity) in alg.signature().symbols() {
                match arity {
                    0 => p.push(usize::from(alg.apply(symbol, &[]) == x)),
                    1 => {
                        p.push(usize::from(alg.apply(symbol, &[x]) == x));
                        // steps until the forward orbit of x repeats
                        let mut seen = vec![false; n];
                        let mut cur = x;
                        let mut len = 0;
                        while !seen[cur] {
                            seen[cur] = true;
                            cur = alg.apply(symbol, &[cur]);
                            len += 1;
                        }
                        p.push(len);
                        p.push((0..n).filter(|&y| alg.apply(symbol, &[y]) == x).count());
                    }
                    2 => {
                        p.push(usize::from(alg.apply(symbol, &[x, x]) == x));
                        let row: BTreeSet<usize> =
                            (0..n).map(|y| alg.apply(symbol, &[x, y])).collect();
                        let col: BTreeSet<usize> =
                            (0..n).map(|y| alg.apply(symbol, &[y, x])).collect();
                        p.push(row.len());
                        p.push(col.len());
                        p.push((0..n).filter(|&y| alg.apply(symbol, &[x, y]) == x).count());
                        p.push((0..n).filter(|&y| alg.apply(symbol, &[y, x]) == x).count());
                        p.push((0..n).filter(|&y| alg.apply(symbol, &[x, y]) == y).count());
                        p.push((0..n).filter(|&y| alg.apply(symbol, &[y, x]) == y).count());
                    }
                    // higher arities contribute nothing; the backtracking
                    // check still enforces them exactly
                    _ => {}
                }
            }
            p
        })
        .collect()
}

/// Checks every operation instance that became fully determined when
/// element `i` received its image: tuples over `{0..=i}` that mention `i`
/// or whose output is `i`.
fn consistent(dom: &FiniteAlgebra, cod: &FiniteAlgebra, map: &[usize], i: usize) -> bool {
    for (symbol, arity) in dom.signature().symbols() {
        let mut args = vec![0usize; *arity];
        loop {
            let out = dom.apply(symbol, &args);
            if out <= i && (args.contains(&i) || out == i) {
                let image: Vec<usize> = args.iter().map(|&a| map[a]).collect();
                if map[out] != cod.apply(symbol, &image) {
                    return false;
                }
            }
            if !crate::term::next_assignment(&mut args, i + 1) {
                break;
            }
        }
    }
    true
}

struct Search<'a> {
    dom: &'a FiniteAlgebra,
    cod: &'a FiniteAlgebra,
    bijective: bool,
    profiles: Option<(Vec<Vec<usize>>, Vec<Vec<usize>>)>,
    limit: usize,
    map: Vec<usize>,
    used: Vec<bool>,
    found: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn go(&mut self, i: usize) {
        if self.found.len() >= self.limit {
            return;
        }
        if i == self.dom.size() {
            self.found.push(self.map.clone());
            return;
        }
        for c in 0..self.cod.size() {
            if self.bijective && self.used[c] {
                continue;
            }
            if let Some((pd, pc)) = &self.profiles {
                if pd[i] != pc[c] {
                    continue;
                }
            }
            self.map[i] = c;
            if consistent(self.dom, self.cod, &self.map, i) {
                self.used[c] = true;
                self.go(i + 1);
                self.used[c] = false;
            }
            if self.found.len() >= self.limit {
                return;
            }
        }
    }
}

/// All homomorphisms from `dom` to `cod`, in lexicographic order of their
/// map vectors. Empty when the signatures are incompatible.
pub fn enumerate_homomorphisms(
    dom: &Arc<FiniteAlgebra>,
    cod: &Arc<FiniteAlgebra>,
) -> Vec<Homomorphism> {
    if !dom.signature().compatible(cod.signature()) {
        return Vec::new();
    }
    let mut s = Search {
        dom,
        cod,
        bijective: false,
        profiles: None,
        limit: usize::MAX,
        map: vec![0; dom.size()],
        used: vec![false; cod.size()],
        found: Vec::new(),
    };
    s.go(0);
    s.found
        .into_iter()
        .map(|m| {
            Homomorphism::new(Arc::clone(dom), Arc::clone(cod), m)
                .expect("search output preserves all operations")
        })
        .collect()
}

/// The lexicographically least isomorphism from `a` to `b`, if one exists.
pub fn find_isomorphism(
    a: &Arc<FiniteAlgebra>,
    b: &Arc<FiniteAlgebra>,
) -> Option<Homomorphism> {
    if a.size() != b.size() || !a.signature().compatible(b.signature()) {
        return None;
    }
    let pa = invariant_profiles(a);
    let pb = invariant_profiles(b);
    let mut sa = pa.clone();
    let mut sb = pb.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }
    let mut s = Search {
        dom: a,
        cod: b,
        bijective: true,
        profiles: Some((pa, pb)),
        limit: 1,
        map: vec![0; a.size()],
        used: vec![false; b.size()],
        found: Vec::new(),
    };
    s.go(0);
    s.found.pop().map(|m| {
        Homomorphism::new(Arc::clone(a), Arc::clone(b), m)
            .expect("search output preserves all operations")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::product;
    use crate::theories;

    #[test]
    fn identity_is_the_least_automorphism_of_a_rigid_chain() {
        let l3 = Arc::new(theories::lukasiewicz_chain(3));
        let iso = find_isomorphism(&l3, &l3).unwrap();
        assert_eq!(iso.map(), &[0, 1, 2]);
    }

    #[test]
    fn the_two_four_element_mv_algebras_are_not_isomorphic() {
        let l4 = Arc::new(theories::lukasiewicz_chain(4));
        let l2 = Arc::new(theories::lukasiewicz_chain(2));
        let b4 = product(&l2, &l2).unwrap();
        assert!(find_isomorphism(&l4, &b4.algebra).is_none());
    }

    #[test]
    fn product_factor_swap_is_the_unique_isomorphism() {
        let l2 = Arc::new(theories::lukasiewicz_chain(2));
        let l3 = Arc::new(theories::lukasiewicz_chain(3));
        let p23 = product(&l2, &l3).unwrap();
        let p32 = product(&l3, &l2).unwrap();
        let iso = find_isomorphism(&p23.algebra, &p32.algebra).unwrap();
        // rigid non-isomorphic factors leave exactly the swap (i,j)->(j,i)
        assert_eq!(iso.map(), &[0, 2, 4, 1, 3, 5]);
    }

    #[test]
    fn hom_counts_into_the_two_element_chain() {
        let l2 = Arc::new(theories::lukasiewicz_chain(2));
        let l3 = Arc::new(theories::lukasiewicz_chain(3));
        let b4 = product(&l2, &l2).unwrap();
        // the middle of the 3-chain is a fixed point of negation, so no
        // map into the 2-chain can preserve negation
        assert!(enumerate_homomorphisms(&l3, &l2).is_empty());
        // the square maps onto the 2-chain through each projection
        let homs = enumerate_homomorphisms(&b4.algebra, &l2);
        assert_eq!(homs.len(), 2);
        assert_eq!(homs[0].map(), &[0, 0, 1, 1]);
        assert_eq!(homs[1].map(), &[0, 1, 0, 1]);
    }

    #[test]
    fn size_mismatch_is_rejected_before_searching() {
        let l2 = Arc::new(theories::lukasiewicz_chain(2));
        let l3 = Arc::new(theories::lukasiewicz_chain(3));
        assert!(find_isomorphism(&l2, &l3).is_none());
    }

    #[test]
    fn isomorphism_respects_structure_not_just_size() {
        // same size and signature, different structure: the 4-chain vs the
        // square has already been covered; here a relabelled chain is
        // recognised
        let l3 = Arc::new(theories::lukasiewicz_chain(3));
        // relabel by the cycle 0->1->2->0: f'(x,y) = pi(f(pi^-1 x, pi^-1 y))
        let pi = [1usize, 2, 0];
        let inv = [2usize, 0, 1];
        let oplus: Vec<usize> = (0..9)
            .map(|e| pi[l3.apply("oplus", &[inv[e / 3], inv[e % 3]])])
            .collect();
        let neg: Vec<usize> = (0..3).map(|e| pi[l3.apply("neg", &[inv[e]])]).collect();
        let relabelled = Arc::new(
            crate::algebra::FiniteAlgebra::new(
                "L3r",
                "mv",
                l3.signature().clone(),
                3,
                vec![oplus, neg, vec![pi[0]]],
            )
            .unwrap(),
        );
        let iso = find_isomorphism(&l3, &relabelled).unwrap();
        assert_eq!(iso.map(), &pi);
    }
}
