//! Exhaustive search for the finite models of an equational theory, one
//! representative per isomorphism class.
//!
//! The search fills operation tables cell by cell (constants first, then
//! unary, then binary symbols), propagating equation instances to unit-fix
//! cells and to detect conflicts early. Completed tables are kept only in
//! canonical form: lexicographically least among all relabellings of the
//! carrier, so the result is one model per isomorphism class with no
//! separate deduplication pass.

use crate::algebra::FiniteAlgebra;
use crate::term::{Term, Theory};

const UNSET: usize = usize::MAX;

/// Term with symbol names resolved to signature positions, for fast
/// repeated evaluation inside the search loop.
enum Ix {
    Var(usize),
    App(usize, Vec<Ix>),
}

fn index_term(t: &Term, theory: &Theory) -> Ix {
    match t {
        Term::Var(v) => Ix::Var(*v),
        Term::App(name, args) => {
            let pos = theory
                .signature
                .symbols()
                .iter()
                .position(|(n, _)| n == name)
                .expect("theory equations use declared symbols");
            Ix::App(pos, args.iter().map(|a| index_term(a, theory)).collect())
        }
    }
}

/// Partial evaluation result: a value, a single unset cell that would
/// determine the value, or something deeper still unknown.
enum Partial {
    Known(usize),
    Cell(usize, usize),
    Opaque,
}

struct Instance {
    eq: usize,
    env: Vec<usize>,
}

struct Searcher<'t> {
    theory: &'t Theory,
    size: usize,
    /// One flat table per symbol, `UNSET` for undecided cells.
    tables: Vec<Vec<usize>>,
    /// (symbol position, flat index) in decision order.
    cells: Vec<(usize, usize)>,
    sides: Vec<(Ix, Ix)>,
    instances: Vec<Instance>,
    trail: Vec<(usize, usize)>,
    perms: Vec<Vec<usize>>,
    limit: usize,
    found: Vec<Vec<Vec<usize>>>,
}

impl Searcher<'_> {
    fn eval(&self, term: &Ix, env: &[usize]) -> Partial {
        match term {
            Ix::Var(v) => Partial::Known(env[*v]),
            Ix::App(pos, args) => {
                let mut idx = 0usize;
                for a in args {
                    match self.eval(a, env) {
                        Partial::Known(v) => idx = idx * self.size + v,
                        _ => return Partial::Opaque,
                    }
                }
                match self.tables[*pos][idx] {
                    UNSET => Partial::Cell(*pos, idx),
                    v => Partial::Known(v),
                }
            }
        }
    }

    fn set(&mut self, pos: usize, idx: usize, value: usize) {
        self.tables[pos][idx] = value;
        self.trail.push((pos, idx));
    }

    /// Unit-propagates equation instances to a fixpoint. Returns false on
    /// a contradiction.
    fn propagate(&mut self) -> bool {
        loop {
            let mut changed = false;
            for i in 0..self.instances.len() {
                let Instance { eq, env } = &self.instances[i];
                let (lhs, rhs) = &self.sides[*eq];
                let l = self.eval(lhs, env);
                let r = self.eval(rhs, env);
                match (l, r) {
                    (Partial::Known(a), Partial::Known(b)) => {
                        if a != b {
                            return false;
                        }
                    }
                    (Partial::Known(a), Partial::Cell(pos, idx))
                    | (Partial::Cell(pos, idx), Partial::Known(a)) => {
                        self.set(pos, idx, a);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    /// True when the completed tables are lexicographically least (in cell
    /// decision order) among all relabellings of the carrier.
    fn is_canonical(&self) -> bool {
        let arities: Vec<usize> = self
            .theory
            .signature
            .symbols()
            .iter()
            .map(|(_, a)| *a)
            .collect();
        'perm: for pi in &self.perms {
            let mut inv = vec![0usize; self.size];
            for (i, &p) in pi.iter().enumerate() {
                inv[p] = i;
            }
            for &(pos, idx) in &self.cells {
                // decode idx into arguments, pull them back through the
                // inverse relabelling, and push the output forward
                let k = arities[pos];
                let mut pre = 0usize;
                let mut rest = idx;
                let mut digits = vec![0usize; k];
                for d in (0..k).rev() {
                    digits[d] = rest % self.size;
                    rest /= self.size;
                }
                for &d in &digits {
                    pre = pre * self.size + inv[d];
                }
                let relabelled = pi[self.tables[pos][pre]];
                let original = self.tables[pos][idx];
                if relabelled < original {
                    return false;
                }
                if relabelled > original {
                    continue 'perm;
                }
            }
        }
        true
    }

    fn dfs(&mut self, from: usize) {
        if self.found.len() >= self.limit {
            return;
        }
        let next = self.cells[from..]
            .iter()
            .position(|&(pos, idx)| self.tables[pos][idx] == UNSET)
            .map(|o| from + o);
        let Some(at) = next else {
            if self.is_canonical() {
                self.found.push(self.tables.clone());
            }
            return;
        };
        let (pos, idx) = self.cells[at];
        for value in 0..self.size {
            let mark = self.trail.len();
            self.set(pos, idx, value);
            if self.propagate() {
                self.dfs(at + 1);
            }
            while self.trail.len() > mark {
                let (p, i) = self.trail.pop().unwrap();
                self.tables[p][i] = UNSET;
            }
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    let mut used = vec![false; n];
    fn go(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    go(n, &mut cur, &mut used, &mut out);
    out
}

/// All models of `theory` with carrier `{0..size-1}`, one per isomorphism
/// class, named `{theory}_{size}_{k}`. A `limit` stops the search after
/// that many classes. Intended for small sizes (the search is exhaustive).
pub fn find_models(theory: &Theory, size: usize, limit: Option<usize>) -> Vec<FiniteAlgebra> {
    if size == 0 || limit == Some(0) {
        return Vec::new();
    }
    let symbols = theory.signature.symbols();
    let mut order: Vec<usize> = (0..symbols.len()).collect();
    order.sort_by_key(|&i| symbols[i].1);
    let mut cells = Vec::new();
    for &i in &order {
        for idx in 0..size.pow(symbols[i].1 as u32) {
            cells.push((i, idx));
        }
    }
    let sides: Vec<(Ix, Ix)> = theory
        .equations
        .iter()
        .map(|eq| (index_term(&eq.lhs, theory), index_term(&eq.rhs, theory)))
        .collect();
    let mut instances = Vec::new();
    for (eq_idx, eq) in theory.equations.iter().enumerate() {
        let vars = eq.var_count();
        let mut env = vec![0usize; vars];
        loop {
            instances.push(Instance {
                eq: eq_idx,
                env: env.clone(),
            });
            if !crate::term::next_assignment(&mut env, size) {
                break;
            }
        }
    }
    let mut s = Searcher {
        theory,
        size,
        tables: symbols
            .iter()
            .map(|(_, a)| vec![UNSET; size.pow(*a as u32)])
            .collect(),
        cells,
        sides,
        instances,
        trail: Vec::new(),
        perms: permutations(size)
            .into_iter()
            .filter(|p| p.iter().enumerate().any(|(i, &v)| i != v))
            .collect(),
        limit: limit.unwrap_or(usize::MAX),
        found: Vec::new(),
    };
    s.dfs(0);
    // Canonical forms are already unique per class; the pairwise pass below
    // is a defensive net so a canonicalisation bug can never leak duplicates.
    let mut kept: Vec<std::sync::Arc<FiniteAlgebra>> = Vec::new();
    for tables in s.found {
        let alg = std::sync::Arc::new(
            FiniteAlgebra::new(
                format!("{}_{}_{}", theory.name, size, kept.len() + 1),
                theory.name.clone(),
                theory.signature.clone(),
                size,
                tables,
            )
            .expect("completed tables are total and in range"),
        );
        if kept
            .iter()
            .all(|seen| crate::iso::find_isomorphism(seen, &alg).is_none())
        {
            kept.push(alg);
        }
    }
    kept.into_iter()
        .map(|a| std::sync::Arc::try_unwrap(a).expect("sole owner"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::product;
    use crate::iso::find_isomorphism;
    use crate::term::satisfies;
    use crate::theories;
    use std::sync::Arc;

    fn catalog() -> &'static theories::Catalog {
        theories::builtins()
    }

    #[test]
    fn mv_model_counts_match_the_chain_product_classification() {
        let mv = catalog().get("mv").unwrap();
        let counts: Vec<usize> = (1..=4).map(|n| find_models(mv, n, None).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2]);
    }

    #[test]
    fn the_two_four_element_mv_models_are_the_chain_and_the_square() {
        let mv = catalog().get("mv").unwrap();
        let models: Vec<Arc<FiniteAlgebra>> =
            find_models(mv, 4, None).into_iter().map(Arc::new).collect();
        let l4 = Arc::new(theories::lukasiewicz_chain(4));
        let l2 = Arc::new(theories::lukasiewicz_chain(2));
        let b4 = product(&l2, &l2).unwrap().algebra;
        let hits_l4 = models
            .iter()
            .filter(|m| find_isomorphism(m, &l4).is_some())
            .count();
        let hits_b4 = models
            .iter()
            .filter(|m| find_isomorphism(m, &b4).is_some())
            .count();
        assert_eq!((hits_l4, hits_b4), (1, 1));
    }

    #[test]
    fn small_hoop_counts() {
        let hoop = catalog().get("hoop").unwrap();
        assert_eq!(find_models(hoop, 1, None).len(), 1);
        assert_eq!(find_models(hoop, 2, None).len(), 1);
        // three elements: the Lukasiewicz 3-chain and the Godel 3-chain
        let three = find_models(hoop, 3, None);
        assert_eq!(three.len(), 2);
        let whoop = catalog().get("whoop").unwrap();
        let idem = catalog().get("idemhoop").unwrap();
        let wajsberg = three.iter().filter(|m| satisfies(m, whoop)).count();
        let godel = three.iter().filter(|m| satisfies(m, idem)).count();
        assert_eq!((wajsberg, godel), (1, 1));
    }

    #[test]
    fn found_models_satisfy_the_theory_and_are_pairwise_non_isomorphic() {
        let hoop = catalog().get("hoop").unwrap();
        let models: Vec<Arc<FiniteAlgebra>> =
            find_models(hoop, 4, None).into_iter().map(Arc::new).collect();
        for m in &models {
            assert!(satisfies(m, hoop), "{} fails the axioms", m.name());
        }
        for i in 0..models.len() {
            for j in i + 1..models.len() {
                assert!(
                    find_isomorphism(&models[i], &models[j]).is_none(),
                    "{} and {} are isomorphic",
                    models[i].name(),
                    models[j].name()
                );
            }
        }
    }

    #[test]
    fn commutative_rng_counts() {
        let crng = catalog().get("crng").unwrap();
        // null ring and field at size 2; null ring and Z3 at size 3
        assert_eq!(find_models(crng, 2, None).len(), 2);
        assert_eq!(find_models(crng, 3, None).len(), 2);
    }

    #[test]
    fn limit_truncates_the_search() {
        let mv = catalog().get("mv").unwrap();
        assert_eq!(find_models(mv, 4, Some(1)).len(), 1);
        assert_eq!(find_models(mv, 4, Some(0)).len(), 0);
        // a generous limit changes nothing
        assert_eq!(find_models(mv, 4, Some(99)).len(), 2);
    }

    #[test]
    fn model_names_are_stable() {
        let mv = catalog().get("mv").unwrap();
        let models = find_models(mv, 4, None);
        assert_eq!(models[0].name(), "mv_4_1");
        assert_eq!(models[1].name(), "mv_4_2");
    }
}
