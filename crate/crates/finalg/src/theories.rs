//! Built-in equational theories, standard families of finite algebras,
//! derived operations, reducts and signature translations.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use thiserror::Error;

use crate::algebra::{AlgebraError, FiniteAlgebra};
use crate::parse::parse_theory;
use crate::term::{satisfies, Signature, Term, Theory};

/// Failures of the derived-structure constructions: a precondition theory
/// not satisfied, or one of the exhaustively verified consequences failing
/// (which signals corrupt tables rather than ordinary bad input).
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("`{algebra}` does not satisfy the `{theory}` axioms")]
    NotAModel { algebra: String, theory: String },
    #[error("`{algebra}`: derived equation `{equation}` fails at {at:?}")]
    DerivedEquation {
        algebra: String,
        equation: &'static str,
        at: Vec<usize>,
    },
    #[error("`{algebra}`: `{left}` and `{right}` disagree at ({x}, {y})")]
    OrderMismatch {
        algebra: String,
        left: &'static str,
        right: &'static str,
        x: usize,
        y: usize,
    },
    #[error("`{algebra}`: lattice law `{law}` fails at {at:?}")]
    LatticeLaw {
        algebra: String,
        law: &'static str,
        at: Vec<usize>,
    },
    #[error("`{algebra}`: residuation fails at ({x}, {y}, {z})")]
    Residuation {
        algebra: String,
        x: usize,
        y: usize,
        z: usize,
    },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Checks that `a` satisfies the named built-in theory, the precondition
/// shared by every derived construction below.
fn require(a: &FiniteAlgebra, theory: &str) -> Result<(), ModelError> {
    let th = builtins().get(theory).expect("built-in theory name");
    if satisfies(a, th) {
        Ok(())
    } else {
        Err(ModelError::NotAModel {
            algebra: a.name().to_string(),
            theory: theory.to_string(),
        })
    }
}

const HOOP: &str = "\
theory hoop {
  op dot/2;
  op imp/2;
  op one/0;
  point one;
  eq dot(x, y) = dot(y, x);
  eq dot(dot(x, y), z) = dot(x, dot(y, z));
  eq dot(x, one) = x;
  eq imp(x, x) = one;
  eq dot(x, imp(x, y)) = dot(y, imp(y, x));
  eq imp(dot(x, y), z) = imp(x, imp(y, z));
}";

const WHOOP: &str = "\
theory whoop {
  op dot/2;
  op imp/2;
  op one/0;
  point one;
  eq dot(x, y) = dot(y, x);
  eq dot(dot(x, y), z) = dot(x, dot(y, z));
  eq dot(x, one) = x;
  eq imp(x, x) = one;
  eq dot(x, imp(x, y)) = dot(y, imp(y, x));
  eq imp(dot(x, y), z) = imp(x, imp(y, z));
  eq imp(imp(x, y), y) = imp(imp(y, x), x);
}";

const IDEMHOOP: &str = "\
theory idemhoop {
  op dot/2;
  op imp/2;
  op one/0;
  point one;
  eq dot(x, y) = dot(y, x);
  eq dot(dot(x, y), z) = dot(x, dot(y, z));
  eq dot(x, one) = x;
  eq imp(x, x) = one;
  eq dot(x, imp(x, y)) = dot(y, imp(y, x));
  eq imp(dot(x, y), z) = imp(x, imp(y, z));
  eq dot(x, x) = x;
}";

const MV: &str = "\
theory mv {
  op oplus/2;
  op neg/1;
  op zero/0;
  point zero;
  eq oplus(oplus(x, y), z) = oplus(x, oplus(y, z));
  eq oplus(x, y) = oplus(y, x);
  eq oplus(x, zero) = x;
  eq neg(neg(x)) = x;
  eq oplus(x, neg(zero)) = neg(zero);
  eq oplus(neg(oplus(neg(x), y)), y) = oplus(neg(oplus(neg(y), x)), x);
}";

const CRNG: &str = "\
theory crng {
  op add/2;
  op mul/2;
  op neg/1;
  op zero/0;
  point zero;
  eq add(add(x, y), z) = add(x, add(y, z));
  eq add(x, y) = add(y, x);
  eq add(x, zero) = x;
  eq add(x, neg(x)) = zero;
  eq mul(mul(x, y), z) = mul(x, mul(y, z));
  eq mul(x, y) = mul(y, x);
  eq mul(x, add(y, z)) = add(mul(x, y), mul(x, z));
}";

const CRING: &str = "\
theory cring {
  op add/2;
  op mul/2;
  op neg/1;
  op zero/0;
  op one/0;
  point zero;
  eq add(add(x, y), z) = add(x, add(y, z));
  eq add(x, y) = add(y, x);
  eq add(x, zero) = x;
  eq add(x, neg(x)) = zero;
  eq mul(mul(x, y), z) = mul(x, mul(y, z));
  eq mul(x, y) = mul(y, x);
  eq mul(x, add(y, z)) = add(mul(x, y), mul(x, z));
  eq mul(x, one) = x;
}";

const BOORNG: &str = "\
theory boorng {
  op add/2;
  op mul/2;
  op neg/1;
  op zero/0;
  point zero;
  eq add(add(x, y), z) = add(x, add(y, z));
  eq add(x, y) = add(y, x);
  eq add(x, zero) = x;
  eq add(x, neg(x)) = zero;
  eq mul(mul(x, y), z) = mul(x, mul(y, z));
  eq mul(x, y) = mul(y, x);
  eq mul(x, add(y, z)) = add(mul(x, y), mul(x, z));
  eq mul(x, x) = x;
  eq add(x, x) = zero;
}";

const BOORING: &str = "\
theory booring {
  op add/2;
  op mul/2;
  op neg/1;
  op zero/0;
  op one/0;
  point zero;
  eq add(add(x, y), z) = add(x, add(y, z));
  eq add(x, y) = add(y, x);
  eq add(x, zero) = x;
  eq add(x, neg(x)) = zero;
  eq mul(mul(x, y), z) = mul(x, mul(y, z));
  eq mul(x, y) = mul(y, x);
  eq mul(x, add(y, z)) = add(mul(x, y), mul(x, z));
  eq mul(x, one) = x;
  eq mul(x, x) = x;
  eq add(x, x) = zero;
}";

const BOOALG: &str = "\
theory booalg {
  op or/2;
  op and/2;
  op not/1;
  op bot/0;
  op top/0;
  eq or(x, y) = or(y, x);
  eq and(x, y) = and(y, x);
  eq or(or(x, y), z) = or(x, or(y, z));
  eq and(and(x, y), z) = and(x, and(y, z));
  eq or(x, and(x, y)) = x;
  eq and(x, or(x, y)) = x;
  eq and(x, or(y, z)) = or(and(x, y), and(x, z));
  eq or(x, bot) = x;
  eq and(x, top) = x;
  eq or(x, not(x)) = top;
  eq and(x, not(x)) = bot;
}";

/// Named theories shipped with the library, with a few spelling aliases.
pub struct Catalog {
    theories: BTreeMap<String, Theory>,
    aliases: BTreeMap<&'static str, &'static str>,
}

impl Catalog {
    pub fn get(&self, name: &str) -> Option<&Theory> {
        self.theories
            .get(name)
            .or_else(|| self.aliases.get(name).and_then(|t| self.theories.get(*t)))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.theories.keys().map(String::as_str)
    }
}

pub fn builtins() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let mut theories = BTreeMap::new();
        for text in [
            HOOP, WHOOP, IDEMHOOP, MV, CRNG, CRING, BOORNG, BOORING, BOOALG,
        ] {
            let th = parse_theory(text).expect("built-in theory text parses");
            theories.insert(th.name.clone(), th);
        }
        let aliases = BTreeMap::from([
            ("hoops", "hoop"),
            ("whoops", "whoop"),
            ("mvalg", "mv"),
        ]);
        Catalog { theories, aliases }
    })
}

fn mv_signature() -> Signature {
    builtins().get("mv").unwrap().signature.clone()
}

fn hoop_signature() -> Signature {
    builtins().get("hoop").unwrap().signature.clone()
}

/// The chain 0 < 1 < ... < n-1 with truncated addition `x + y` and
/// reversal as negation. Needs `n >= 2` so that 0 and the top differ.
pub fn lukasiewicz_chain(n: usize) -> FiniteAlgebra {
    assert!(n >= 2, "the chain needs distinct bottom and top");
    let top = n - 1;
    let oplus: Vec<usize> = (0..n * n).map(|e| (e / n + e % n).min(top)).collect();
    let neg: Vec<usize> = (0..n).map(|x| top - x).collect();
    FiniteAlgebra::new(format!("L{n}"), "mv", mv_signature(), n, vec![oplus, neg, vec![0]])
        .expect("chain tables are well-formed")
}

/// The power-set algebra on `k` atoms as bitmasks: join is bitwise or,
/// negation is complement. Equals the k-fold power of the 2-chain.
pub fn boolean_cube(k: usize) -> FiniteAlgebra {
    let n = 1usize << k;
    let mask = n - 1;
    let oplus: Vec<usize> = (0..n * n).map(|e| (e / n) | (e % n)).collect();
    let neg: Vec<usize> = (0..n).map(|x| mask & !x).collect();
    FiniteAlgebra::new(format!("B{n}"), "mv", mv_signature(), n, vec![oplus, neg, vec![0]])
        .expect("cube tables are well-formed")
}

/// The same power set in lattice signature: or/and/not with bounds.
pub fn boolean_lattice(k: usize) -> FiniteAlgebra {
    let n = 1usize << k;
    let mask = n - 1;
    let or: Vec<usize> = (0..n * n).map(|e| (e / n) | (e % n)).collect();
    let and: Vec<usize> = (0..n * n).map(|e| (e / n) & (e % n)).collect();
    let not: Vec<usize> = (0..n).map(|x| mask & !x).collect();
    FiniteAlgebra::new(
        format!("P{n}"),
        "booalg",
        builtins().get("booalg").unwrap().signature.clone(),
        n,
        vec![or, and, not, vec![0], vec![mask]],
    )
    .expect("lattice tables are well-formed")
}

/// The chain with minimum as product and the residual that collapses to
/// the smaller argument: the idempotent counterpart of the chain above.
pub fn godel_chain(n: usize) -> FiniteAlgebra {
    assert!(n >= 1, "a chain needs at least one element");
    let top = n - 1;
    let dot: Vec<usize> = (0..n * n).map(|e| (e / n).min(e % n)).collect();
    let imp: Vec<usize> = (0..n * n)
        .map(|e| if e / n <= e % n { top } else { e % n })
        .collect();
    FiniteAlgebra::new(
        format!("G{n}"),
        "idemhoop",
        hoop_signature(),
        n,
        vec![dot, imp, vec![top]],
    )
    .expect("chain tables are well-formed")
}

/// The ring of integers modulo `m`, with unit.
pub fn cyclic_ring(m: usize) -> FiniteAlgebra {
    assert!(m >= 1, "a ring needs at least one element");
    let add: Vec<usize> = (0..m * m).map(|e| (e / m + e % m) % m).collect();
    let mul: Vec<usize> = (0..m * m).map(|e| (e / m) * (e % m) % m).collect();
    let neg: Vec<usize> = (0..m).map(|x| (m - x) % m).collect();
    FiniteAlgebra::new(
        format!("Z{m}"),
        "cring",
        builtins().get("cring").unwrap().signature.clone(),
        m,
        vec![add, mul, neg, vec![0], vec![1 % m]],
    )
    .expect("ring tables are well-formed")
}

/// Integers modulo `m` with the unit forgotten.
pub fn cyclic_rng(m: usize) -> FiniteAlgebra {
    assert!(m >= 1, "a rng needs at least one element");
    let add: Vec<usize> = (0..m * m).map(|e| (e / m + e % m) % m).collect();
    let mul: Vec<usize> = (0..m * m).map(|e| (e / m) * (e % m) % m).collect();
    let neg: Vec<usize> = (0..m).map(|x| (m - x) % m).collect();
    FiniteAlgebra::new(
        format!("Z{m}rng"),
        "crng",
        builtins().get("crng").unwrap().signature.clone(),
        m,
        vec![add, mul, neg, vec![0]],
    )
    .expect("rng tables are well-formed")
}

/// The cyclic group of order `m` with the always-zero multiplication.
pub fn zero_rng(m: usize) -> FiniteAlgebra {
    assert!(m >= 1, "a rng needs at least one element");
    let add: Vec<usize> = (0..m * m).map(|e| (e / m + e % m) % m).collect();
    let mul = vec![0usize; m * m];
    let neg: Vec<usize> = (0..m).map(|x| (m - x) % m).collect();
    FiniteAlgebra::new(
        format!("N{m}"),
        "crng",
        builtins().get("crng").unwrap().signature.clone(),
        m,
        vec![add, mul, neg, vec![0]],
    )
    .expect("rng tables are well-formed")
}

/// The one-element algebra for an arbitrary signature.
pub fn trivial_algebra(sig: Signature, theory: &str) -> FiniteAlgebra {
    let tables = sig.symbols().iter().map(|_| vec![0usize]).collect();
    FiniteAlgebra::new("triv", theory, sig, 1, tables).expect("one-element tables")
}

/// Constructs a named family member for command-line use. `None` when the
/// family is unknown or the parameter is out of range.
pub fn family(name: &str, param: usize) -> Option<FiniteAlgebra> {
    if param == 0 {
        return None;
    }
    match name {
        "lukasiewicz" | "chain" => (param >= 2).then(|| lukasiewicz_chain(param)),
        "wajsberg" => (param >= 2)
            .then(|| hoop_reduct(&lukasiewicz_chain(param)).expect("chains carry the hoop ops")),
        "godel" => Some(godel_chain(param)),
        "boolean_cube" | "cube" => (param <= 6).then(|| boolean_cube(param)),
        "boolean_lattice" => (param <= 6).then(|| boolean_lattice(param)),
        "cyclic_ring" => Some(cyclic_ring(param)),
        "cyclic_rng" => Some(cyclic_rng(param)),
        "zero_rng" => Some(zero_rng(param)),
        _ => None,
    }
}

pub fn family_names() -> &'static [&'static str] {
    &[
        "lukasiewicz",
        "wajsberg",
        "godel",
        "boolean_cube",
        "boolean_lattice",
        "cyclic_ring",
        "cyclic_rng",
        "zero_rng",
    ]
}

// Derived operations on algebras in the oplus/neg/zero signature. These
// panic when the signature is missing; callers validate membership first.

pub fn mv_zero(a: &FiniteAlgebra) -> usize {
    a.constant("zero").expect("oplus/neg/zero signature")
}

pub fn mv_one(a: &FiniteAlgebra) -> usize {
    a.apply("neg", &[mv_zero(a)])
}

pub fn mv_dot(a: &FiniteAlgebra, x: usize, y: usize) -> usize {
    let nx = a.apply("neg", &[x]);
    let ny = a.apply("neg", &[y]);
    a.apply("neg", &[a.apply("oplus", &[nx, ny])])
}

pub fn mv_imp(a: &FiniteAlgebra, x: usize, y: usize) -> usize {
    a.apply("oplus", &[a.apply("neg", &[x]), y])
}

pub fn mv_join(a: &FiniteAlgebra, x: usize, y: usize) -> usize {
    let t = a.apply("neg", &[a.apply("oplus", &[a.apply("neg", &[x]), y])]);
    a.apply("oplus", &[t, y])
}

pub fn mv_meet(a: &FiniteAlgebra, x: usize, y: usize) -> usize {
    mv_dot(a, x, mv_imp(a, x, y))
}

/// The algebra order: `x <= y` iff `x` implies `y` at the top.
pub fn mv_leq(a: &FiniteAlgebra, x: usize, y: usize) -> bool {
    mv_imp(a, x, y) == mv_one(a)
}

/// The natural order of a dot/imp/one algebra.
pub fn hoop_leq(h: &FiniteAlgebra, x: usize, y: usize) -> bool {
    h.apply("imp", &[x, y]) == h.constant("one").expect("dot/imp/one signature")
}

/// The meet `x · (x -> y)`; a semilattice meet exactly in the idempotent
/// case, and in general the common value of both symmetrised products.
pub fn hoop_meet(h: &FiniteAlgebra, x: usize, y: usize) -> usize {
    h.apply("dot", &[x, h.apply("imp", &[x, y])])
}

/// Reduct of an oplus/neg/zero algebra to dot/imp/one.
pub fn hoop_reduct(a: &FiniteAlgebra) -> Result<FiniteAlgebra, AlgebraError> {
    if !a.interprets(&mv_signature()) {
        return Err(AlgebraError::SignatureMismatch);
    }
    let n = a.size();
    let dot: Vec<usize> = (0..n * n).map(|e| mv_dot(a, e / n, e % n)).collect();
    let imp: Vec<usize> = (0..n * n).map(|e| mv_imp(a, e / n, e % n)).collect();
    FiniteAlgebra::new(
        format!("{}_hoop", a.name()),
        "whoop",
        hoop_signature(),
        n,
        vec![dot, imp, vec![mv_one(a)]],
    )
}

/// The same carrier with the roles of the two monoids swapped: oplus
/// becomes the dot product and zero becomes one. Negation is an
/// isomorphism onto this dual.
pub fn negation_dual(a: &FiniteAlgebra) -> Result<FiniteAlgebra, AlgebraError> {
    if !a.interprets(&mv_signature()) {
        return Err(AlgebraError::SignatureMismatch);
    }
    let n = a.size();
    let oplus: Vec<usize> = (0..n * n).map(|e| mv_dot(a, e / n, e % n)).collect();
    let neg: Vec<usize> = (0..n).map(|x| a.apply("neg", &[x])).collect();
    FiniteAlgebra::new(
        format!("{}_dual", a.name()),
        "mv",
        mv_signature(),
        n,
        vec![oplus, neg, vec![mv_one(a)]],
    )
}

/// Symmetric difference and meet turn a lattice or/and/not/bot/top into a
/// ring with the same carrier.
pub fn ring_from_boolean_algebra(b: &FiniteAlgebra) -> Result<FiniteAlgebra, ModelError> {
    let booalg = &builtins().get("booalg").unwrap().signature;
    if !b.interprets(booalg) {
        return Err(AlgebraError::SignatureMismatch.into());
    }
    require(b, "booalg")?;
    let n = b.size();
    let sym_diff = |x: usize, y: usize| {
        let l = b.apply("and", &[x, b.apply("not", &[y])]);
        let r = b.apply("and", &[b.apply("not", &[x]), y]);
        b.apply("or", &[l, r])
    };
    let add: Vec<usize> = (0..n * n).map(|e| sym_diff(e / n, e % n)).collect();
    let mul: Vec<usize> = (0..n * n).map(|e| b.apply("and", &[e / n, e % n])).collect();
    let neg: Vec<usize> = (0..n).collect();
    FiniteAlgebra::new(
        format!("{}_ring", b.name()),
        "booring",
        builtins().get("booring").unwrap().signature.clone(),
        n,
        vec![
            add,
            mul,
            neg,
            vec![b.constant("bot").unwrap()],
            vec![b.constant("top").unwrap()],
        ],
    )
    .map_err(ModelError::from)
}

/// `x or y = x + y + xy`, `not x = 1 + x`: recovers the lattice from an
/// idempotent ring with unit.
pub fn boolean_algebra_from_ring(r: &FiniteAlgebra) -> Result<FiniteAlgebra, ModelError> {
    let booring = &builtins().get("booring").unwrap().signature;
    if !r.interprets(booring) {
        return Err(AlgebraError::SignatureMismatch.into());
    }
    require(r, "booring")?;
    let n = r.size();
    let one = r.constant("one").unwrap();
    let join = |x: usize, y: usize| {
        let xy = r.apply("mul", &[x, y]);
        r.apply("add", &[r.apply("add", &[x, y]), xy])
    };
    let or: Vec<usize> = (0..n * n).map(|e| join(e / n, e % n)).collect();
    let and: Vec<usize> = (0..n * n).map(|e| r.apply("mul", &[e / n, e % n])).collect();
    let not: Vec<usize> = (0..n).map(|x| r.apply("add", &[one, x])).collect();
    FiniteAlgebra::new(
        format!("{}_balg", r.name()),
        "booalg",
        builtins().get("booalg").unwrap().signature.clone(),
        n,
        vec![or, and, not, vec![r.constant("zero").unwrap()], vec![one]],
    )
    .map_err(ModelError::from)
}

/// Flat row-major tables for the operations an oplus/neg/zero algebra
/// determines: the top constant, the dual product, the residual, join and
/// meet.
pub struct DerivedMvOps {
    pub one: usize,
    pub dot: Vec<usize>,
    pub imp: Vec<usize>,
    pub join: Vec<usize>,
    pub meet: Vec<usize>,
    pub size: usize,
}

/// Computes the derived tables pointwise and verifies the equations that
/// pin them down: `neg(one) = zero`, `x oplus one = one`,
/// `x oplus neg(x) = one` and `neg(x) = imp(x, zero)`.
pub fn derived_mv_ops(a: &FiniteAlgebra) -> Result<DerivedMvOps, ModelError> {
    require(a, "mv")?;
    let n = a.size();
    let zero = mv_zero(a);
    let one = mv_one(a);
    let fail = |equation, at| ModelError::DerivedEquation {
        algebra: a.name().to_string(),
        equation,
        at,
    };
    if a.apply("neg", &[one]) != zero {
        return Err(fail("neg(one) = zero", vec![]));
    }
    for x in a.elements() {
        if a.apply("oplus", &[x, one]) != one {
            return Err(fail("oplus(x, one) = one", vec![x]));
        }
        if a.apply("oplus", &[x, a.apply("neg", &[x])]) != one {
            return Err(fail("oplus(x, neg(x)) = one", vec![x]));
        }
        if mv_imp(a, x, zero) != a.apply("neg", &[x]) {
            return Err(fail("imp(x, zero) = neg(x)", vec![x]));
        }
    }
    Ok(DerivedMvOps {
        one,
        dot: (0..n * n).map(|e| mv_dot(a, e / n, e % n)).collect(),
        imp: (0..n * n).map(|e| mv_imp(a, e / n, e % n)).collect(),
        join: (0..n * n).map(|e| mv_join(a, e / n, e % n)).collect(),
        meet: (0..n * n).map(|e| mv_meet(a, e / n, e % n)).collect(),
        size: n,
    })
}

/// Verifies exhaustively that the derived join and meet give a bounded
/// distributive lattice with top `neg(zero)` and bottom `zero`.
pub fn check_mv_lattice(a: &FiniteAlgebra) -> Result<(), ModelError> {
    let ops = derived_mv_ops(a)?;
    let n = ops.size;
    let join = |x: usize, y: usize| ops.join[x * n + y];
    let meet = |x: usize, y: usize| ops.meet[x * n + y];
    let zero = mv_zero(a);
    let fail = |law, at| {
        Err(ModelError::LatticeLaw {
            algebra: a.name().to_string(),
            law,
            at,
        })
    };
    for x in 0..n {
        if join(x, zero) != x {
            return fail("join(x, bottom) = x", vec![x]);
        }
        if meet(x, ops.one) != x {
            return fail("meet(x, top) = x", vec![x]);
        }
        for y in 0..n {
            if join(x, y) != join(y, x) {
                return fail("join commutes", vec![x, y]);
            }
            if meet(x, y) != meet(y, x) {
                return fail("meet commutes", vec![x, y]);
            }
            if join(x, meet(x, y)) != x {
                return fail("join absorbs meet", vec![x, y]);
            }
            if meet(x, join(x, y)) != x {
                return fail("meet absorbs join", vec![x, y]);
            }
            for z in 0..n {
                if join(join(x, y), z) != join(x, join(y, z)) {
                    return fail("join associates", vec![x, y, z]);
                }
                if meet(meet(x, y), z) != meet(x, meet(y, z)) {
                    return fail("meet associates", vec![x, y, z]);
                }
                if meet(x, join(y, z)) != join(meet(x, y), meet(x, z)) {
                    return fail("meet distributes over join", vec![x, y, z]);
                }
                if join(x, meet(y, z)) != meet(join(x, y), join(x, z)) {
                    return fail("join distributes over meet", vec![x, y, z]);
                }
            }
        }
    }
    Ok(())
}

/// The order `x <= y iff imp(x, y) = one`, returned as the list of related
/// pairs. Verifies on every pair that the four equivalent characterizations
/// agree: lattice agreement `join(x, y) = y`, an additive witness
/// `x oplus z = y`, the residual condition, and `dot(x, neg(y)) = zero`.
pub fn mv_order(a: &FiniteAlgebra) -> Result<Vec<(usize, usize)>, ModelError> {
    let ops = derived_mv_ops(a)?;
    let n = ops.size;
    let zero = mv_zero(a);
    let mut rel = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let lattice = ops.join[x * n + y] == y;
            let witness = (0..n).any(|z| a.apply("oplus", &[x, z]) == y);
            let residual = ops.imp[x * n + y] == ops.one;
            let annihilation = mv_dot(a, x, a.apply("neg", &[y])) == zero;
            let mismatch = |left, right| {
                Err(ModelError::OrderMismatch {
                    algebra: a.name().to_string(),
                    left,
                    right,
                    x,
                    y,
                })
            };
            if lattice != residual {
                return mismatch("join(x, y) = y", "imp(x, y) = one");
            }
            if witness != residual {
                return mismatch("x oplus z = y for some z", "imp(x, y) = one");
            }
            if annihilation != residual {
                return mismatch("dot(x, neg(y)) = zero", "imp(x, y) = one");
            }
            if residual {
                rel.push((x, y));
            }
        }
    }
    Ok(rel)
}

/// The natural order `x <= y iff imp(x, y) = one` of a dot/imp/one algebra.
/// Verifies on every pair the divisibility characterization — some `u` with
/// `x = dot(u, y)` — and that `u = imp(y, x)` always serves as the witness.
pub fn hoop_order(h: &FiniteAlgebra) -> Result<Vec<(usize, usize)>, ModelError> {
    require(h, "hoop")?;
    let n = h.size();
    let one = h.constant("one").expect("hoop signature");
    let mut rel = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let residual = h.apply("imp", &[x, y]) == one;
            let divisible = (0..n).any(|u| h.apply("dot", &[u, y]) == x);
            let mismatch = |left, right| {
                Err(ModelError::OrderMismatch {
                    algebra: h.name().to_string(),
                    left,
                    right,
                    x,
                    y,
                })
            };
            if residual != divisible {
                return mismatch("imp(x, y) = one", "x = dot(u, y) for some u");
            }
            if residual {
                if h.apply("dot", &[h.apply("imp", &[y, x]), y]) != x {
                    return mismatch("imp(x, y) = one", "x = dot(imp(y, x), y)");
                }
                rel.push((x, y));
            }
        }
    }
    Ok(rel)
}

/// The idempotent case: `dot` is a semilattice meet with `imp` as its
/// residual. Verifies the residuation equivalence
/// `meet(x, y) <= z iff x <= imp(y, z)` exhaustively and returns the meet
/// table (the membership check already covers the semilattice laws).
pub fn brouwerian_meet(h: &FiniteAlgebra) -> Result<Vec<usize>, ModelError> {
    require(h, "idemhoop")?;
    let n = h.size();
    let one = h.constant("one").expect("hoop signature");
    let leq = |x: usize, y: usize| h.apply("imp", &[x, y]) == one;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let meet_below = leq(h.apply("dot", &[x, y]), z);
                let residual = leq(x, h.apply("imp", &[y, z]));
                if meet_below != residual {
                    return Err(ModelError::Residuation {
                        algebra: h.name().to_string(),
                        x,
                        y,
                        z,
                    });
                }
            }
        }
    }
    Ok((0..n * n).map(|e| h.apply("dot", &[e / n, e % n])).collect())
}

/// Rewrites a dot/imp/one term into the oplus/neg/zero signature by the
/// defining translations: the product becomes a negated sum of negations,
/// the residual an implication, and the unit the negated zero.
pub fn hoop_term_in_mv(t: &Term) -> Term {
    t.map_apps(&|symbol, mut args| match symbol {
        "dot" => {
            let b = Term::app("neg", vec![args.pop().expect("binary")]);
            let a = Term::app("neg", vec![args.pop().expect("binary")]);
            Term::app("neg", vec![Term::app("oplus", vec![a, b])])
        }
        "imp" => {
            let b = args.pop().expect("binary");
            let a = Term::app("neg", vec![args.pop().expect("binary")]);
            Term::app("oplus", vec![a, b])
        }
        "one" => Term::app("neg", vec![Term::app("zero", vec![])]),
        other => Term::App(other.to_string(), args),
    })
}
