//! Finite algebras as total operation tables over a carrier `{0..n-1}`,
//! with the categorical toolkit used at finite scale: homomorphisms,
//! subalgebras, products, pullbacks, congruences, quotients and kernels.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::term::Signature;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("carrier must be non-empty")]
    EmptyCarrier,
    #[error("missing table for symbol `{0}`")]
    MissingTable(String),
    #[error("table for `{symbol}` has {found} entries, expected {expected}")]
    TableSize {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("table for `{symbol}` contains entry {value} outside the carrier of size {size}")]
    TableEntry {
        symbol: String,
        value: usize,
        size: usize,
    },
    #[error("element {element} is outside the carrier of size {size}")]
    OutOfRange { element: usize, size: usize },
    #[error("signatures do not match")]
    SignatureMismatch,
    #[error("codomains do not match")]
    CodomainMismatch,
    #[error("domain or codomain does not match")]
    CompositionMismatch,
    #[error("map has {found} entries, expected {expected}")]
    MapLength { expected: usize, found: usize },
    #[error("map does not preserve `{symbol}` at arguments {args:?}")]
    NotAHomomorphism { symbol: String, args: Vec<usize> },
    #[error("subset is not closed under `{symbol}` at arguments {args:?} (result {result})")]
    NotClosed {
        symbol: String,
        args: Vec<usize>,
        result: usize,
    },
    #[error("relation is not compatible with `{symbol}` at {left:?} ~ {right:?}")]
    NotCompatible {
        symbol: String,
        left: Vec<usize>,
        right: Vec<usize>,
    },
    #[error("representative vector is not in canonical form")]
    BadRepresentatives,
    #[error("section is not a section of the projection (p(s({0})) != {0})")]
    NotASection(usize),
}

/// A finite algebra: a signature, a carrier `{0..size-1}`, and one total
/// operation table per symbol, stored flat in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAlgebra {
    name: String,
    theory: String,
    signature: Signature,
    size: usize,
    tables: Vec<Vec<usize>>,
}

impl FiniteAlgebra {
    pub fn new(
        name: impl Into<String>,
        theory: impl Into<String>,
        signature: Signature,
        size: usize,
        tables: Vec<Vec<usize>>,
    ) -> Result<Self, AlgebraError> {
        if size == 0 {
            return Err(AlgebraError::EmptyCarrier);
        }
        if tables.len() != signature.symbols().len() {
            return Err(AlgebraError::MissingTable(
                signature
                    .symbols()
                    .get(tables.len())
                    .map(|(n, _)| n.clone())
                    .unwrap_or_default(),
            ));
        }
        for ((symbol, arity), table) in signature.symbols().iter().zip(&tables) {
            let expected = size.pow(*arity as u32);
            if table.len() != expected {
                return Err(AlgebraError::TableSize {
                    symbol: symbol.clone(),
                    expected,
                    found: table.len(),
                });
            }
            if let Some(&value) = table.iter().find(|&&v| v >= size) {
                return Err(AlgebraError::TableEntry {
                    symbol: symbol.clone(),
                    value,
                    size,
                });
            }
        }
        Ok(FiniteAlgebra {
            name: name.into(),
            theory: theory.into(),
            signature,
            size,
            tables,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Label of the theory this algebra is declared against.
    pub fn theory(&self) -> &str {
        &self.theory
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn arity(&self, symbol: &str) -> Option<usize> {
        self.signature.arity(symbol)
    }

    pub fn table(&self, symbol: &str) -> Option<&[usize]> {
        self.signature
            .symbols()
            .iter()
            .position(|(n, _)| n == symbol)
            .map(|i| self.tables[i].as_slice())
    }

    /// Applies `symbol` to `args`. Panics if the symbol is missing or the
    /// argument count is wrong; callers validate through the signature.
    pub fn apply(&self, symbol: &str, args: &[usize]) -> usize {
        let idx = args.iter().fold(0, |acc, &a| acc * self.size + a);
        self.table(symbol).expect("symbol not interpreted")[idx]
    }

    pub fn constant(&self, symbol: &str) -> Option<usize> {
        match self.arity(symbol) {
            Some(0) => Some(self.apply(symbol, &[])),
            _ => None,
        }
    }

    /// True when every symbol of `sig` is interpreted here with the same
    /// arity.
    pub fn interprets(&self, sig: &Signature) -> bool {
        sig.symbols()
            .iter()
            .all(|(n, a)| self.signature.arity(n) == Some(*a))
    }

    /// Same carrier size and identical tables for all symbols, signatures
    /// compatible. Names are ignored.
    pub fn same_tables(&self, other: &FiniteAlgebra) -> bool {
        self.size == other.size
            && self.signature.compatible(&other.signature)
            && self
                .signature
                .symbols()
                .iter()
                .all(|(n, _)| self.table(n) == other.table(n))
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Copy with one table replaced. Used to build deliberately broken
    /// variants in tests and negative checks.
    pub fn with_table(&self, symbol: &str, table: Vec<usize>) -> Result<Self, AlgebraError> {
        let pos = self
            .signature
            .symbols()
            .iter()
            .position(|(n, _)| n == symbol)
            .ok_or_else(|| AlgebraError::MissingTable(symbol.to_string()))?;
        let mut tables = self.tables.clone();
        tables[pos] = table;
        FiniteAlgebra::new(
            self.name.clone(),
            self.theory.clone(),
            self.signature.clone(),
            self.size,
            tables,
        )
    }

    /// Restriction to a subset of the signature, keeping the carrier.
    pub fn reduct(
        &self,
        name: impl Into<String>,
        theory: impl Into<String>,
        symbols: &[&str],
    ) -> Result<Self, AlgebraError> {
        let mut sig = Vec::new();
        let mut tables = Vec::new();
        for &s in symbols {
            let arity = self
                .arity(s)
                .ok_or_else(|| AlgebraError::MissingTable(s.to_string()))?;
            sig.push((s.to_string(), arity));
            tables.push(self.table(s).unwrap().to_vec());
        }
        let signature = Signature::new(sig).expect("reduct of a valid signature");
        FiniteAlgebra::new(name, theory, signature, self.size, tables)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut ops = serde_json::Map::new();
        for (symbol, _) in self.signature.symbols() {
            ops.insert(
                symbol.clone(),
                serde_json::Value::Array(
                    self.table(symbol)
                        .unwrap()
                        .iter()
                        .map(|&v| serde_json::Value::from(v))
                        .collect(),
                ),
            );
        }
        serde_json::json!({
            "name": self.name,
            "theory": self.theory,
            "size": self.size,
            "ops": serde_json::Value::Object(ops),
        })
    }
}

fn write_nested(
    f: &mut fmt::Formatter<'_>,
    table: &[usize],
    size: usize,
    arity: usize,
) -> fmt::Result {
    if arity == 0 {
        return write!(f, "{}", table[0]);
    }
    write!(f, "[")?;
    let chunk = table.len() / size;
    for i in 0..size {
        if i > 0 {
            write!(f, ",")?;
        }
        if arity == 1 {
            write!(f, "{}", table[i])?;
        } else {
            write_nested(f, &table[i * chunk..(i + 1) * chunk], size, arity - 1)?;
        }
    }
    write!(f, "]")
}

impl fmt::Display for FiniteAlgebra {
    /// Canonical algebra text format:
    /// `algebra NAME : THEORY { size N; op name = [nested rows]; }`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "algebra {} : {} {{", self.name, self.theory)?;
        writeln!(f, "  size {};", self.size)?;
        for (i, (symbol, arity)) in self.signature.symbols().iter().enumerate() {
            write!(f, "  op {symbol} = ")?;
            write_nested(f, &self.tables[i], self.size, *arity)?;
            writeln!(f, ";")?;
        }
        write!(f, "}}")
    }
}

/// A structure-preserving total map between finite algebras of compatible
/// signatures. Preservation is checked on construction, on every tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    dom: Arc<FiniteAlgebra>,
    cod: Arc<FiniteAlgebra>,
    map: Vec<usize>,
}

impl Homomorphism {
    pub fn new(
        dom: Arc<FiniteAlgebra>,
        cod: Arc<FiniteAlgebra>,
        map: Vec<usize>,
    ) -> Result<Self, AlgebraError> {
        if !dom.signature.compatible(&cod.signature) {
            return Err(AlgebraError::SignatureMismatch);
        }
        if map.len() != dom.size {
            return Err(AlgebraError::MapLength {
                expected: dom.size,
                found: map.len(),
            });
        }
        if let Some(&e) = map.iter().find(|&&e| e >= cod.size) {
            return Err(AlgebraError::OutOfRange {
                element: e,
                size: cod.size,
            });
        }
        for (symbol, arity) in dom.signature.symbols() {
            let mut args = vec![0usize; *arity];
            loop {
                let image: Vec<usize> = args.iter().map(|&a| map[a]).collect();
                if map[dom.apply(symbol, &args)] != cod.apply(symbol, &image) {
                    return Err(AlgebraError::NotAHomomorphism {
                        symbol: symbol.clone(),
                        args,
                    });
                }
                if !crate::term::next_assignment(&mut args, dom.size) {
                    break;
                }
            }
        }
        Ok(Homomorphism { dom, cod, map })
    }

    pub fn identity(alg: &Arc<FiniteAlgebra>) -> Self {
        Homomorphism {
            dom: Arc::clone(alg),
            cod: Arc::clone(alg),
            map: (0..alg.size).collect(),
        }
    }

    /// Skips the preservation check. Only for tests that need a
    /// deliberately broken map to exercise a failure path.
    #[cfg(test)]
    pub(crate) fn unchecked(
        dom: Arc<FiniteAlgebra>,
        cod: Arc<FiniteAlgebra>,
        map: Vec<usize>,
    ) -> Self {
        Homomorphism { dom, cod, map }
    }

    pub fn dom(&self) -> &Arc<FiniteAlgebra> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FiniteAlgebra> {
        &self.cod
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, e: usize) -> usize {
        self.map[e]
    }

    /// Composition `g ∘ self` (apply `self` first).
    pub fn then(&self, g: &Homomorphism) -> Result<Homomorphism, AlgebraError> {
        if !self.cod.same_tables(&g.dom) {
            return Err(AlgebraError::CompositionMismatch);
        }
        let map = self.map.iter().map(|&e| g.map[e]).collect();
        Ok(Homomorphism {
            dom: Arc::clone(&self.dom),
            cod: Arc::clone(&g.cod),
            map,
        })
    }

    pub fn image(&self) -> BTreeSet<usize> {
        self.map.iter().copied().collect()
    }

    /// Preimage of a codomain element; for pointed codomains this is the
    /// kernel class at that element.
    pub fn preimage(&self, at: usize) -> Vec<usize> {
        (0..self.dom.size).filter(|&e| self.map[e] == at).collect()
    }

    pub fn is_injective(&self) -> bool {
        self.image().len() == self.dom.size
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.cod.size
    }

    pub fn is_bijective(&self) -> bool {
        self.dom.size == self.cod.size && self.is_injective()
    }

    pub fn inverse(&self) -> Option<Homomorphism> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0usize; self.cod.size];
        for (e, &img) in self.map.iter().enumerate() {
            inv[img] = e;
        }
        Some(Homomorphism {
            dom: Arc::clone(&self.cod),
            cod: Arc::clone(&self.dom),
            map: inv,
        })
    }
}

/// Preimage `h^{-1}(at)`, sorted ascending.
pub fn kernel_class(h: &Homomorphism, at: usize) -> Vec<usize> {
    h.preimage(at)
}

/// A congruence stored in least-representative normal form:
/// `repr[e]` is the smallest element of the block of `e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    alg: Arc<FiniteAlgebra>,
    repr: Vec<usize>,
}

impl Congruence {
    pub fn identity(alg: &Arc<FiniteAlgebra>) -> Self {
        Congruence {
            alg: Arc::clone(alg),
            repr: (0..alg.size).collect(),
        }
    }

    pub fn full(alg: &Arc<FiniteAlgebra>) -> Self {
        Congruence {
            alg: Arc::clone(alg),
            repr: vec![0; alg.size],
        }
    }

    /// Builds a congruence from a representative vector, verifying the
    /// canonical form and compatibility with every operation.
    pub fn from_repr(alg: &Arc<FiniteAlgebra>, repr: Vec<usize>) -> Result<Self, AlgebraError> {
        if repr.len() != alg.size {
            return Err(AlgebraError::MapLength {
                expected: alg.size,
                found: repr.len(),
            });
        }
        for (e, &r) in repr.iter().enumerate() {
            if r > e || repr[r] != r {
                return Err(AlgebraError::BadRepresentatives);
            }
        }
        let c = Congruence {
            alg: Arc::clone(alg),
            repr,
        };
        c.check_compatible()?;
        Ok(c)
    }

    fn check_compatible(&self) -> Result<(), AlgebraError> {
        let n = self.alg.size;
        for (symbol, arity) in self.alg.signature.symbols() {
            if *arity == 0 {
                continue;
            }
            let mut left = vec![0usize; *arity];
            loop {
                let mut right = vec![0usize; *arity];
                loop {
                    if left
                        .iter()
                        .zip(&right)
                        .all(|(&a, &b)| self.repr[a] == self.repr[b])
                        && self.repr[self.alg.apply(symbol, &left)]
                            != self.repr[self.alg.apply(symbol, &right)]
                    {
                        return Err(AlgebraError::NotCompatible {
                            symbol: symbol.clone(),
                            left,
                            right,
                        });
                    }
                    if !crate::term::next_assignment(&mut right, n) {
                        break;
                    }
                }
                if !crate::term::next_assignment(&mut left, n) {
                    break;
                }
            }
        }
        Ok(())
    }

    pub fn alg(&self) -> &Arc<FiniteAlgebra> {
        &self.alg
    }

    pub fn repr(&self) -> &[usize] {
        &self.repr
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.repr[a] == self.repr[b]
    }

    /// The block containing `e`, sorted ascending.
    pub fn class_of(&self, e: usize) -> Vec<usize> {
        let r = self.repr[e];
        (0..self.alg.size).filter(|&x| self.repr[x] == r).collect()
    }

    /// All blocks, ordered by their least element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut reps: Vec<usize> = self.repr.to_vec();
        reps.sort_unstable();
        reps.dedup();
        reps.into_iter().map(|r| self.class_of(r)).collect()
    }

    pub fn num_blocks(&self) -> usize {
        let mut reps: Vec<usize> = self.repr.to_vec();
        reps.sort_unstable();
        reps.dedup();
        reps.len()
    }

    /// Index of the block of `e` in the `blocks()` ordering, i.e. the
    /// number of distinct representatives below `e`'s representative.
    pub fn block_index(&self, e: usize) -> usize {
        let r = self.repr[e];
        (0..r).filter(|&i| self.repr[i] == i).count()
    }
}

/// Least congruence containing the given pairs: the reflexive-symmetric-
/// transitive closure, repeatedly saturated under every operation until
/// stable.
pub fn generate_congruence(
    alg: &Arc<FiniteAlgebra>,
    pairs: &[(usize, usize)],
) -> Result<Congruence, AlgebraError> {
    let n = alg.size;
    for &(a, b) in pairs {
        for e in [a, b] {
            if e >= n {
                return Err(AlgebraError::OutOfRange {
                    element: e,
                    size: n,
                });
            }
        }
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut e: usize) -> usize {
        while parent[e] != e {
            parent[e] = parent[parent[e]];
            e = parent[e];
        }
        e
    }
    fn union(parent: &mut [usize], a: usize, b: usize) -> bool {
        let ra = find(parent, a);
        let rb = find(parent, b);
        if ra == rb {
            return false;
        }
        // attach the larger root so representatives stay minimal
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        parent[hi] = lo;
        true
    }
    for &(a, b) in pairs {
        union(&mut parent, a, b);
    }
    // saturate: componentwise-related argument tuples force related outputs
    loop {
        let mut changed = false;
        for (symbol, arity) in alg.signature.symbols() {
            if *arity == 0 {
                continue;
            }
            let mut left = vec![0usize; *arity];
            loop {
                let mut right = vec![0usize; *arity];
                loop {
                    let related = {
                        left.iter().zip(&right).all(|(&a, &b)| {
                            find(&mut parent, a) == find(&mut parent, b)
                        })
                    };
                    if related {
                        let out_l = alg.apply(symbol, &left);
                        let out_r = alg.apply(symbol, &right);
                        if union(&mut parent, out_l, out_r) {
                            changed = true;
                        }
                    }
                    if !crate::term::next_assignment(&mut right, n) {
                        break;
                    }
                }
                if !crate::term::next_assignment(&mut left, n) {
                    break;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let repr: Vec<usize> = (0..n).map(|e| find(&mut parent, e)).collect();
    Ok(Congruence {
        alg: Arc::clone(alg),
        repr,
    })
}

/// All congruences of the algebra, by brute force over set partitions with
/// a compatibility filter. Intended for small carriers (size <= 6 or so).
pub fn enumerate_congruences(alg: &Arc<FiniteAlgebra>) -> Vec<Congruence> {
    let n = alg.size;
    let mut out = Vec::new();
    // restricted growth strings enumerate each set partition once
    let mut rgs = vec![0usize; n];
    loop {
        let mut repr = vec![0usize; n];
        let mut first_with = vec![usize::MAX; n];
        for (e, &b) in rgs.iter().enumerate() {
            if first_with[b] == usize::MAX {
                first_with[b] = e;
            }
            repr[e] = first_with[b];
        }
        let cand = Congruence {
            alg: Arc::clone(alg),
            repr,
        };
        if cand.check_compatible().is_ok() {
            out.push(cand);
        }
        // next RGS: rgs[i] may rise to 1 + max(rgs[..i])
        let mut i = n;
        loop {
            if i == 1 {
                i = 0;
                break;
            }
            i -= 1;
            let max_prev = rgs[..i].iter().copied().max().unwrap_or(0);
            if rgs[i] <= max_prev {
                rgs[i] += 1;
                for slot in rgs[i + 1..].iter_mut() {
                    *slot = 0;
                }
                break;
            }
            rgs[i] = 0;
        }
        if i == 0 {
            break;
        }
    }
    out.sort_by(|a, b| a.repr.cmp(&b.repr));
    out
}

/// Quotient algebra together with the canonical surjection.
pub fn quotient(
    alg: &Arc<FiniteAlgebra>,
    c: &Congruence,
) -> (Arc<FiniteAlgebra>, Homomorphism) {
    assert!(
        c.alg.same_tables(alg),
        "congruence belongs to a different algebra"
    );
    let blocks = c.blocks();
    let size = blocks.len();
    let class_index: Vec<usize> = (0..alg.size).map(|e| c.block_index(e)).collect();
    let mut tables = Vec::new();
    for (symbol, arity) in alg.signature.symbols() {
        let mut table = Vec::with_capacity(size.pow(*arity as u32));
        let mut args = vec![0usize; *arity];
        loop {
            let rep_args: Vec<usize> = args.iter().map(|&b| blocks[b][0]).collect();
            table.push(class_index[alg.apply(symbol, &rep_args)]);
            if !crate::term::next_assignment(&mut args, size) {
                break;
            }
        }
        tables.push(table);
    }
    let q = Arc::new(
        FiniteAlgebra::new(
            format!("{}/~", alg.name),
            alg.theory.clone(),
            alg.signature.clone(),
            size,
            tables,
        )
        .expect("quotient tables are well-formed"),
    );
    let surjection = Homomorphism {
        dom: Arc::clone(alg),
        cod: Arc::clone(&q),
        map: class_index,
    };
    (q, surjection)
}

/// Binary product with row-major carrier pairing `(i, j) -> i * |b| + j`
/// and the two projections.
pub struct Product {
    pub algebra: Arc<FiniteAlgebra>,
    pub left: Homomorphism,
    pub right: Homomorphism,
}

pub fn product(a: &Arc<FiniteAlgebra>, b: &Arc<FiniteAlgebra>) -> Result<Product, AlgebraError> {
    if !a.signature.compatible(&b.signature) {
        return Err(AlgebraError::SignatureMismatch);
    }
    let size = a.size * b.size;
    let decode = |e: usize| (e / b.size, e % b.size);
    let mut tables = Vec::new();
    for (symbol, arity) in a.signature.symbols() {
        let mut table = Vec::with_capacity(size.pow(*arity as u32));
        let mut args = vec![0usize; *arity];
        loop {
            let l: Vec<usize> = args.iter().map(|&e| decode(e).0).collect();
            let r: Vec<usize> = args.iter().map(|&e| decode(e).1).collect();
            table.push(a.apply(symbol, &l) * b.size + b.apply(symbol, &r));
            if !crate::term::next_assignment(&mut args, size) {
                break;
            }
        }
        tables.push(table);
    }
    let theory = if a.theory == b.theory {
        a.theory.clone()
    } else {
        String::new()
    };
    let p = Arc::new(FiniteAlgebra::new(
        format!("({}x{})", a.name, b.name),
        theory,
        a.signature.clone(),
        size,
        tables,
    )?);
    let left = Homomorphism {
        dom: Arc::clone(&p),
        cod: Arc::clone(a),
        map: (0..size).map(|e| decode(e).0).collect(),
    };
    let right = Homomorphism {
        dom: Arc::clone(&p),
        cod: Arc::clone(b),
        map: (0..size).map(|e| decode(e).1).collect(),
    };
    Ok(Product {
        algebra: p,
        left,
        right,
    })
}

/// Pullback of `f` and `g` over their common codomain: the subalgebra of
/// the product on the pairs where `f` and `g` agree.
pub struct Pullback {
    pub algebra: Arc<FiniteAlgebra>,
    /// Carrier decoding: element `e` of the pullback is the pair
    /// `pairs[e] = (a, b)` with `f(a) = g(b)`.
    pub pairs: Vec<(usize, usize)>,
    pub to_left: Homomorphism,
    pub to_right: Homomorphism,
}

pub fn pullback(f: &Homomorphism, g: &Homomorphism) -> Result<Pullback, AlgebraError> {
    if !f.cod.same_tables(&g.cod) {
        return Err(AlgebraError::CodomainMismatch);
    }
    if !f.dom.signature.compatible(&g.dom.signature) {
        return Err(AlgebraError::SignatureMismatch);
    }
    let mut pairs = Vec::new();
    let mut index = vec![usize::MAX; f.dom.size * g.dom.size];
    for a in 0..f.dom.size {
        for b in 0..g.dom.size {
            if f.map[a] == g.map[b] {
                index[a * g.dom.size + b] = pairs.len();
                pairs.push((a, b));
            }
        }
    }
    let size = pairs.len();
    if size == 0 {
        // the agreement set always contains the image of every constant
        // pair only when signatures have constants; an empty pullback
        // cannot be represented as a finite algebra with carrier {0..n-1}
        return Err(AlgebraError::EmptyCarrier);
    }
    let mut tables = Vec::new();
    for (symbol, arity) in f.dom.signature.symbols() {
        let mut table = Vec::with_capacity(size.pow(*arity as u32));
        let mut args = vec![0usize; *arity];
        loop {
            let l: Vec<usize> = args.iter().map(|&e| pairs[e].0).collect();
            let r: Vec<usize> = args.iter().map(|&e| pairs[e].1).collect();
            let out = index[f.dom.apply(symbol, &l) * g.dom.size + g.dom.apply(symbol, &r)];
            debug_assert_ne!(out, usize::MAX, "pullback carrier must be closed");
            table.push(out);
            if !crate::term::next_assignment(&mut args, size) {
                break;
            }
        }
        tables.push(table);
    }
    let theory = f.dom.theory.clone();
    let p = Arc::new(FiniteAlgebra::new(
        format!("pb({},{})", f.dom.name, g.dom.name),
        theory,
        f.dom.signature.clone(),
        size,
        tables,
    )?);
    let to_left = Homomorphism {
        dom: Arc::clone(&p),
        cod: Arc::clone(&f.dom),
        map: pairs.iter().map(|&(a, _)| a).collect(),
    };
    let to_right = Homomorphism {
        dom: Arc::clone(&p),
        cod: Arc::clone(&g.dom),
        map: pairs.iter().map(|&(_, b)| b).collect(),
    };
    Ok(Pullback {
        algebra: p,
        pairs,
        to_left,
        to_right,
    })
}

/// The subalgebra induced on a closed subset, with its inclusion map.
pub struct Subalgebra {
    pub algebra: Arc<FiniteAlgebra>,
    pub inclusion: Homomorphism,
}

pub fn subalgebra(
    alg: &Arc<FiniteAlgebra>,
    members: &BTreeSet<usize>,
    name: impl Into<String>,
) -> Result<Subalgebra, AlgebraError> {
    if let Some(&e) = members.iter().find(|&&e| e >= alg.size) {
        return Err(AlgebraError::OutOfRange {
            element: e,
            size: alg.size,
        });
    }
    if members.is_empty() {
        return Err(AlgebraError::EmptyCarrier);
    }
    let carrier: Vec<usize> = members.iter().copied().collect();
    let mut position = vec![usize::MAX; alg.size];
    for (i, &e) in carrier.iter().enumerate() {
        position[e] = i;
    }
    let size = carrier.len();
    let mut tables = Vec::new();
    for (symbol, arity) in alg.signature.symbols() {
        let mut table = Vec::with_capacity(size.pow(*arity as u32));
        let mut args = vec![0usize; *arity];
        loop {
            let outer: Vec<usize> = args.iter().map(|&i| carrier[i]).collect();
            let result = alg.apply(symbol, &outer);
            if position[result] == usize::MAX {
                return Err(AlgebraError::NotClosed {
                    symbol: symbol.clone(),
                    args: outer,
                    result,
                });
            }
            table.push(position[result]);
            if !crate::term::next_assignment(&mut args, size) {
                break;
            }
        }
        tables.push(table);
    }
    let sub = Arc::new(FiniteAlgebra::new(
        name,
        alg.theory.clone(),
        alg.signature.clone(),
        size,
        tables,
    )?);
    let inclusion = Homomorphism {
        dom: Arc::clone(&sub),
        cod: Arc::clone(alg),
        map: carrier,
    };
    Ok(Subalgebra {
        algebra: sub,
        inclusion,
    })
}

/// A split epimorphism with chosen section: `proj ∘ sect = id` on the
/// base.
#[derive(Debug, Clone)]
pub struct Point {
    proj: Homomorphism,
    sect: Homomorphism,
}

impl Point {
    pub fn new(proj: Homomorphism, sect: Homomorphism) -> Result<Point, AlgebraError> {
        if !sect.dom.same_tables(&proj.cod) || !sect.cod.same_tables(&proj.dom) {
            return Err(AlgebraError::CompositionMismatch);
        }
        for j in 0..proj.cod.size {
            if proj.map[sect.map[j]] != j {
                return Err(AlgebraError::NotASection(j));
            }
        }
        Ok(Point { proj, sect })
    }

    /// Skips the section check; the test companion to
    /// `Homomorphism::unchecked`.
    #[cfg(test)]
    pub(crate) fn unchecked(proj: Homomorphism, sect: Homomorphism) -> Point {
        Point { proj, sect }
    }

    pub fn total(&self) -> &Arc<FiniteAlgebra> {
        self.proj.dom()
    }

    pub fn base(&self) -> &Arc<FiniteAlgebra> {
        self.proj.cod()
    }

    pub fn proj(&self) -> &Homomorphism {
        &self.proj
    }

    pub fn sect(&self) -> &Homomorphism {
        &self.sect
    }
}

/// Change of base: pulls a point over `J` back along `g : J' -> J`,
/// yielding a point over `J'` whose section is the unique one induced by
/// the universal property.
pub fn pullback_point(pt: &Point, g: &Homomorphism) -> Result<Point, AlgebraError> {
    if !g.cod().same_tables(pt.base()) {
        return Err(AlgebraError::CodomainMismatch);
    }
    let pb = pullback(g, pt.proj())?;
    // s'(j') = (j', s(g(j')))
    let mut sect_map = Vec::with_capacity(g.dom().size());
    for j in 0..g.dom().size() {
        let target = (j, pt.sect().apply(g.apply(j)));
        let idx = pb
            .pairs
            .iter()
            .position(|&p| p == target)
            .expect("section lands in the pullback carrier");
        sect_map.push(idx);
    }
    let sect = Homomorphism::new(Arc::clone(g.dom()), Arc::clone(&pb.algebra), sect_map)?;
    Point::new(pb.to_left, sect)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theories;

    fn arc(a: FiniteAlgebra) -> Arc<FiniteAlgebra> {
        Arc::new(a)
    }

    #[test]
    fn product_of_two_chains_is_the_boolean_square() {
        let l2 = arc(theories::lukasiewicz_chain(2));
        let b4 = product(&l2, &l2).unwrap();
        assert_eq!(b4.algebra.size(), 4);
        let cat = theories::builtins();
        assert!(crate::term::satisfies(&b4.algebra, cat.get("mv").unwrap()));
        // idempotent join: x + x = x on every element
        for e in 0..4 {
            assert_eq!(b4.algebra.apply("oplus", &[e, e]), e);
        }
    }

    #[test]
    fn product_with_trivial_algebra_is_isomorphic_to_the_factor() {
        let l3 = arc(theories::lukasiewicz_chain(3));
        let one = arc(theories::trivial_algebra(l3.signature().clone(), "mv"));
        let p = product(&l3, &one).unwrap();
        assert!(crate::iso::find_isomorphism(&p.algebra, &l3).is_some());
    }

    #[test]
    fn product_cardinality() {
        let l2 = arc(theories::lukasiewicz_chain(2));
        let l3 = arc(theories::lukasiewicz_chain(3));
        assert_eq!(product(&l2, &l3).unwrap().algebra.size(), 6);
    }

    #[test]
    fn pullback_along_identity_is_the_domain() {
        let l2 = arc(theories::lukasiewicz_chain(2));
        let b4 = product(&l2, &l2).unwrap();
        let id = Homomorphism::identity(&l2);
        let f = b4.left.clone();
        let pb = pullback(&f, &id).unwrap();
        assert!(crate::iso::find_isomorphism(&pb.algebra, &b4.algebra).is_some());
    }

    #[test]
    fn kernel_as_pullback_along_the_initial_hoop() {
        // in hoops the one-element algebra is initial; pulling a
        // surjection back along it picks out the kernel class of 1
        let l2 = arc(theories::lukasiewicz_chain(2));
        let h2 = arc(theories::hoop_reduct(&l2).unwrap());
        let b4h = product(&h2, &h2).unwrap();
        let trivial = arc(theories::trivial_algebra(h2.signature().clone(), "hoop"));
        let initial = Homomorphism::new(
            Arc::clone(&trivial),
            Arc::clone(&h2),
            vec![h2.constant("one").unwrap()],
        )
        .unwrap();
        let pb = pullback(&b4h.left, &initial).unwrap();
        let one_class = kernel_class(&b4h.left, h2.constant("one").unwrap());
        assert_eq!(pb.algebra.size(), one_class.len());
        let members: Vec<usize> = pb.pairs.iter().map(|&(a, _)| a).collect();
        assert_eq!(members, one_class);
    }

    #[test]
    fn pullback_of_the_two_projections_has_eight_elements() {
        let l2 = arc(theories::lukasiewicz_chain(2));
        let b4 = product(&l2, &l2).unwrap();
        let pb = pullback(&b4.left, &b4.right).unwrap();
        assert_eq!(pb.algebra.size(), 8);
        let cat = theories::builtins();
        assert!(crate::term::satisfies(&pb.algebra, cat.get("mv").unwrap()));
    }

    #[test]
    fn congruence_generated_on_a_simple_algebra_is_full() {
        let l3 = arc(theories::lukasiewicz_chain(3));
        let c = generate_congruence(&l3, &[(1, 2)]).unwrap();
        assert_eq!(c.num_blocks(), 1);
    }

    #[test]
    fn empty_generation_gives_identity() {
        let l3 = arc(theories::lukasiewicz_chain(3));
        let c = generate_congruence(&l3, &[]).unwrap();
        assert_eq!(c, Congruence::identity(&l3));
    }

    #[test]
    fn generated_congruence_on_the_square_is_a_projection_kernel_pair() {
        let l2 = arc(theories::lukasiewicz_chain(2));
        let b4 = product(&l2, &l2).unwrap();
        // (0,0) ~ (0,1): elements 0 and 1
        let c = generate_congruence(&b4.algebra, &[(0, 1)]).unwrap();
        assert_eq!(c.blocks(), vec![vec![0, 1], vec![2, 3]]);
        // matches the kernel pair of the first projection
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(c.related(a, b), b4.left.apply(a) == b4.left.apply(b));
            }
        }
    }

    #[test]
    fn quotients_by_identity_and_full() {
        let l3 = arc(theories::lukasiewicz_chain(3));
        let (q_id, _) = quotient(&l3, &Congruence::identity(&l3));
        assert!(q_id.same_tables(&l3));
        let (q_full, _) = quotient(&l3, &Congruence::full(&l3));
        assert_eq!(q_full.size(), 1);
    }

    #[test]
    fn square_modulo_projection_kernel_is_the_chain() {
        let l2 = arc(theories::lukasiewicz_chain(2));
        let b4 = product(&l2, &l2).unwrap();
        let c = generate_congruence(&b4.algebra, &[(0, 1)]).unwrap();
        let (q, s) = quotient(&b4.algebra, &c);
        assert!(q.same_tables(&l2));
        assert!(s.is_surjective());
    }

    #[test]
    fn quotient_surjection_kernel_pair_recovers_the_congruence() {
        let l2 = arc(theories::lukasiewicz_chain(2));
        let b4 = product(&l2, &l2).unwrap();
        let c = generate_congruence(&b4.algebra, &[(0, 1)]).unwrap();
        let (_, s) = quotient(&b4.algebra, &c);
        let mut pairs = Vec::new();
        for a in 0..4 {
            for b in 0..4 {
                if s.apply(a) == s.apply(b) {
                    pairs.push((a, b));
                }
            }
        }
        let again = generate_congruence(&b4.algebra, &pairs).unwrap();
        assert_eq!(again, c);
    }

    #[test]
    fn kernel_classes() {
        let l2 = arc(theories::lukasiewicz_chain(2));
        let b4 = product(&l2, &l2).unwrap();
        assert_eq!(kernel_class(&b4.right, 1), vec![1, 3]);
        let id = Homomorphism::identity(&l2);
        assert_eq!(kernel_class(&id, 1), vec![1]);
        let trivial = arc(theories::trivial_algebra(l2.signature().clone(), "mv"));
        let bang = Homomorphism::new(Arc::clone(&l2), Arc::clone(&trivial), vec![0, 0]).unwrap();
        assert_eq!(kernel_class(&bang, 0), vec![0, 1]);
    }

    #[test]
    fn homomorphism_construction_rejects_bad_maps() {
        let l2 = arc(theories::lukasiewicz_chain(2));
        // swapping 0 and 1 does not fix the zero constant
        assert!(matches!(
            Homomorphism::new(Arc::clone(&l2), Arc::clone(&l2), vec![1, 0]),
            Err(AlgebraError::NotAHomomorphism { .. })
        ));
        assert!(matches!(
            Homomorphism::new(Arc::clone(&l2), Arc::clone(&l2), vec![0]),
            Err(AlgebraError::MapLength { .. })
        ));
    }

    #[test]
    fn point_requires_a_genuine_section() {
        // in the dot/imp/one signature there are homomorphisms into the
        // square that are not sections, unlike with negation around
        let h2 = arc(theories::hoop_reduct(&theories::lukasiewicz_chain(2)).unwrap());
        let b4 = product(&h2, &h2).unwrap();
        let sect =
            Homomorphism::new(Arc::clone(&h2), Arc::clone(&b4.algebra), vec![0, 3]).unwrap();
        assert!(Point::new(b4.left.clone(), sect).is_ok());
        // lands in the wrong fibre over 0
        let bad_sect =
            Homomorphism::new(Arc::clone(&h2), Arc::clone(&b4.algebra), vec![2, 3]).unwrap();
        assert!(matches!(
            Point::new(b4.left.clone(), bad_sect),
            Err(AlgebraError::NotASection(0))
        ));
    }

    #[test]
    fn base_change_along_the_identity_preserves_the_point() {
        let l2 = arc(theories::lukasiewicz_chain(2));
        let b4 = product(&l2, &l2).unwrap();
        let sect =
            Homomorphism::new(Arc::clone(&l2), Arc::clone(&b4.algebra), vec![0, 3]).unwrap();
        let pt = Point::new(b4.left.clone(), sect).unwrap();
        let id = Homomorphism::identity(&l2);
        let pulled = pullback_point(&pt, &id).unwrap();
        assert_eq!(pulled.total().size(), pt.total().size());
        assert!(crate::iso::find_isomorphism(pulled.total(), pt.total()).is_some());
        // the chain L2 has a unique endomorphism: the identity
        let endos = crate::iso::enumerate_homomorphisms(&l2, &l2);
        assert_eq!(endos.len(), 1);
        assert_eq!(endos[0].map(), &[0, 1]);
    }

    #[test]
    fn congruence_enumeration_matches_known_counts() {
        let l3 = arc(theories::lukasiewicz_chain(3));
        // the 3-chain is simple: identity and full only
        assert_eq!(enumerate_congruences(&l3).len(), 2);
        let l2 = arc(theories::lukasiewicz_chain(2));
        let b4 = product(&l2, &l2).unwrap();
        // the boolean square: identity, two projection kernel pairs, full
        assert_eq!(enumerate_congruences(&b4.algebra).len(), 4);
    }

    #[test]
    fn subalgebra_requires_closure() {
        let l3 = arc(theories::lukasiewicz_chain(3));
        let closed: BTreeSet<usize> = [0, 2].into_iter().collect();
        let sub = subalgebra(&l3, &closed, "sub").unwrap();
        assert_eq!(sub.algebra.size(), 2);
        let not_closed: BTreeSet<usize> = [0, 1].into_iter().collect();
        assert!(matches!(
            subalgebra(&l3, &not_closed, "bad"),
            Err(AlgebraError::NotClosed { .. })
        ));
    }

    #[test]
    fn algebra_text_round_trip() {
        let l3 = theories::lukasiewicz_chain(3);
        let text = l3.to_string();
        let parsed = crate::parse::parse_algebra(&text).unwrap();
        assert_eq!(parsed, l3);
    }
}
