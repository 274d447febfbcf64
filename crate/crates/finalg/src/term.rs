//! Signatures, terms, equations and theories, plus term evaluation and
//! exhaustive identity checking over finite algebras.

use std::collections::BTreeSet;
use std::fmt;

use crate::algebra::FiniteAlgebra;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SignatureError {
    #[error("duplicate operation symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("`{0}` is reserved for variables and cannot name an operation")]
    ReservedName(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("variable x{0} is not bound by the environment")]
    UnboundVariable(usize),
    #[error("symbol `{0}` is not interpreted by the algebra")]
    UnknownSymbol(String),
    #[error("symbol `{symbol}` expects {expected} arguments, got {found}")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("algebra `{algebra}` does not interpret the signature of the theory")]
    SignatureMismatch { algebra: String },
}

/// An ordered list of operation symbols with arities. Arity-0 symbols are
/// constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    symbols: Vec<(String, usize)>,
}

impl Signature {
    pub fn new<S: Into<String>>(symbols: Vec<(S, usize)>) -> Result<Self, SignatureError> {
        let symbols: Vec<(String, usize)> =
            symbols.into_iter().map(|(n, a)| (n.into(), a)).collect();
        let mut seen = BTreeSet::new();
        for (name, _) in &symbols {
            if is_variable_token(name) {
                return Err(SignatureError::ReservedName(name.clone()));
            }
            if !seen.insert(name.clone()) {
                return Err(SignatureError::DuplicateSymbol(name.clone()));
            }
        }
        Ok(Signature { symbols })
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.symbols
            .iter()
            .find(|(n, _)| n == name)
            .map(|&(_, a)| a)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.arity(name).is_some()
    }

    pub fn symbols(&self) -> &[(String, usize)] {
        &self.symbols
    }

    pub fn constants(&self) -> impl Iterator<Item = &str> {
        self.symbols
            .iter()
            .filter(|&&(_, a)| a == 0)
            .map(|(n, _)| n.as_str())
    }

    /// True when both signatures interpret the same symbols with the same
    /// arities, regardless of declaration order.
    pub fn compatible(&self, other: &Signature) -> bool {
        let mut a: Vec<_> = self.symbols.clone();
        let mut b: Vec<_> = other.symbols.clone();
        a.sort();
        b.sort();
        a == b
    }
}

/// Variable tokens are `x`, `y`, `z` (indices 0, 1, 2) and `x0`, `x1`, ….
pub(crate) fn is_variable_token(name: &str) -> bool {
    variable_index(name).is_some()
}

pub(crate) fn variable_index(name: &str) -> Option<usize> {
    match name {
        "x" => Some(0),
        "y" => Some(1),
        "z" => Some(2),
        _ => {
            let rest = name.strip_prefix('x')?;
            if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
                rest.parse().ok()
            } else {
                None
            }
        }
    }
}

pub(crate) fn variable_name(index: usize) -> String {
    match index {
        0 => "x".to_string(),
        1 => "y".to_string(),
        2 => "z".to_string(),
        k => format!("x{k}"),
    }
}

/// A first-order term: a variable (by index) or an operation applied to
/// argument terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(usize),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(index: usize) -> Term {
        Term::Var(index)
    }

    pub fn app<S: Into<String>>(symbol: S, args: Vec<Term>) -> Term {
        Term::App(symbol.into(), args)
    }

    pub fn constant<S: Into<String>>(symbol: S) -> Term {
        Term::App(symbol.into(), Vec::new())
    }

    pub fn variables(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.collect_variables(&mut out);
        out
    }

    fn collect_variables(&self, out: &mut BTreeSet<usize>) {
        match self {
            Term::Var(i) => {
                out.insert(*i);
            }
            Term::App(_, args) => {
                for a in args {
                    a.collect_variables(out);
                }
            }
        }
    }

    /// Checks every application symbol against the signature.
    pub fn validate(&self, sig: &Signature) -> Result<(), EvalError> {
        match self {
            Term::Var(_) => Ok(()),
            Term::App(symbol, args) => {
                match sig.arity(symbol) {
                    None => return Err(EvalError::UnknownSymbol(symbol.clone())),
                    Some(a) if a != args.len() => {
                        return Err(EvalError::ArityMismatch {
                            symbol: symbol.clone(),
                            expected: a,
                            found: args.len(),
                        })
                    }
                    Some(_) => {}
                }
                for a in args {
                    a.validate(sig)?;
                }
                Ok(())
            }
        }
    }

    /// Replaces `Var(i)` by `subs[i]`. All variables of `self` must be
    /// covered by `subs`.
    pub fn substitute(&self, subs: &[Term]) -> Term {
        match self {
            Term::Var(i) => subs[*i].clone(),
            Term::App(symbol, args) => Term::App(
                symbol.clone(),
                args.iter().map(|a| a.substitute(subs)).collect(),
            ),
        }
    }

    /// Rewrites every application through `f`, bottom-up. Used for
    /// signature-to-signature term translations.
    pub fn map_apps(&self, f: &impl Fn(&str, Vec<Term>) -> Term) -> Term {
        match self {
            Term::Var(i) => Term::Var(*i),
            Term::App(symbol, args) => {
                let args = args.iter().map(|a| a.map_apps(f)).collect();
                f(symbol, args)
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => write!(f, "{}", variable_name(*i)),
            Term::App(symbol, args) => {
                write!(f, "{symbol}")?;
                if !args.is_empty() {
                    write!(f, "(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            write!(f, ",")?;
                        }
                        write!(f, "{a}")?;
                    }
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }
}

/// A pair of terms read as a universally quantified identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    pub fn new(lhs: Term, rhs: Term) -> Equation {
        Equation { lhs, rhs }
    }

    /// Union of the variables of both sides.
    pub fn variables(&self) -> BTreeSet<usize> {
        let mut vars = self.lhs.variables();
        vars.extend(self.rhs.variables());
        vars
    }

    /// Number of variables to quantify over (one past the largest index).
    pub fn var_count(&self) -> usize {
        self.variables().iter().next_back().map_or(0, |&m| m + 1)
    }

    pub fn validate(&self, sig: &Signature) -> Result<(), EvalError> {
        self.lhs.validate(sig)?;
        self.rhs.validate(sig)
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// A signature together with defining equations and an optional designated
/// constant (the "point" used by ideal theory: 0 for MV-algebras and rings,
/// 1 for hoops).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theory {
    pub name: String,
    pub signature: Signature,
    pub equations: Vec<Equation>,
    pub point_constant: Option<String>,
}

impl Theory {
    pub fn new(
        name: impl Into<String>,
        signature: Signature,
        equations: Vec<Equation>,
        point_constant: Option<String>,
    ) -> Result<Theory, EvalError> {
        for eq in &equations {
            eq.validate(&signature)?;
        }
        if let Some(p) = &point_constant {
            if signature.arity(p) != Some(0) {
                return Err(EvalError::UnknownSymbol(p.clone()));
            }
        }
        Ok(Theory {
            name: name.into(),
            signature,
            equations,
            point_constant,
        })
    }
}

impl fmt::Display for Theory {
    /// Canonical theory text: parsing the output reproduces the theory.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "theory {} {{", self.name)?;
        for (n, a) in self.signature.symbols() {
            writeln!(f, "  op {n}/{a};")?;
        }
        if let Some(p) = &self.point_constant {
            writeln!(f, "  point {p};")?;
        }
        for eq in &self.equations {
            writeln!(f, "  eq {} = {};", eq.lhs, eq.rhs)?;
        }
        write!(f, "}}")
    }
}

/// Evaluates a term in a finite algebra under an assignment of variable
/// indices to carrier elements.
pub fn eval_term(t: &Term, alg: &FiniteAlgebra, env: &[usize]) -> Result<usize, EvalError> {
    match t {
        Term::Var(i) => env
            .get(*i)
            .copied()
            .ok_or(EvalError::UnboundVariable(*i)),
        Term::App(symbol, args) => {
            let mut vals = Vec::with_capacity(args.len());
            for a in args {
                vals.push(eval_term(a, alg, env)?);
            }
            match alg.arity(symbol) {
                None => Err(EvalError::UnknownSymbol(symbol.clone())),
                Some(a) if a != vals.len() => Err(EvalError::ArityMismatch {
                    symbol: symbol.clone(),
                    expected: a,
                    found: vals.len(),
                }),
                Some(_) => Ok(alg.apply(symbol, &vals)),
            }
        }
    }
}

/// Outcome of an exhaustive identity check. The counterexample, when
/// present, is the lexicographically least failing assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Counterexample(Vec<usize>),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    /// The failing assignment, when there is one.
    pub fn counterexample(&self) -> Option<&[usize]> {
        match self {
            Verdict::Holds => None,
            Verdict::Counterexample(env) => Some(env),
        }
    }
}

/// Checks an identity against every assignment of its variables.
///
/// Assignments are enumerated in lexicographic order, so a failure report
/// is canonical: no assignment smaller in lex order fails.
pub fn check_identity(alg: &FiniteAlgebra, eq: &Equation) -> Result<Verdict, EvalError> {
    let k = eq.var_count();
    let n = alg.size();
    let mut env = vec![0usize; k];
    loop {
        let l = eval_term(&eq.lhs, alg, &env)?;
        let r = eval_term(&eq.rhs, alg, &env)?;
        if l != r {
            return Ok(Verdict::Counterexample(env));
        }
        if !next_assignment(&mut env, n) {
            return Ok(Verdict::Holds);
        }
    }
}

/// Advances `env` to the next assignment in lexicographic order; returns
/// false once the space is exhausted.
pub(crate) fn next_assignment(env: &mut [usize], n: usize) -> bool {
    for slot in env.iter_mut().rev() {
        *slot += 1;
        if *slot < n {
            return true;
        }
        *slot = 0;
    }
    false
}

/// Per-equation verdicts for a whole theory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoryVerdict {
    pub verdicts: Vec<(Equation, Verdict)>,
}

impl TheoryVerdict {
    pub fn ok(&self) -> bool {
        self.verdicts.iter().all(|(_, v)| v.holds())
    }

    pub fn failures(&self) -> impl Iterator<Item = &(Equation, Verdict)> {
        self.verdicts.iter().filter(|(_, v)| !v.holds())
    }
}

/// Runs `check_identity` over every equation of the theory.
pub fn check_theory(alg: &FiniteAlgebra, th: &Theory) -> Result<TheoryVerdict, EvalError> {
    if !alg.interprets(&th.signature) {
        return Err(EvalError::SignatureMismatch {
            algebra: alg.name().to_string(),
        });
    }
    let mut verdicts = Vec::with_capacity(th.equations.len());
    for eq in &th.equations {
        verdicts.push((eq.clone(), check_identity(alg, eq)?));
    }
    Ok(TheoryVerdict { verdicts })
}

/// True when the algebra satisfies every equation of the theory.
pub fn satisfies(alg: &FiniteAlgebra, th: &Theory) -> bool {
    check_theory(alg, th).map(|v| v.ok()).unwrap_or(false)
}

/// A concrete refutation found while sweeping a corpus: the algebra, the
/// equation instance, and the variable assignment that breaks it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusFailure {
    pub algebra: String,
    pub equation: String,
    pub assignment: Vec<usize>,
}

/// Outcome of an exhaustive check over a finite corpus. A pass certifies
/// exactly the algebras listed in `certified_on` and nothing beyond them;
/// a failure carries a counterexample and stays valid however the corpus
/// grows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusVerdict {
    pub certified_on: Vec<String>,
    pub failure: Option<CorpusFailure>,
}

impl CorpusVerdict {
    pub fn pass(certified_on: Vec<String>) -> CorpusVerdict {
        CorpusVerdict {
            certified_on,
            failure: None,
        }
    }

    pub fn fail(algebra: &str, equation: String, assignment: Vec<usize>) -> CorpusVerdict {
        CorpusVerdict {
            certified_on: Vec::new(),
            failure: Some(CorpusFailure {
                algebra: algebra.to_string(),
                equation,
                assignment,
            }),
        }
    }

    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theories;

    fn v(i: usize) -> Term {
        Term::var(i)
    }

    #[test]
    fn variable_tokens_map_to_indices() {
        assert_eq!(variable_index("x"), Some(0));
        assert_eq!(variable_index("y"), Some(1));
        assert_eq!(variable_index("z"), Some(2));
        assert_eq!(variable_index("x0"), Some(0));
        assert_eq!(variable_index("x7"), Some(7));
        assert_eq!(variable_index("w"), None);
        assert_eq!(variable_index("y1"), None);
        assert_eq!(variable_index("x1a"), None);
    }

    #[test]
    fn signature_rejects_duplicates_and_reserved_names() {
        assert!(matches!(
            Signature::new(vec![("f", 2), ("f", 1)]),
            Err(SignatureError::DuplicateSymbol(_))
        ));
        assert!(matches!(
            Signature::new(vec![("x", 0)]),
            Err(SignatureError::ReservedName(_))
        ));
    }

    #[test]
    fn implication_in_three_chain() {
        // Oracle: the residual of the 3-element chain is min(2, 2 - x + y).
        let l3 = theories::lukasiewicz_chain(3);
        let hoop = theories::hoop_reduct(&l3).unwrap();
        for x in 0..3usize {
            for y in 0..3usize {
                let expect = (2 + y).saturating_sub(x).min(2);
                assert_eq!(hoop.apply("imp", &[x, y]), expect, "imp({x},{y})");
            }
        }
        let t = Term::app("imp", vec![v(0), v(0)]);
        assert_eq!(eval_term(&t, &hoop, &[1]).unwrap(), 2);
    }

    #[test]
    fn constants_evaluate_to_their_table_entry() {
        let l3 = theories::lukasiewicz_chain(3);
        let hoop = theories::hoop_reduct(&l3).unwrap();
        assert_eq!(eval_term(&Term::constant("one"), &hoop, &[]).unwrap(), 2);
    }

    #[test]
    fn eval_reports_unbound_variable_and_unknown_symbol() {
        let l3 = theories::lukasiewicz_chain(3);
        let t = Term::app("oplus", vec![v(0), v(1)]);
        assert_eq!(
            eval_term(&t, &l3, &[1]).unwrap_err(),
            EvalError::UnboundVariable(1)
        );
        let u = Term::constant("bogus");
        assert!(matches!(
            eval_term(&u, &l3, &[]).unwrap_err(),
            EvalError::UnknownSymbol(_)
        ));
    }

    #[test]
    fn currying_identity_holds_on_all_27_assignments() {
        let hoop = theories::hoop_reduct(&theories::lukasiewicz_chain(3)).unwrap();
        let eq = Equation::new(
            Term::app("imp", vec![Term::app("dot", vec![v(0), v(1)]), v(2)]),
            Term::app("imp", vec![v(0), Term::app("imp", vec![v(1), v(2)])]),
        );
        assert_eq!(check_identity(&hoop, &eq).unwrap(), Verdict::Holds);
    }

    #[test]
    fn double_negation_on_l3_and_a_corrupted_table() {
        let l3 = theories::lukasiewicz_chain(3);
        let eq = Equation::new(Term::app("neg", vec![Term::app("neg", vec![v(0)])]), v(0));
        assert_eq!(check_identity(&l3, &eq).unwrap(), Verdict::Holds);

        // neg = [2,0,1]: not an involution, least failure at x = 0.
        let bad = l3.with_table("neg", vec![2, 0, 1]).unwrap();
        assert_eq!(
            check_identity(&bad, &eq).unwrap(),
            Verdict::Counterexample(vec![0])
        );
    }

    #[test]
    fn reflexivity_always_holds() {
        let l3 = theories::lukasiewicz_chain(3);
        let eq = Equation::new(v(0), v(0));
        assert_eq!(check_identity(&l3, &eq).unwrap(), Verdict::Holds);
    }

    #[test]
    fn counterexample_is_lex_least() {
        // Oracle: scan every assignment, collect all failures, take the
        // minimum; must agree with the early-exit search.
        let l3 = theories::lukasiewicz_chain(3);
        let bad = l3.with_table("neg", vec![2, 2, 0]).unwrap();
        let eq = Equation::new(Term::app("neg", vec![Term::app("neg", vec![v(0)])]), v(0));
        let mut failures = Vec::new();
        for x in 0..3usize {
            let l = eval_term(&eq.lhs, &bad, &[x]).unwrap();
            let r = eval_term(&eq.rhs, &bad, &[x]).unwrap();
            if l != r {
                failures.push(vec![x]);
            }
        }
        failures.sort();
        assert_eq!(
            check_identity(&bad, &eq).unwrap(),
            Verdict::Counterexample(failures[0].clone())
        );
    }

    #[test]
    fn theory_checks_on_builtin_models() {
        let cat = theories::builtins();
        let l3 = theories::lukasiewicz_chain(3);
        assert!(check_theory(&l3, cat.get("mv").unwrap()).unwrap().ok());
        let hoop = theories::hoop_reduct(&l3).unwrap();
        assert!(check_theory(&hoop, cat.get("whoop").unwrap()).unwrap().ok());
    }

    #[test]
    fn signature_mismatch_is_reported() {
        let cat = theories::builtins();
        let l3 = theories::lukasiewicz_chain(3);
        assert!(matches!(
            check_theory(&l3, cat.get("hoop").unwrap()),
            Err(EvalError::SignatureMismatch { .. })
        ));
    }

    #[test]
    fn substitution_composes() {
        let t = Term::app("imp", vec![v(0), v(1)]);
        let s = t.substitute(&[v(1), Term::constant("one")]);
        assert_eq!(s, Term::app("imp", vec![v(1), Term::constant("one")]));
    }
}
