//! Text formats for theories and algebras.
//!
//! Theory files:
//!
//! ```text
//! theory mv {
//!   op oplus/2, neg/1, zero/0;   # or one `op` line per symbol
//!   point zero;                  # optional designated constant
//!   eq neg(neg(x)) = x;          # variables: x, y, z, x0, x1, ...
//! }
//! ```
//!
//! Algebra files:
//!
//! ```text
//! algebra L3 : mv {
//!   size 3;
//!   op oplus = [[0,1,2],[1,2,2],[2,2,2]];   # row-major nested lists
//!   op neg = [2,1,0];
//!   op zero = 0;                            # constants are bare numbers
//! }
//! ```
//!
//! `#` starts a comment running to the end of the line. Constants may be
//! written `zero` or `zero()` in eq terms. The part after `:` in an
//! algebra header is a theory label; resolving it against a theory is the
//! caller's business.

use crate::algebra::FiniteAlgebra;
use crate::term::{variable_index, Equation, Signature, Term, Theory};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

fn err<T>(line: usize, col: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        col,
        message: message.into(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum TokKind {
    Ident(String),
    Int(usize),
    Sym(char),
}

#[derive(Debug, Clone)]
struct Tok {
    kind: TokKind,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Tok>, ParseError> {
    let mut toks = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let (start_line, start_col) = (line, col);
                let mut word = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        word.push(c);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                toks.push(Tok {
                    kind: TokKind::Ident(word),
                    line: start_line,
                    col: start_col,
                });
            }
            c if c.is_ascii_digit() => {
                let (start_line, start_col) = (line, col);
                let mut digits = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        digits.push(c);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                let value: usize = digits
                    .parse()
                    .map_err(|_| ParseError {
                        line: start_line,
                        col: start_col,
                        message: format!("number `{digits}` is too large"),
                    })?;
                toks.push(Tok {
                    kind: TokKind::Int(value),
                    line: start_line,
                    col: start_col,
                });
            }
            '{' | '}' | '(' | ')' | '[' | ']' | ',' | ';' | '/' | ':' | '=' | '~' => {
                toks.push(Tok {
                    kind: TokKind::Sym(c),
                    line,
                    col,
                });
                chars.next();
                col += 1;
            }
            other => {
                return err(line, col, format!("unexpected character `{other}`"));
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map(|t| (t.line, t.col))
            .unwrap_or((1, 1))
    }

    fn peek(&self) -> Option<&TokKind> {
        self.toks.get(self.pos).map(|t| &t.kind)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        let (line, col) = self.here();
        match self.next() {
            Some(Tok {
                kind: TokKind::Sym(s),
                ..
            }) if s == c => Ok(()),
            Some(t) => err(t.line, t.col, format!("expected `{c}`, found {}", show(&t.kind))),
            None => err(line, col, format!("expected `{c}`, found end of input")),
        }
    }

    fn expect_ident(&mut self, what: &str) -> Result<(String, usize, usize), ParseError> {
        let (line, col) = self.here();
        match self.next() {
            Some(Tok {
                kind: TokKind::Ident(name),
                line,
                col,
            }) => Ok((name, line, col)),
            Some(t) => err(t.line, t.col, format!("expected {what}, found {}", show(&t.kind))),
            None => err(line, col, format!("expected {what}, found end of input")),
        }
    }

    /// Algebra names may carry the punctuation the constructions put there
    /// (`M(L3_hoop)`, `D(Z3rng,3)`, `(L3xL2)`, `L3/~`): concatenate tokens
    /// until something outside the name charset, e.g. the `:` separator.
    fn expect_name(&mut self) -> Result<(String, usize, usize), ParseError> {
        let (line, col) = self.here();
        let mut name = String::new();
        loop {
            match self.peek().cloned() {
                Some(TokKind::Ident(w)) => name.push_str(&w),
                Some(TokKind::Int(v)) => name.push_str(&v.to_string()),
                Some(TokKind::Sym(c)) if matches!(c, '(' | ')' | ',' | '/' | '~') => name.push(c),
                _ => break,
            }
            self.pos += 1;
        }
        if name.is_empty() {
            return err(line, col, "expected an algebra name");
        }
        Ok((name, line, col))
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        let (name, line, col) = self.expect_ident(&format!("`{kw}`"))?;
        if name == kw {
            Ok(())
        } else {
            err(line, col, format!("expected `{kw}`, found `{name}`"))
        }
    }

    fn expect_int(&mut self, what: &str) -> Result<(usize, usize, usize), ParseError> {
        let (line, col) = self.here();
        match self.next() {
            Some(Tok {
                kind: TokKind::Int(v),
                line,
                col,
            }) => Ok((v, line, col)),
            Some(t) => err(t.line, t.col, format!("expected {what}, found {}", show(&t.kind))),
            None => err(line, col, format!("expected {what}, found end of input")),
        }
    }

    fn at_sym(&self, c: char) -> bool {
        matches!(self.peek(), Some(TokKind::Sym(s)) if *s == c)
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        if let Some(t) = self.toks.get(self.pos) {
            return err(t.line, t.col, format!("unexpected {} after `}}`", show(&t.kind)));
        }
        Ok(())
    }
}

fn show(kind: &TokKind) -> String {
    match kind {
        TokKind::Ident(n) => format!("`{n}`"),
        TokKind::Int(v) => format!("`{v}`"),
        TokKind::Sym(c) => format!("`{c}`"),
    }
}

fn parse_term(p: &mut Parser) -> Result<Term, ParseError> {
    let (name, line, col) = p.expect_ident("a term")?;
    if let Some(i) = variable_index(&name) {
        if p.at_sym('(') {
            return err(line, col, format!("variable `{name}` cannot take arguments"));
        }
        return Ok(Term::Var(i));
    }
    let mut args = Vec::new();
    if p.at_sym('(') {
        p.expect_sym('(')?;
        if !p.at_sym(')') {
            loop {
                args.push(parse_term(p)?);
                if p.at_sym(',') {
                    p.expect_sym(',')?;
                } else {
                    break;
                }
            }
        }
        p.expect_sym(')')?;
    }
    Ok(Term::App(name, args))
}

pub fn parse_theory(text: &str) -> Result<Theory, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    p.expect_keyword("theory")?;
    let (name, ..) = p.expect_ident("a theory name")?;
    p.expect_sym('{')?;
    let mut ops: Vec<(String, usize)> = Vec::new();
    let mut op_positions: Vec<(usize, usize)> = Vec::new();
    let mut point: Option<(String, usize, usize)> = None;
    let mut axioms: Vec<(Equation, usize, usize)> = Vec::new();
    loop {
        if p.at_sym('}') {
            p.expect_sym('}')?;
            break;
        }
        let (kw, line, col) = p.expect_ident("`op`, `point`, `eq` or `}`")?;
        match kw.as_str() {
            "op" => loop {
                let (op_name, nline, ncol) = p.expect_ident("an operation name")?;
                p.expect_sym('/')?;
                let (arity, ..) = p.expect_int("an arity")?;
                ops.push((op_name, arity));
                op_positions.push((nline, ncol));
                if p.at_sym(',') {
                    p.expect_sym(',')?;
                } else {
                    p.expect_sym(';')?;
                    break;
                }
            },
            "point" => {
                let (const_name, pline, pcol) = p.expect_ident("a constant name")?;
                p.expect_sym(';')?;
                if point.is_some() {
                    return err(pline, pcol, "a theory can have at most one point");
                }
                point = Some((const_name, pline, pcol));
            }
            "eq" => {
                let lhs = parse_term(&mut p)?;
                p.expect_sym('=')?;
                let rhs = parse_term(&mut p)?;
                p.expect_sym(';')?;
                axioms.push((Equation::new(lhs, rhs), line, col));
            }
            other => {
                return err(
                    line,
                    col,
                    format!("expected `op`, `point`, `eq` or `}}`, found `{other}`"),
                );
            }
        }
    }
    p.expect_end()?;
    let signature = match Signature::new(ops) {
        Ok(s) => s,
        Err(e) => {
            let (line, col) = op_positions.last().copied().unwrap_or((1, 1));
            return err(line, col, e.to_string());
        }
    };
    for (eq, line, col) in &axioms {
        eq.validate(&signature)
            .map_err(|e| ParseError {
                line: *line,
                col: *col,
                message: e.to_string(),
            })?;
        // equations quantify over x0..x{k-1}; a skipped index would be
        // vacuous and almost certainly a typo
        let vars = eq.variables();
        for i in 0..eq.var_count() {
            if !vars.contains(&i) {
                return err(
                    *line,
                    *col,
                    format!(
                        "eq uses {} but skips {}",
                        crate::term::variable_name(eq.var_count() - 1),
                        crate::term::variable_name(i)
                    ),
                );
            }
        }
    }
    if let Some((const_name, line, col)) = &point {
        if signature.arity(const_name) != Some(0) {
            return err(
                *line,
                *col,
                format!("point `{const_name}` is not a declared constant"),
            );
        }
    }
    Theory::new(
        name,
        signature,
        axioms.into_iter().map(|(eq, ..)| eq).collect(),
        point.map(|(n, ..)| n),
    )
    .map_err(|e| ParseError {
        line: 1,
        col: 1,
        message: e.to_string(),
    })
}

enum TableNode {
    Leaf(usize, usize, usize),
    List(Vec<TableNode>, usize, usize),
}

fn parse_table(p: &mut Parser) -> Result<TableNode, ParseError> {
    if p.at_sym('[') {
        let (line, col) = p.here();
        p.expect_sym('[')?;
        let mut items = Vec::new();
        if !p.at_sym(']') {
            loop {
                items.push(parse_table(p)?);
                if p.at_sym(',') {
                    p.expect_sym(',')?;
                } else {
                    break;
                }
            }
        }
        p.expect_sym(']')?;
        Ok(TableNode::List(items, line, col))
    } else {
        let (v, line, col) = p.expect_int("a table entry")?;
        Ok(TableNode::Leaf(v, line, col))
    }
}

/// Flattens a nested table, enforcing uniform depth, per-level width equal
/// to `size`, and entries inside the carrier.
fn flatten(
    node: &TableNode,
    size: usize,
    out: &mut Vec<usize>,
    depth_expected: Option<usize>,
) -> Result<usize, ParseError> {
    match node {
        TableNode::Leaf(v, line, col) => {
            if let Some(d) = depth_expected {
                if d != 0 {
                    return err(*line, *col, "expected a nested list, found a number");
                }
            }
            if *v >= size {
                return err(
                    *line,
                    *col,
                    format!("entry {v} is outside the carrier 0..{}", size - 1),
                );
            }
            out.push(*v);
            Ok(0)
        }
        TableNode::List(items, line, col) => {
            if depth_expected == Some(0) {
                return err(*line, *col, "expected a number, found a list");
            }
            if items.len() != size {
                return err(
                    *line,
                    *col,
                    format!("list has {} entries, expected {size}", items.len()),
                );
            }
            let inner_expected = depth_expected.map(|d| d - 1);
            let mut depth = None;
            for item in items {
                let d = flatten(item, size, out, inner_expected.or(depth))?;
                depth = Some(d);
            }
            Ok(depth.unwrap_or(0) + 1)
        }
    }
}

pub fn parse_algebra(text: &str) -> Result<FiniteAlgebra, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    p.expect_keyword("algebra")?;
    let (name, ..) = p.expect_name()?;
    p.expect_sym(':')?;
    let (theory_label, ..) = p.expect_ident("a theory label")?;
    p.expect_sym('{')?;
    p.expect_keyword("size")?;
    let (size, sline, scol) = p.expect_int("the carrier size")?;
    if size == 0 {
        return err(sline, scol, "the carrier must be non-empty");
    }
    p.expect_sym(';')?;
    let mut ops: Vec<(String, usize)> = Vec::new();
    let mut tables: Vec<Vec<usize>> = Vec::new();
    let mut last_pos = (sline, scol);
    loop {
        if p.at_sym('}') {
            p.expect_sym('}')?;
            break;
        }
        let (kw, line, col) = p.expect_ident("`op` or `}`")?;
        if kw != "op" {
            return err(line, col, format!("expected `op` or `}}`, found `{kw}`"));
        }
        let (op_name, nline, ncol) = p.expect_ident("an operation name")?;
        p.expect_sym('=')?;
        let node = parse_table(&mut p)?;
        p.expect_sym(';')?;
        let mut flat = Vec::new();
        let arity = flatten(&node, size, &mut flat, None)?;
        ops.push((op_name, arity));
        tables.push(flat);
        last_pos = (nline, ncol);
    }
    p.expect_end()?;
    let signature = Signature::new(ops).map_err(|e| ParseError {
        line: last_pos.0,
        col: last_pos.1,
        message: e.to_string(),
    })?;
    FiniteAlgebra::new(name, theory_label, signature, size, tables).map_err(|e| ParseError {
        line: last_pos.0,
        col: last_pos.1,
        message: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theories;

    #[test]
    fn theory_text_round_trips_through_the_printer() {
        let cat = theories::builtins();
        for name in ["hoop", "whoop", "mv", "crng", "booalg"] {
            let th = cat.get(name).unwrap();
            let reparsed = parse_theory(&th.to_string()).unwrap();
            assert_eq!(&reparsed, th, "{name}");
        }
    }

    #[test]
    fn punctuated_algebra_names_round_trip() {
        for name in ["M(L3_hoop)", "D(Z3rng,3)", "(L3xL2)", "K((L3xL2))", "L3/~"] {
            let alg = theories::lukasiewicz_chain(3).renamed(name);
            let back = parse_algebra(&alg.to_string()).unwrap();
            assert_eq!(back.name(), name);
            assert!(back.same_tables(&alg));
        }
    }

    #[test]
    fn constants_parse_with_and_without_parentheses() {
        let a = parse_theory(
            "theory t { op f/1; op c/0; eq f(c) = c; }",
        )
        .unwrap();
        let b = parse_theory(
            "theory t { op f/1; op c/0; eq f(c()) = c(); }",
        )
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn comments_are_ignored() {
        let th = parse_theory(
            "# leading note\ntheory t { # inline\n  op f/1;\n  eq f(f(x)) = x; # tail\n}",
        )
        .unwrap();
        assert_eq!(th.name, "t");
        assert_eq!(th.equations.len(), 1);
    }

    #[test]
    fn error_positions_point_at_the_problem() {
        let e = parse_theory("theory t {\n  op f/1\n  eq f(x) = x;\n}").unwrap_err();
        assert_eq!((e.line, e.col), (3, 3)); // the `eq` where `;` was due

        let e = parse_theory("theory t {\n  op f/1;\n  eq g(x) = x;\n}").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.message.contains("`g`"));

        let e = parse_theory("theory t {\n  op f/1;\n  eq f(x, y) = x;\n}").unwrap_err();
        assert!(e.message.contains("expects 1"));
    }

    #[test]
    fn sparse_variable_indices_are_rejected() {
        let e = parse_theory("theory t { op f/2; eq f(x, z) = x; }").unwrap_err();
        assert!(e.message.contains("skips y"), "{}", e.message);
    }

    #[test]
    fn point_must_name_a_constant() {
        let e = parse_theory("theory t { op f/1; point f; eq f(x) = x; }").unwrap_err();
        assert!(e.message.contains("not a declared constant"));
    }

    #[test]
    fn reserved_and_duplicate_operation_names_are_rejected() {
        let e = parse_theory("theory t { op x/1; }").unwrap_err();
        assert!(e.message.contains("reserved"));
        let e = parse_theory("theory t { op f/1; op f/2; }").unwrap_err();
        assert!(e.message.contains("duplicate"));
    }

    #[test]
    fn algebra_tables_are_validated_in_place() {
        let good = "algebra A : mv {\n size 2;\n op oplus = [[0,1],[1,1]];\n op neg = [1,0];\n op zero = 0;\n}";
        let a = parse_algebra(good).unwrap();
        assert_eq!(a.size(), 2);
        assert_eq!(a.theory(), "mv");
        assert_eq!(a.arity("oplus"), Some(2));
        assert_eq!(a.constant("zero"), Some(0));

        let short_row = good.replace("[[0,1],[1,1]]", "[[0,1],[1]]");
        let e = parse_algebra(&short_row).unwrap_err();
        assert!(e.message.contains("expected 2"), "{}", e.message);

        let out_of_range = good.replace("op neg = [1,0]", "op neg = [2,0]");
        let e = parse_algebra(&out_of_range).unwrap_err();
        assert!(e.message.contains("outside the carrier"), "{}", e.message);

        let ragged = good.replace("[[0,1],[1,1]]", "[[0,1],1]");
        assert!(parse_algebra(&ragged).is_err());
    }

    #[test]
    fn variables_cannot_head_applications() {
        let e = parse_theory("theory t { op f/1; eq x(f) = x; }").unwrap_err();
        assert!(e.message.contains("cannot take arguments"));
    }

    #[test]
    fn unexpected_trailing_input_is_reported() {
        let e = parse_theory("theory t { op f/1; eq f(x) = x; } extra").unwrap_err();
        assert!(e.message.contains("after"));
    }
}
