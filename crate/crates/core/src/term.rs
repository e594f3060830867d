//! Words over a concrete magma and free generators.
//!
//! A [`Term`] stands for an element of the free product of a free LPM on some
//! generators with a concrete magma `X`: constants embed `X`, generators are
//! free. Evaluation under an [`Assignment`] is the morphism sending each
//! generator to an element of `X` and fixing `X`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{EvalError, ParseError};
use crate::magma::{Elem, Magma, Op};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Unit,
    Const(Elem),
    Gen(String),
    Mul(Box<Term>, Box<Term>),
    Ldiv(Box<Term>, Box<Term>),
}

pub type Assignment = BTreeMap<String, Elem>;

impl Term {
    pub fn gen(name: impl Into<String>) -> Term {
        Term::Gen(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }

    pub fn ldiv(a: Term, b: Term) -> Term {
        Term::Ldiv(Box::new(a), Box::new(b))
    }

    pub fn node_count(&self) -> usize {
        match self {
            Term::Unit | Term::Const(_) | Term::Gen(_) => 1,
            Term::Mul(a, b) | Term::Ldiv(a, b) => 1 + a.node_count() + b.node_count(),
        }
    }

    /// Generator names in first-occurrence order, deduplicated.
    pub fn generators(&self) -> Vec<&str> {
        fn walk<'a>(t: &'a Term, out: &mut Vec<&'a str>) {
            match t {
                Term::Gen(g) if !out.contains(&g.as_str()) => out.push(g),
                Term::Mul(a, b) | Term::Ldiv(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                _ => {}
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    /// `x_1 \ (x_2 \ ( ... (x_n \ z)))` for a chain `x_1, .., x_n`.
    pub fn division_chain(chain: &[Elem], tail: Term) -> Term {
        chain.iter().rev().fold(tail, |acc, &x| Term::ldiv(Term::Const(x), acc))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Unit => f.write_str("e"),
            Term::Const(v) => write!(f, "{v}"),
            Term::Gen(g) => f.write_str(g),
            Term::Mul(a, b) => write!(f, "({a} * {b})"),
            Term::Ldiv(a, b) => write!(f, "({a} \\ {b})"),
        }
    }
}

// ---------------------------------------------------------------------------
// parsing

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(1, self.pos + 1, message)
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> String {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|&c| f(c)) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn expr(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            None => Err(self.err("unexpected end of term")),
            Some('(') => {
                self.pos += 1;
                let left = self.expr()?;
                match self.peek() {
                    Some(')') => {
                        self.pos += 1;
                        Ok(left)
                    }
                    Some(op @ ('*' | '\\')) => {
                        self.pos += 1;
                        let right = self.expr()?;
                        if self.peek() != Some(')') {
                            return Err(self.err("expected `)`"));
                        }
                        self.pos += 1;
                        Ok(if op == '*' { Term::mul(left, right) } else { Term::ldiv(left, right) })
                    }
                    _ => Err(self.err("expected `*`, `\\` or `)`")),
                }
            }
            Some(c) if c == '-' || c.is_ascii_digit() => {
                let start = self.pos;
                self.pos += 1;
                let digits = self.take_while(|c| c.is_ascii_digit());
                let text: String = self.chars[start..self.pos].iter().collect();
                if digits.is_empty() && c == '-' {
                    self.pos = start;
                    return Err(self.err("expected digits after `-`"));
                }
                text.parse()
                    .map(Term::Const)
                    .map_err(|_| ParseError::new(1, start + 1, format!("bad integer `{text}`")))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
                Ok(if name == "e" { Term::Unit } else { Term::Gen(name) })
            }
            Some(c) => Err(self.err(format!("unexpected `{c}`"))),
        }
    }
}

/// Parses `expr := 'e' | INT | IDENT | '(' expr ')' | '(' expr ('*' | '\') expr ')'`.
/// Every binary application is parenthesized.
pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0, src: text };
    let t = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err(format!("trailing input in `{}`", p.src.trim())));
    }
    Ok(t)
}

// ---------------------------------------------------------------------------
// evaluation

pub fn evaluate(t: &Term, m: &Magma, a: &Assignment) -> Result<Elem, EvalError> {
    match t {
        Term::Unit => Ok(m.unit()),
        Term::Const(v) if m.contains(*v) => Ok(*v),
        Term::Const(v) => Err(EvalError::ConstantOutsideCarrier(*v)),
        Term::Gen(g) => a.get(g).copied().ok_or_else(|| EvalError::UnboundGenerator(g.clone())),
        Term::Mul(l, r) => m.apply(Op::Mul, evaluate(l, m, a)?, evaluate(r, m, a)?),
        Term::Ldiv(l, r) => m.apply(Op::Ldiv, evaluate(l, m, a)?, evaluate(r, m, a)?),
    }
}

/// Whether `t` lies in the kernel of the evaluation sending `z` to `x`, i.e.
/// evaluates to the unit.
pub fn kernel_member(m: &Magma, x: Elem, t: &Term) -> Result<bool, EvalError> {
    if let Some(g) = t.generators().into_iter().find(|g| *g != "z") {
        return Err(EvalError::UnboundGenerator(g.to_string()));
    }
    let a = Assignment::from([("z".to_string(), x)]);
    Ok(evaluate(t, m, &a)? == m.unit())
}

// ---------------------------------------------------------------------------
// normalization

/// Result of [`normalize_counted`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub term: Term,
    pub steps: usize,
}

/// Rewrites bottom-up (innermost, leftmost first) with
///
/// * `e * t -> t`, `t * e -> t`, `e \ t -> t`
/// * `a * b -> (a*b)`, `a \ b -> (a\b)` on constants, and a constant equal to
///   the unit becomes `e`
/// * `s * (s \ t) -> t` when the two `s` are identical
///
/// Children are normalized before their parent, and every rewrite at a node
/// returns an already normal subterm, so a single pass suffices.
pub fn normalize(t: &Term, m: &Magma) -> Result<Term, EvalError> {
    normalize_counted(t, m).map(|n| n.term)
}

pub fn normalize_counted(t: &Term, m: &Magma) -> Result<Normalized, EvalError> {
    let mut steps = 0;
    let term = rewrite(t, m, &mut steps)?;
    Ok(Normalized { term, steps })
}

fn constant(v: Elem, m: &Magma) -> Term {
    if v == m.unit() {
        Term::Unit
    } else {
        Term::Const(v)
    }
}

fn rewrite(t: &Term, m: &Magma, steps: &mut usize) -> Result<Term, EvalError> {
    match t {
        Term::Unit | Term::Gen(_) => Ok(t.clone()),
        Term::Const(v) => {
            if *v == m.unit() {
                *steps += 1;
            }
            Ok(constant(*v, m))
        }
        Term::Mul(l, r) => {
            let l = rewrite(l, m, steps)?;
            let r = rewrite(r, m, steps)?;
            let out = match (l, r) {
                (Term::Unit, r) => r,
                (l, Term::Unit) => l,
                (Term::Const(a), Term::Const(b)) => constant(m.mul(a, b)?, m),
                (l, Term::Ldiv(s, inner)) if *s == l => *inner,
                (l, r) => return Ok(Term::mul(l, r)),
            };
            *steps += 1;
            Ok(out)
        }
        Term::Ldiv(l, r) => {
            let l = rewrite(l, m, steps)?;
            let r = rewrite(r, m, steps)?;
            let out = match (l, r) {
                (Term::Unit, r) => r,
                (Term::Const(a), Term::Const(b)) => constant(m.ldiv(a, b)?, m),
                (l, r) => return Ok(Term::ldiv(l, r)),
            };
            *steps += 1;
            Ok(out)
        }
    }
}
