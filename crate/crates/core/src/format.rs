//! The `lpm-table v1` and `lpm-rules v1` text formats.
//!
//! Both are line based; `#` starts a comment and tokens are separated by
//! whitespace. A table file:
//!
//! ```text
//! lpm-table v1
//! name z2
//! size 2
//! unit 0
//! mul
//! 0 1
//! 1 0
//! ldiv
//! 0 1
//! 1 0
//! ```
//!
//! A rule file lists guarded clauses per operation, tried in order:
//!
//! ```text
//! lpm-rules v1
//! name nwp-N
//! carrier N
//! ldiv
//!   x == 0 -> y
//!   x > 0 -> y + 1
//! mul
//!   y == 0 -> x
//!   x == 0 -> y
//!   x > 0 && y > 0 -> y - 1
//! ```

use std::fmt::Write as _;

use crate::construct::DivisionStructure;
use crate::error::{Error, ParseError};
use crate::magma::{FiniteMagma, Magma, Op};
use crate::rules::{Affine, Atom, Carrier, Clause, Cmp, Rhs, RuleMagma, Var};

pub const TABLE_MAGIC: &str = "lpm-table v1";
pub const RULES_MAGIC: &str = "lpm-rules v1";

/// A non-blank line with its comment removed. `line` is 1-based.
struct Line<'a> {
    line: usize,
    text: &'a str,
}

impl<'a> Line<'a> {
    /// Whitespace-separated tokens with 1-based columns.
    fn tokens(&self) -> Vec<(usize, &'a str)> {
        let mut out = Vec::new();
        let mut start = None;
        for (i, c) in self.text.char_indices() {
            match (c.is_whitespace(), start) {
                (true, Some(s)) => {
                    out.push((s, &self.text[s..i]));
                    start = None;
                }
                (false, None) => start = Some(i),
                _ => {}
            }
        }
        if let Some(s) = start {
            out.push((s, &self.text[s..]));
        }
        out.into_iter().map(|(s, t)| (self.text[..s].chars().count() + 1, t)).collect()
    }

    fn err(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError::new(self.line, column, message)
    }

    fn first_column(&self) -> usize {
        self.text.chars().take_while(|c| c.is_whitespace()).count() + 1
    }
}

fn lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let text = raw.split('#').next().unwrap_or("").trim_end();
            (!text.trim().is_empty()).then_some(Line { line: i + 1, text })
        })
        .collect()
}

fn expect_magic(lines: &[Line<'_>], magic: &str) -> Result<(), ParseError> {
    let first = lines.first().ok_or_else(|| ParseError::new(1, 1, format!("empty input, expected `{magic}`")))?;
    let words: Vec<&str> = first.tokens().iter().map(|t| t.1).collect();
    if words.join(" ") != magic {
        return Err(first.err(first.first_column(), format!("expected `{magic}`")));
    }
    Ok(())
}

/// A single-valued header line `key value`.
fn header_value<'a>(line: &Line<'a>, toks: &[(usize, &'a str)]) -> Result<(usize, &'a str), ParseError> {
    match toks {
        [_, v] => Ok(*v),
        [(c, k)] => Err(line.err(*c, format!("`{k}` needs a value"))),
        [_, _, (c, _), ..] => Err(line.err(*c, "unexpected token")),
        [] => unreachable!(),
    }
}

struct TableParts {
    name: String,
    size: usize,
    unit: usize,
    mul: Option<Vec<Vec<usize>>>,
    ldiv: Option<Vec<Vec<usize>>>,
}

fn parse_table_parts(text: &str, require_mul: bool) -> Result<TableParts, ParseError> {
    let lines = lines(text);
    expect_magic(&lines, TABLE_MAGIC)?;
    let mut name = None;
    let mut size: Option<usize> = None;
    let mut unit: Option<(usize, usize, usize)> = None;
    let mut mul: Option<Vec<Vec<usize>>> = None;
    let mut ldiv: Option<Vec<Vec<usize>>> = None;
    let mut current: Option<Op> = None;
    let mut last_line = 1;

    for line in &lines[1..] {
        last_line = line.line;
        let toks = line.tokens();
        let (col, key) = toks[0];
        match key {
            "name" | "size" | "unit" => {
                if current.is_some() {
                    return Err(line.err(col, format!("`{key}` must precede the tables")));
                }
                let (vcol, value) = header_value(line, &toks)?;
                match key {
                    "name" if name.is_some() => return Err(line.err(col, "duplicate `name`")),
                    "name" => name = Some(value.to_string()),
                    "size" if size.is_some() => return Err(line.err(col, "duplicate `size`")),
                    "size" => match value.parse::<usize>() {
                        Ok(n) if n > 0 => size = Some(n),
                        _ => return Err(line.err(vcol, format!("invalid size `{value}`"))),
                    },
                    _ if unit.is_some() => return Err(line.err(col, "duplicate `unit`")),
                    _ => {
                        let u =
                            value.parse::<usize>().map_err(|_| line.err(vcol, format!("invalid unit `{value}`")))?;
                        unit = Some((u, line.line, vcol));
                    }
                }
            }
            "mul" | "ldiv" => {
                let op = if key == "mul" { Op::Mul } else { Op::Ldiv };
                if toks.len() > 1 {
                    return Err(line.err(toks[1].0, "unexpected token after section name"));
                }
                let n = size.ok_or_else(|| line.err(col, "`size` must precede the tables"))?;
                if let Some(prev) = current {
                    let rows = if prev == Op::Mul { &mul } else { &ldiv };
                    let got = rows.as_ref().map_or(0, Vec::len);
                    if got != n {
                        return Err(line.err(col, format!("{prev} table has {got} rows, expected {n}")));
                    }
                }
                let seen_ldiv = ldiv.is_some();
                let slot = if op == Op::Mul { &mut mul } else { &mut ldiv };
                if slot.is_some() {
                    return Err(line.err(col, format!("duplicate `{key}` section")));
                }
                if op == Op::Mul && seen_ldiv {
                    return Err(line.err(col, "`mul` must precede `ldiv`"));
                }
                *slot = Some(Vec::with_capacity(n));
                current = Some(op);
            }
            _ => {
                let op = current.ok_or_else(|| line.err(col, format!("unexpected `{key}`")))?;
                let n = size.expect("size precedes sections");
                let rows = if op == Op::Mul { mul.as_mut() } else { ldiv.as_mut() }.expect("section open");
                if rows.len() == n {
                    return Err(line.err(col, format!("{op} table has more than {n} rows")));
                }
                if toks.len() != n {
                    let c = toks.get(n).map_or(col, |t| t.0);
                    return Err(line.err(c, format!("row has {} entries, expected {n}", toks.len())));
                }
                let mut row = Vec::with_capacity(n);
                for &(c, t) in &toks {
                    let v = t.parse::<usize>().map_err(|_| line.err(c, format!("invalid entry `{t}`")))?;
                    if v >= n {
                        return Err(line.err(c, format!("entry out of range: {v} >= {n}")));
                    }
                    row.push(v);
                }
                rows.push(row);
            }
        }
    }

    let end = |msg: String| ParseError::new(last_line, 1, msg);
    let name = name.ok_or_else(|| end("missing `name`".into()))?;
    let size = size.ok_or_else(|| end("missing `size`".into()))?;
    let (unit, uline, ucol) = unit.ok_or_else(|| end("missing `unit`".into()))?;
    if unit >= size {
        return Err(ParseError::new(uline, ucol, format!("unit {unit} out of range for size {size}")));
    }
    for (op, rows) in [(Op::Mul, &mul), (Op::Ldiv, &ldiv)] {
        match rows {
            Some(r) if r.len() != size => return Err(end(format!("{op} table has {} rows, expected {size}", r.len()))),
            None if op == Op::Ldiv || require_mul => return Err(end(format!("missing `{op}` section"))),
            _ => {}
        }
    }
    Ok(TableParts { name, size, unit, mul, ldiv })
}

pub fn parse_table(text: &str) -> Result<FiniteMagma, ParseError> {
    let p = parse_table_parts(text, true)?;
    FiniteMagma::new(p.name, p.unit, p.mul.unwrap(), p.ldiv.unwrap()).map_err(|e| ParseError::new(1, 1, e.to_string()))
}

// ---------------------------------------------------------------------------
// clause expressions

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Sym(&'static str),
}

const SYMBOLS: [&str; 14] = ["==", "!=", ">=", "<=", "&&", "->", ">", "<", "+", "-", "*", "/", "(", ")"];

/// Tokens of a clause line with 1-based columns.
fn lex(line: &Line<'_>) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = line.text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let v = s.parse::<i64>().map_err(|_| line.err(col, format!("integer `{s}` too large")))?;
            out.push((col, Tok::Int(v)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((col, Tok::Ident(chars[start..i].iter().collect())));
        } else {
            let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
            let sym = SYMBOLS
                .iter()
                .find(|s| rest.starts_with(**s))
                .ok_or_else(|| line.err(col, format!("unexpected character `{c}`")))?;
            i += sym.chars().count();
            out.push((col, Tok::Sym(sym)));
        }
    }
    Ok(out)
}

struct Cursor<'l, 'a> {
    line: &'l Line<'a>,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    /// Column just past the end of the line, for errors at end of input.
    end: usize,
}

impl Cursor<'_, '_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.1.clone());
        self.pos += 1;
        t
    }

    fn eat(&mut self, sym: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Sym(s)) if *s == sym) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        self.line.err(self.col(), message)
    }

    fn expect(&mut self, sym: &str) -> Result<(), ParseError> {
        if self.eat(sym) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{sym}`")))
        }
    }
}

fn var_of(name: &str) -> Option<Var> {
    match name {
        "x" => Some(Var::X),
        "y" => Some(Var::Y),
        _ => None,
    }
}

fn parse_atom(cur: &mut Cursor<'_, '_>) -> Result<Atom, ParseError> {
    let col = cur.col();
    match cur.next() {
        Some(Tok::Ident(name)) if name == "even" || name == "odd" => {
            cur.expect("(")?;
            let vcol = cur.col();
            let v = match cur.next() {
                Some(Tok::Ident(v)) => var_of(&v),
                _ => None,
            }
            .ok_or_else(|| cur.line.err(vcol, "expected `x` or `y`"))?;
            cur.expect(")")?;
            Ok(if name == "even" { Atom::Even(v) } else { Atom::Odd(v) })
        }
        Some(Tok::Ident(name)) => {
            let lhs = var_of(&name).ok_or_else(|| cur.line.err(col, format!("unknown name `{name}` in guard")))?;
            let ccol = cur.col();
            let cmp = match cur.next() {
                Some(Tok::Sym("==")) => Cmp::Eq,
                Some(Tok::Sym("!=")) => Cmp::Ne,
                Some(Tok::Sym(">")) => Cmp::Gt,
                Some(Tok::Sym("<")) => Cmp::Lt,
                Some(Tok::Sym(">=")) => Cmp::Ge,
                Some(Tok::Sym("<=")) => Cmp::Le,
                _ => return Err(cur.line.err(ccol, "expected a comparison operator")),
            };
            let rcol = cur.col();
            let rhs = match cur.next() {
                Some(Tok::Int(0)) => Rhs::Zero,
                Some(Tok::Ident(v)) => match var_of(&v) {
                    Some(v) if v != lhs => Rhs::Var(v),
                    _ => return Err(cur.line.err(rcol, "expected `0` or the other variable")),
                },
                _ => return Err(cur.line.err(rcol, "expected `0` or the other variable")),
            };
            Ok(Atom::Compare { lhs, cmp, rhs })
        }
        _ => Err(cur.line.err(col, "expected a guard atom")),
    }
}

fn parse_guard(cur: &mut Cursor<'_, '_>) -> Result<Vec<Atom>, ParseError> {
    if cur.peek() == Some(&Tok::Ident("true".into())) {
        cur.next();
        return Ok(Vec::new());
    }
    let mut atoms = vec![parse_atom(cur)?];
    while cur.eat("&&") {
        atoms.push(parse_atom(cur)?);
    }
    Ok(atoms)
}

/// `a*x + b*y + c`, built with checked arithmetic.
#[derive(Clone, Copy, Default)]
struct Lin {
    x: i64,
    y: i64,
    c: i64,
}

impl Lin {
    fn is_const(&self) -> bool {
        self.x == 0 && self.y == 0
    }

    fn scale(self, k: i64) -> Option<Lin> {
        Some(Lin { x: self.x.checked_mul(k)?, y: self.y.checked_mul(k)?, c: self.c.checked_mul(k)? })
    }

    fn add(self, o: Lin) -> Option<Lin> {
        Some(Lin { x: self.x.checked_add(o.x)?, y: self.y.checked_add(o.y)?, c: self.c.checked_add(o.c)? })
    }
}

fn overflow(cur: &Cursor<'_, '_>) -> ParseError {
    cur.err("coefficient overflow")
}

fn parse_factor(cur: &mut Cursor<'_, '_>) -> Result<Lin, ParseError> {
    let col = cur.col();
    match cur.next() {
        Some(Tok::Int(v)) => Ok(Lin { c: v, ..Lin::default() }),
        Some(Tok::Ident(name)) => match var_of(&name) {
            Some(Var::X) => Ok(Lin { x: 1, ..Lin::default() }),
            Some(Var::Y) => Ok(Lin { y: 1, ..Lin::default() }),
            None => Err(cur.line.err(col, format!("unknown name `{name}` in result"))),
        },
        Some(Tok::Sym("-")) => parse_factor(cur)?.scale(-1).ok_or_else(|| overflow(cur)),
        Some(Tok::Sym("(")) => {
            let (inner, _) = parse_sum(cur)?;
            cur.expect(")")?;
            Ok(inner)
        }
        _ => Err(cur.line.err(col, "expected a number, `x`, `y` or `(`")),
    }
}

fn parse_product(cur: &mut Cursor<'_, '_>) -> Result<Lin, ParseError> {
    let mut acc = parse_factor(cur)?;
    while cur.peek() == Some(&Tok::Sym("*")) {
        let col = cur.col();
        cur.next();
        let rhs = parse_factor(cur)?;
        acc = if acc.is_const() {
            rhs.scale(acc.c)
        } else if rhs.is_const() {
            acc.scale(rhs.c)
        } else {
            return Err(cur.line.err(col, "result must be affine in x and y"));
        }
        .ok_or_else(|| overflow(cur))?;
    }
    Ok(acc)
}

/// Returns the sum and how many top-level terms it had.
fn parse_sum(cur: &mut Cursor<'_, '_>) -> Result<(Lin, usize), ParseError> {
    let mut acc = parse_product(cur)?;
    let mut terms = 1;
    loop {
        let sign = match cur.peek() {
            Some(Tok::Sym("+")) => 1,
            Some(Tok::Sym("-")) => -1,
            _ => return Ok((acc, terms)),
        };
        cur.next();
        let t = parse_product(cur)?.scale(sign).ok_or_else(|| overflow(cur))?;
        acc = acc.add(t).ok_or_else(|| overflow(cur))?;
        terms += 1;
    }
}

fn parse_result(cur: &mut Cursor<'_, '_>) -> Result<Affine, ParseError> {
    let (lin, terms) = parse_sum(cur)?;
    let mut halve = false;
    if cur.peek() == Some(&Tok::Sym("/")) {
        if terms > 1 {
            return Err(cur.err("parenthesize the dividend of `/ 2`"));
        }
        cur.next();
        let col = cur.col();
        match cur.next() {
            Some(Tok::Int(2)) => halve = true,
            _ => return Err(cur.line.err(col, "only exact division by 2 is supported")),
        }
    }
    Ok(Affine { x_coef: lin.x, y_coef: lin.y, constant: lin.c, halve })
}

fn parse_clause(line: &Line<'_>) -> Result<Clause, ParseError> {
    let toks = lex(line)?;
    let mut cur = Cursor { line, toks, pos: 0, end: line.text.chars().count() + 1 };
    let guard = parse_guard(&mut cur)?;
    cur.expect("->")?;
    let result = parse_result(&mut cur)?;
    if cur.peek().is_some() {
        return Err(cur.err("unexpected token"));
    }
    Ok(Clause { guard, result })
}

struct RuleParts {
    name: String,
    carrier: Carrier,
    mul: Option<Vec<Clause>>,
    ldiv: Option<Vec<Clause>>,
}

fn parse_rule_parts(text: &str, require_mul: bool) -> Result<RuleParts, ParseError> {
    let lines = lines(text);
    expect_magic(&lines, RULES_MAGIC)?;
    let mut name = None;
    let mut carrier = None;
    let mut sections: [(Option<Vec<Clause>>, usize); 2] = [(None, 0), (None, 0)];
    let mut current: Option<usize> = None;
    let mut last_line = 1;

    for line in &lines[1..] {
        last_line = line.line;
        let toks = line.tokens();
        let (col, key) = toks[0];
        match (key, toks.len()) {
            ("name" | "carrier", _) if current.is_none() => {
                let (vcol, value) = header_value(line, &toks)?;
                if key == "name" {
                    if name.replace(value.to_string()).is_some() {
                        return Err(line.err(col, "duplicate `name`"));
                    }
                } else {
                    let c = match value {
                        "N" => Carrier::N,
                        "Z" => Carrier::Z,
                        _ => return Err(line.err(vcol, format!("unknown carrier `{value}` (N or Z)"))),
                    };
                    if carrier.replace(c).is_some() {
                        return Err(line.err(col, "duplicate `carrier`"));
                    }
                }
            }
            ("mul" | "ldiv", 1) => {
                if let Some(prev) = current {
                    if sections[prev].0.as_ref().is_some_and(Vec::is_empty) {
                        let (_, at) = sections[prev];
                        return Err(ParseError::new(at, 1, "empty section"));
                    }
                }
                if name.is_none() || carrier.is_none() {
                    return Err(line.err(col, "`name` and `carrier` must precede the sections"));
                }
                let idx = usize::from(key == "ldiv");
                if sections[idx].0.is_some() {
                    return Err(line.err(col, format!("duplicate `{key}` section")));
                }
                sections[idx] = (Some(Vec::new()), line.line);
                current = Some(idx);
            }
            _ => {
                let idx = current.ok_or_else(|| line.err(col, format!("unexpected `{key}`")))?;
                let clause = parse_clause(line)?;
                sections[idx].0.as_mut().expect("section open").push(clause);
            }
        }
    }

    let end = |msg: &str| ParseError::new(last_line, 1, msg);
    let name = name.ok_or_else(|| end("missing `name`"))?;
    let carrier = carrier.ok_or_else(|| end("missing `carrier`"))?;
    let [(mul, mul_at), (ldiv, ldiv_at)] = sections;
    for (key, clauses, at) in [("mul", &mul, mul_at), ("ldiv", &ldiv, ldiv_at)] {
        match clauses {
            Some(c) if c.is_empty() => return Err(ParseError::new(at, 1, "empty section")),
            None if key == "ldiv" || require_mul => return Err(end(&format!("missing `{key}` section"))),
            _ => {}
        }
    }
    Ok(RuleParts { name, carrier, mul, ldiv })
}

pub fn parse_rules(text: &str) -> Result<RuleMagma, ParseError> {
    let p = parse_rule_parts(text, true)?;
    Ok(RuleMagma::new(p.name, p.carrier, p.mul.unwrap(), p.ldiv.unwrap()))
}

fn first_word(text: &str) -> Option<String> {
    lines(text).first().map(|l| l.tokens().iter().map(|t| t.1).collect::<Vec<_>>().join(" "))
}

/// Parses either format, chosen by the header line.
pub fn parse_magma(text: &str) -> Result<Magma, ParseError> {
    match first_word(text).as_deref() {
        Some(TABLE_MAGIC) => parse_table(text).map(Magma::Finite),
        Some(RULES_MAGIC) => parse_rules(text).map(Magma::Rule),
        _ => Err(ParseError::new(1, 1, format!("expected `{TABLE_MAGIC}` or `{RULES_MAGIC}`"))),
    }
}

/// Parses a division structure: either format with the `mul` section optional.
/// A `mul` section, if present, is ignored.
pub fn parse_division(text: &str) -> Result<DivisionStructure, ParseError> {
    match first_word(text).as_deref() {
        Some(TABLE_MAGIC) => {
            let p = parse_table_parts(text, false)?;
            debug_assert_eq!(p.ldiv.as_ref().map(Vec::len), Some(p.size));
            Ok(DivisionStructure::Table { name: p.name, unit: p.unit, ldiv: p.ldiv.unwrap() })
        }
        Some(RULES_MAGIC) => {
            let p = parse_rule_parts(text, false)?;
            Ok(DivisionStructure::Rules { name: p.name, carrier: p.carrier, ldiv: p.ldiv.unwrap() })
        }
        _ => Err(ParseError::new(1, 1, format!("expected `{TABLE_MAGIC}` or `{RULES_MAGIC}`"))),
    }
}

fn write_rows(out: &mut String, rows: &[Vec<usize>]) {
    for row in rows {
        let cells: Vec<String> = row.iter().map(usize::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
}

pub fn print_table(m: &FiniteMagma) -> String {
    let mut out = String::new();
    writeln!(out, "{TABLE_MAGIC}\nname {}\nsize {}\nunit {}\nmul", m.name(), m.size(), m.unit()).unwrap();
    write_rows(&mut out, m.mul_table());
    out.push_str("ldiv\n");
    write_rows(&mut out, m.ldiv_table());
    out
}

fn write_clauses(out: &mut String, clauses: &[Clause]) {
    for c in clauses {
        writeln!(out, "  {c}").unwrap();
    }
}

pub fn print_rules(m: &RuleMagma) -> String {
    let mut out = String::new();
    writeln!(out, "{RULES_MAGIC}\nname {}\ncarrier {}\nldiv", m.name(), m.carrier()).unwrap();
    write_clauses(&mut out, m.ldiv_clauses());
    out.push_str("mul\n");
    write_clauses(&mut out, m.mul_clauses());
    out
}

/// Canonical text of a table or rule magma. Restricted and constructed magmas
/// have no file representation.
pub fn print_magma(m: &Magma) -> Result<String, Error> {
    match m {
        Magma::Finite(t) => Ok(print_table(t)),
        Magma::Rule(r) => Ok(print_rules(r)),
        _ => Err(Error::Unsupported(format!("`{}` has no file representation", m.name()))),
    }
}

pub fn print_division(d: &DivisionStructure) -> String {
    let mut out = String::new();
    match d {
        DivisionStructure::Table { name, unit, ldiv } => {
            writeln!(out, "{TABLE_MAGIC}\nname {name}\nsize {}\nunit {unit}\nldiv", ldiv.len()).unwrap();
            write_rows(&mut out, ldiv);
        }
        DivisionStructure::Rules { name, carrier, ldiv } => {
            writeln!(out, "{RULES_MAGIC}\nname {name}\ncarrier {carrier}\nldiv").unwrap();
            write_clauses(&mut out, ldiv);
        }
    }
    out
}
