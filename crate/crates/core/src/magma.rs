//! Carriers, domains and the concrete magma representations.
//!
//! A [`Magma`] is a set with a multiplication `*`, a left division `\` and a
//! distinguished unit. Nothing about the axioms is enforced here: tables and
//! rule sets that violate them load fine and are diagnosed by [`crate::check`].

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{DomainError, EvalError, TableError};
use crate::rules::{Carrier, Clause, RuleMagma};
use crate::subalgebra::SubPredicate;

/// Elements of every carrier are represented as integers. Finite carriers use
/// the indices `0..n`.
pub type Elem = i64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    Mul,
    Ldiv,
}

impl Op {
    pub fn name(self) -> &'static str {
        match self {
            Op::Mul => "mul",
            Op::Ldiv => "ldiv",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Op::Mul => "*",
            Op::Ldiv => "\\",
        }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Inclusive integer interval used to finitize checks on infinite carriers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    lo: Elem,
    hi: Elem,
}

impl Window {
    pub fn new(lo: Elem, hi: Elem) -> Result<Self, DomainError> {
        if lo > hi {
            return Err(DomainError::EmptyWindow { lo, hi });
        }
        Ok(Window { lo, hi })
    }

    /// `[-r, r]`.
    pub fn symmetric(r: Elem) -> Self {
        let r = r.abs();
        Window { lo: -r, hi: r }
    }

    pub fn lo(&self) -> Elem {
        self.lo
    }

    pub fn hi(&self) -> Elem {
        self.hi
    }

    pub fn contains(&self, v: Elem) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo) as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn iter(&self) -> std::ops::RangeInclusive<Elem> {
        self.lo..=self.hi
    }

    /// Intersection with `[min, max]`, or `None` when disjoint.
    pub fn clamp(&self, min: Elem, max: Elem) -> Option<Window> {
        let lo = self.lo.max(min);
        let hi = self.hi.min(max);
        (lo <= hi).then_some(Window { lo, hi })
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// The set of elements a check quantifies over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    /// The whole carrier; only available for finite magmas.
    Full,
    Window(Window),
}

impl From<Window> for Domain {
    fn from(w: Window) -> Self {
        Domain::Window(w)
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Full => f.write_str("full carrier"),
            Domain::Window(w) => write!(f, "window {w}"),
        }
    }
}

/// A magma given by two complete `n x n` tables over `{0, .., n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteMagma {
    name: String,
    unit: usize,
    mul: Vec<Vec<usize>>,
    ldiv: Vec<Vec<usize>>,
}

impl FiniteMagma {
    pub fn new(
        name: impl Into<String>,
        unit: usize,
        mul: Vec<Vec<usize>>,
        ldiv: Vec<Vec<usize>>,
    ) -> Result<Self, TableError> {
        let size = mul.len();
        if size == 0 {
            return Err(TableError::Empty);
        }
        if unit >= size {
            return Err(TableError::UnitOutOfRange { unit, size });
        }
        for (op, table) in [(Op::Mul, &mul), (Op::Ldiv, &ldiv)] {
            if table.len() != size {
                return Err(TableError::RowCount { op, rows: table.len(), size });
            }
            for (r, row) in table.iter().enumerate() {
                if row.len() != size {
                    return Err(TableError::RowLength { op, row: r, len: row.len(), size });
                }
                if let Some((c, &v)) = row.iter().enumerate().find(|(_, &v)| v >= size) {
                    return Err(TableError::EntryOutOfRange { op, row: r, col: c, value: v, size });
                }
            }
        }
        Ok(FiniteMagma { name: name.into(), unit, mul, ldiv })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.mul.len()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn mul_table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn ldiv_table(&self) -> &[Vec<usize>] {
        &self.ldiv
    }

    pub fn table(&self, op: Op) -> &[Vec<usize>] {
        match op {
            Op::Mul => &self.mul,
            Op::Ldiv => &self.ldiv,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Overwrites a single table cell. Used to build broken variants for diagnostics.
    pub fn set(&mut self, op: Op, a: usize, b: usize, value: usize) -> Result<(), TableError> {
        let size = self.size();
        if a >= size || b >= size || value >= size {
            return Err(TableError::EntryOutOfRange { op, row: a, col: b, value, size });
        }
        match op {
            Op::Mul => self.mul[a][b] = value,
            Op::Ldiv => self.ldiv[a][b] = value,
        }
        Ok(())
    }

    fn index(&self, op: Op, a: Elem, b: Elem) -> Result<(usize, usize), EvalError> {
        let n = self.size() as Elem;
        if !(0..n).contains(&a) || !(0..n).contains(&b) {
            return Err(EvalError::OutOfCarrier { op, x: a, y: b });
        }
        Ok((a as usize, b as usize))
    }

    pub fn apply(&self, op: Op, a: Elem, b: Elem) -> Result<Elem, EvalError> {
        let (i, j) = self.index(op, a, b)?;
        Ok(self.table(op)[i][j] as Elem)
    }
}

/// Multiplication obtained from a left division by taking preimages under
/// each `D_y`; see [`crate::construct`].
///
/// The preimage maps are computed over a window, so `y * x` is only defined
/// for `y` inside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructedMagma {
    pub(crate) name: String,
    pub(crate) carrier: Carrier,
    pub(crate) ldiv: Vec<Clause>,
    pub(crate) window: Window,
    /// `preimages[y - window.lo]` maps `D_y(d)` back to `d` for `d` in the window.
    pub(crate) preimages: Vec<HashMap<Elem, Elem>>,
}

impl ConstructedMagma {
    pub fn window(&self) -> Window {
        self.window
    }

    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    pub fn ldiv_clauses(&self) -> &[Clause] {
        &self.ldiv
    }

    fn mul(&self, y: Elem, x: Elem) -> Result<Elem, EvalError> {
        if !self.carrier.contains(y) || !self.carrier.contains(x) {
            return Err(EvalError::OutOfCarrier { op: Op::Mul, x: y, y: x });
        }
        if !self.window.contains(y) {
            return Err(EvalError::OutsideConstruction { x: y, y: x, window: self.window });
        }
        let map = &self.preimages[(y - self.window.lo()) as usize];
        Ok(map.get(&x).copied().unwrap_or(y))
    }
}

/// A magma restricted to a subset of its carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubMagma {
    pub(crate) base: Box<Magma>,
    pub(crate) predicate: SubPredicate,
}

impl SubMagma {
    pub fn base(&self) -> &Magma {
        &self.base
    }

    pub fn predicate(&self) -> &SubPredicate {
        &self.predicate
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Magma {
    Finite(FiniteMagma),
    Rule(RuleMagma),
    Constructed(ConstructedMagma),
    Sub(SubMagma),
}

impl From<FiniteMagma> for Magma {
    fn from(m: FiniteMagma) -> Self {
        Magma::Finite(m)
    }
}

impl From<RuleMagma> for Magma {
    fn from(m: RuleMagma) -> Self {
        Magma::Rule(m)
    }
}

impl Magma {
    pub fn name(&self) -> String {
        match self {
            Magma::Finite(m) => m.name.clone(),
            Magma::Rule(m) => m.name.clone(),
            Magma::Constructed(m) => m.name.clone(),
            Magma::Sub(s) => format!("{}|{}", s.base.name(), s.predicate),
        }
    }

    pub fn unit(&self) -> Elem {
        match self {
            Magma::Finite(m) => m.unit as Elem,
            Magma::Rule(_) | Magma::Constructed(_) => 0,
            Magma::Sub(s) => s.base.unit(),
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Magma::Finite(_) => true,
            Magma::Sub(s) => s.base.is_finite() || matches!(s.predicate, SubPredicate::Set(_)),
            _ => false,
        }
    }

    pub fn contains(&self, v: Elem) -> bool {
        match self {
            Magma::Finite(m) => (0..m.size() as Elem).contains(&v),
            Magma::Rule(m) => m.carrier().contains(v),
            Magma::Constructed(m) => m.carrier.contains(v),
            Magma::Sub(s) => s.predicate.holds(v) && s.base.contains(v),
        }
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Result<Elem, EvalError> {
        self.apply(Op::Mul, a, b)
    }

    pub fn ldiv(&self, a: Elem, b: Elem) -> Result<Elem, EvalError> {
        self.apply(Op::Ldiv, a, b)
    }

    pub fn apply(&self, op: Op, a: Elem, b: Elem) -> Result<Elem, EvalError> {
        match self {
            Magma::Finite(m) => m.apply(op, a, b),
            Magma::Rule(m) => m.apply(op, a, b),
            Magma::Constructed(m) => match op {
                Op::Mul => m.mul(a, b),
                Op::Ldiv => crate::rules::eval_clauses(&m.ldiv, m.carrier, op, a, b),
            },
            Magma::Sub(s) => {
                if !self.contains(a) || !self.contains(b) {
                    return Err(EvalError::OutOfCarrier { op, x: a, y: b });
                }
                let value = s.base.apply(op, a, b)?;
                if !s.predicate.holds(value) {
                    return Err(EvalError::ResultOutsideCarrier { op, x: a, y: b, value });
                }
                Ok(value)
            }
        }
    }

    /// The bounds a window has to be clamped to for this carrier.
    fn bounds(&self) -> (Elem, Elem) {
        match self {
            Magma::Finite(m) => (0, m.size() as Elem - 1),
            Magma::Rule(m) => m.carrier().bounds(),
            Magma::Constructed(m) => m.carrier.bounds(),
            Magma::Sub(s) => {
                let (lo, hi) = s.base.bounds();
                match &s.predicate {
                    SubPredicate::NonNeg => (lo.max(0), hi),
                    SubPredicate::NonPos => (lo, hi.min(0)),
                    _ => (lo, hi),
                }
            }
        }
    }

    /// Resolves a domain against this carrier, clamping windows to it.
    ///
    /// `Full` is rejected for infinite carriers; a window that does not meet
    /// the carrier is rejected as well.
    pub fn effective_domain(&self, dom: &Domain) -> Result<Domain, DomainError> {
        match dom {
            Domain::Full if self.is_finite() => Ok(Domain::Full),
            Domain::Full => Err(DomainError::InfiniteCarrier { name: self.name() }),
            Domain::Window(w) => {
                let (lo, hi) = self.bounds();
                w.clamp(lo, hi).map(Domain::Window).ok_or(DomainError::DisjointWindow { window: *w, name: self.name() })
            }
        }
    }

    /// Elements of the domain, ascending.
    pub fn elements(&self, dom: &Domain) -> Result<Vec<Elem>, DomainError> {
        match self.effective_domain(dom)? {
            Domain::Full => match self {
                Magma::Finite(m) => Ok((0..m.size() as Elem).collect()),
                Magma::Sub(s) => match &s.predicate {
                    SubPredicate::Set(set) => Ok(set.iter().copied().filter(|&v| s.base.contains(v)).collect()),
                    _ => Ok(s.base.elements(&Domain::Full)?.into_iter().filter(|&v| s.predicate.holds(v)).collect()),
                },
                _ => unreachable!("full domain on infinite carrier"),
            },
            Domain::Window(w) => Ok(w.iter().filter(|&v| self.contains(v)).collect()),
        }
    }

    pub fn element_set(&self, dom: &Domain) -> Result<BTreeSet<Elem>, DomainError> {
        Ok(self.elements(dom)?.into_iter().collect())
    }

    pub fn as_finite(&self) -> Option<&FiniteMagma> {
        match self {
            Magma::Finite(m) => Some(m),
            _ => None,
        }
    }

    pub fn as_rule(&self) -> Option<&RuleMagma> {
        match self {
            Magma::Rule(m) => Some(m),
            _ => None,
        }
    }
}
