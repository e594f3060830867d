//! Axiom and property checks.
//!
//! Every check scans a finite domain in row-major ascending order (`x` outer,
//! `y` inner) and stops at the first violation, so counterexamples are
//! deterministic. Reports carry the effective domain they were run on; a pass
//! on a window of an infinite carrier is sampled evidence, not a proof.

use std::collections::HashMap;
use std::fmt;

use crate::error::{DomainError, EvalError};
use crate::magma::{Domain, Elem, Magma, Op};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Property {
    /// `y = x * (x \ y)`
    Identity1,
    /// `y = x \ (x * y)`
    Identity2,
    /// `x = e * x = x * e`
    Identity3,
    /// `x \ x = e`
    XDivX,
    /// every `D_y: x -> y \ x` is injective
    DivisionInjective,
    /// `e \ x = x`
    DivisionByUnit,
    /// `x \ y = e` implies `x = y`
    PseudoCancellation,
    /// closed under `*`, `\` and contains `e`
    Closure,
}

impl Property {
    pub fn key(self) -> &'static str {
        match self {
            Property::Identity1 => "identity1",
            Property::Identity2 => "identity2",
            Property::Identity3 => "identity3",
            Property::XDivX => "xdivx",
            Property::DivisionInjective => "division-injective",
            Property::DivisionByUnit => "division-by-unit",
            Property::PseudoCancellation => "pseudo-cancellation",
            Property::Closure => "closure",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Property::Identity1 => "y = x * (x \\ y)",
            Property::Identity2 => "y = x \\ (x * y)",
            Property::Identity3 => "x = e * x = x * e",
            Property::XDivX => "x \\ x = e",
            Property::DivisionInjective => "D_y injective",
            Property::DivisionByUnit => "e \\ x = x",
            Property::PseudoCancellation => "x \\ y = e implies x = y",
            Property::Closure => "closed under *, \\ and e",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// The first failing instance of a property.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Violation {
    /// A two-variable equation evaluated to `found` instead of `expected`.
    Pair { x: Elem, y: Elem, found: Elem, expected: Elem },
    /// `e * x` (left) or `x * e` (right) is not `x`.
    Unit { x: Elem, side: Side, found: Elem },
    /// `x \ x = found`, not the unit.
    Diagonal { x: Elem, found: Elem },
    /// `y \ first = y \ second = value` with `first != second`.
    NotInjective { y: Elem, first: Elem, second: Elem, value: Elem },
    /// `e \ x = found`, not `x`.
    DivisionByUnit { x: Elem, found: Elem },
    /// `x \ y = e` although `x != y`.
    OffDiagonalUnit { x: Elem, y: Elem },
    /// The unit is not in the subset.
    UnitMissing { unit: Elem },
    /// `x op y = value` leaves the subset.
    NotClosed { op: Op, x: Elem, y: Elem, value: Elem },
}

impl Violation {
    /// Arguments of the failing instance.
    pub fn at(&self) -> Vec<Elem> {
        match *self {
            Violation::Pair { x, y, .. } => vec![x, y],
            Violation::Unit { x, .. } => vec![x],
            Violation::Diagonal { x, .. } => vec![x],
            Violation::NotInjective { y, first, second, .. } => vec![y, first, second],
            Violation::DivisionByUnit { x, .. } => vec![x],
            Violation::OffDiagonalUnit { x, y } => vec![x, y],
            Violation::UnitMissing { unit } => vec![unit],
            Violation::NotClosed { x, y, .. } => vec![x, y],
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Pair { x, y, found, expected } => {
                write!(f, "at ({x}, {y}): got {found}, expected {expected}")
            }
            Violation::Unit { x, side: Side::Left, found } => write!(f, "at {x}: e * {x} = {found}"),
            Violation::Unit { x, side: Side::Right, found } => write!(f, "at {x}: {x} * e = {found}"),
            Violation::Diagonal { x, found } => write!(f, "at {x}: {x} \\ {x} = {found}"),
            Violation::NotInjective { y, first, second, value } => {
                write!(f, "at y = {y}: {y} \\ {first} = {y} \\ {second} = {value}")
            }
            Violation::DivisionByUnit { x, found } => write!(f, "at {x}: e \\ {x} = {found}"),
            Violation::OffDiagonalUnit { x, y } => write!(f, "at ({x}, {y}): {x} \\ {y} = e"),
            Violation::UnitMissing { unit } => write!(f, "unit {unit} not in subset"),
            Violation::NotClosed { op, x, y, value } => {
                write!(f, "at ({x}, {y}): {x} {} {y} = {value} outside subset", op.symbol())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(Violation),
    Error(EvalError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub property: Property,
    pub domain: Domain,
    pub outcome: Outcome,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        matches!(self.outcome, Outcome::Pass)
    }

    pub fn violation(&self) -> Option<&Violation> {
        match &self.outcome {
            Outcome::Fail(v) => Some(v),
            _ => None,
        }
    }

    /// One-line summary, e.g. `pass` or `fail at (1, 2): got 0, expected 2`.
    pub fn summary(&self) -> String {
        match &self.outcome {
            Outcome::Pass => "pass".to_string(),
            Outcome::Fail(v) => format!("fail {v}"),
            Outcome::Error(e) => format!("error: {e}"),
        }
    }
}

/// Runs `scan`, turning the early exit into an [`Outcome`].
fn run(
    m: &Magma,
    dom: &Domain,
    property: Property,
    scan: impl FnOnce(&[Elem]) -> Result<Option<Violation>, EvalError>,
) -> Result<CheckReport, DomainError> {
    let domain = m.effective_domain(dom)?;
    let elems = m.elements(&domain)?;
    let outcome = match scan(&elems) {
        Ok(None) => Outcome::Pass,
        Ok(Some(v)) => Outcome::Fail(v),
        Err(e) => Outcome::Error(e),
    };
    Ok(CheckReport { property, domain, outcome })
}

pub fn check_identity1(m: &Magma, dom: &Domain) -> Result<CheckReport, DomainError> {
    run(m, dom, Property::Identity1, |elems| {
        for &x in elems {
            for &y in elems {
                let found = m.mul(x, m.ldiv(x, y)?)?;
                if found != y {
                    return Ok(Some(Violation::Pair { x, y, found, expected: y }));
                }
            }
        }
        Ok(None)
    })
}

pub fn check_identity2(m: &Magma, dom: &Domain) -> Result<CheckReport, DomainError> {
    run(m, dom, Property::Identity2, |elems| {
        for &x in elems {
            for &y in elems {
                let found = m.ldiv(x, m.mul(x, y)?)?;
                if found != y {
                    return Ok(Some(Violation::Pair { x, y, found, expected: y }));
                }
            }
        }
        Ok(None)
    })
}

pub fn check_identity3(m: &Magma, dom: &Domain) -> Result<CheckReport, DomainError> {
    let e = m.unit();
    run(m, dom, Property::Identity3, |elems| {
        for &x in elems {
            let left = m.mul(e, x)?;
            if left != x {
                return Ok(Some(Violation::Unit { x, side: Side::Left, found: left }));
            }
            let right = m.mul(x, e)?;
            if right != x {
                return Ok(Some(Violation::Unit { x, side: Side::Right, found: right }));
            }
        }
        Ok(None)
    })
}

pub fn check_xdivx(m: &Magma, dom: &Domain) -> Result<CheckReport, DomainError> {
    let e = m.unit();
    run(m, dom, Property::XDivX, |elems| {
        for &x in elems {
            let found = m.ldiv(x, x)?;
            if found != e {
                return Ok(Some(Violation::Diagonal { x, found }));
            }
        }
        Ok(None)
    })
}

/// Identities (1) and (3) together.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpmReport {
    pub identity1: CheckReport,
    pub identity3: CheckReport,
}

impl LpmReport {
    pub fn holds(&self) -> bool {
        self.identity1.passed() && self.identity3.passed()
    }
}

pub fn is_lpm(m: &Magma, dom: &Domain) -> Result<LpmReport, DomainError> {
    Ok(LpmReport { identity1: check_identity1(m, dom)?, identity3: check_identity3(m, dom)? })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftLoopReport {
    pub lpm: LpmReport,
    pub identity2: CheckReport,
}

impl LeftLoopReport {
    pub fn holds(&self) -> bool {
        self.lpm.holds() && self.identity2.passed()
    }
}

pub fn is_left_loop(m: &Magma, dom: &Domain) -> Result<LeftLoopReport, DomainError> {
    Ok(LeftLoopReport { lpm: is_lpm(m, dom)?, identity2: check_identity2(m, dom)? })
}

/// Surjectivity of the left multiplications `M_y: x -> y * x`.
///
/// On a finite carrier with the full domain this is exact. On a window it is
/// evidence only: a target without a preimage inside the window may still have
/// one outside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurjectivityReport {
    pub domain: Domain,
    pub exact: bool,
    /// Number of `(y, z)` pairs checked.
    pub targets: usize,
    /// Number of `(y, z)` pairs for which no `x` in the domain gives `y * x = z`.
    pub missing: usize,
    pub first_missing: Option<(Elem, Elem)>,
    pub error: Option<EvalError>,
}

impl SurjectivityReport {
    pub fn passed(&self) -> bool {
        self.missing == 0 && self.error.is_none()
    }

    pub fn summary(&self) -> String {
        let kind = if self.exact { "exact" } else { "window evidence" };
        if let Some(e) = &self.error {
            return format!("error: {e}");
        }
        match self.first_missing {
            None => format!("pass ({kind}, {} targets)", self.targets),
            Some((y, z)) => format!(
                "{} ({kind}): {} of {} targets lack a preimage in the domain, first y = {y}, z = {z}",
                if self.exact { "fail" } else { "incomplete" },
                self.missing,
                self.targets
            ),
        }
    }
}

pub fn check_surjectivity(m: &Magma, dom: &Domain) -> Result<SurjectivityReport, DomainError> {
    let domain = m.effective_domain(dom)?;
    let elems = m.elements(&domain)?;
    let exact = domain == Domain::Full;
    let mut report = SurjectivityReport {
        domain,
        exact,
        targets: elems.len() * elems.len(),
        missing: 0,
        first_missing: None,
        error: None,
    };
    for &y in &elems {
        let mut image = std::collections::HashSet::with_capacity(elems.len());
        for &x in &elems {
            match m.mul(y, x) {
                Ok(v) => {
                    image.insert(v);
                }
                Err(e) => {
                    report.error = Some(e);
                    return Ok(report);
                }
            }
        }
        for &z in &elems {
            if !image.contains(&z) {
                report.missing += 1;
                report.first_missing.get_or_insert((y, z));
            }
        }
    }
    Ok(report)
}

/// The three consequences of `y = x * (x \ y)` and the unit laws: surjective `M_y`,
/// injective `D_y` with `D_e` the identity, and `x \ y = e => x = y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropReport {
    pub surjectivity: SurjectivityReport,
    pub injectivity: CheckReport,
    pub division_by_unit: CheckReport,
    pub pseudo_cancellation: CheckReport,
}

impl PropReport {
    pub fn passed(&self) -> bool {
        self.surjectivity.passed()
            && self.injectivity.passed()
            && self.division_by_unit.passed()
            && self.pseudo_cancellation.passed()
    }
}

pub fn check_injectivity(m: &Magma, dom: &Domain) -> Result<CheckReport, DomainError> {
    run(m, dom, Property::DivisionInjective, |elems| {
        for &y in elems {
            let mut seen: HashMap<Elem, Elem> = HashMap::with_capacity(elems.len());
            for &x in elems {
                let value = m.ldiv(y, x)?;
                if let Some(&first) = seen.get(&value) {
                    return Ok(Some(Violation::NotInjective { y, first, second: x, value }));
                }
                seen.insert(value, x);
            }
        }
        Ok(None)
    })
}

pub fn check_division_by_unit(m: &Magma, dom: &Domain) -> Result<CheckReport, DomainError> {
    let e = m.unit();
    run(m, dom, Property::DivisionByUnit, |elems| {
        for &x in elems {
            let found = m.ldiv(e, x)?;
            if found != x {
                return Ok(Some(Violation::DivisionByUnit { x, found }));
            }
        }
        Ok(None)
    })
}

pub fn check_pseudo_cancellation(m: &Magma, dom: &Domain) -> Result<CheckReport, DomainError> {
    let e = m.unit();
    run(m, dom, Property::PseudoCancellation, |elems| {
        for &x in elems {
            for &y in elems {
                if x != y && m.ldiv(x, y)? == e {
                    return Ok(Some(Violation::OffDiagonalUnit { x, y }));
                }
            }
        }
        Ok(None)
    })
}

pub fn check_props(m: &Magma, dom: &Domain) -> Result<PropReport, DomainError> {
    Ok(PropReport {
        surjectivity: check_surjectivity(m, dom)?,
        injectivity: check_injectivity(m, dom)?,
        division_by_unit: check_division_by_unit(m, dom)?,
        pseudo_cancellation: check_pseudo_cancellation(m, dom)?,
    })
}

/// Every pair in the domain has a matching clause and a value in the carrier.
pub fn check_totality(m: &Magma, dom: &Domain) -> Result<Result<(), EvalError>, DomainError> {
    let elems = m.elements(dom)?;
    for &x in &elems {
        for &y in &elems {
            if let Err(e) = m.mul(x, y).and_then(|_| m.ldiv(x, y)) {
                return Ok(Err(e));
            }
        }
    }
    Ok(Ok(()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Difference {
    /// The domains contain different elements; the first one present in only one.
    Carrier(Elem),
    Value {
        op: Op,
        x: Elem,
        y: Elem,
        left: Elem,
        right: Elem,
    },
}

impl fmt::Display for Difference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Difference::Carrier(v) => write!(f, "element {v} is in only one carrier"),
            Difference::Value { op, x, y, left, right } => write!(f, "{op}({x}, {y}): {left} vs {right}"),
        }
    }
}

/// Pointwise comparison of both operations over the domain, `mul` before `ldiv`
/// at each pair. `Ok(None)` means equal.
pub fn magmas_equal_on(
    a: &Magma,
    b: &Magma,
    dom: &Domain,
) -> Result<Result<Option<Difference>, EvalError>, DomainError> {
    let ea = a.elements(dom)?;
    let eb = b.elements(dom)?;
    if ea != eb {
        let only = ea
            .iter()
            .find(|v| !eb.contains(v))
            .or_else(|| eb.iter().find(|v| !ea.contains(v)))
            .copied()
            .unwrap_or_default();
        return Ok(Ok(Some(Difference::Carrier(only))));
    }
    if a.unit() != b.unit() {
        return Ok(Ok(Some(Difference::Carrier(a.unit()))));
    }
    let compare = || -> Result<Option<Difference>, EvalError> {
        for &x in &ea {
            for &y in &ea {
                for op in [Op::Mul, Op::Ldiv] {
                    let (left, right) = (a.apply(op, x, y)?, b.apply(op, x, y)?);
                    if left != right {
                        return Ok(Some(Difference::Value { op, x, y, left, right }));
                    }
                }
            }
        }
        Ok(None)
    };
    Ok(compare())
}
