//! Piecewise operations on ℕ or ℤ: ordered guarded clauses with affine results.

use std::fmt;

use crate::error::EvalError;
use crate::magma::{Elem, Op};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Carrier {
    N,
    Z,
}

impl Carrier {
    pub fn contains(self, v: Elem) -> bool {
        match self {
            Carrier::N => v >= 0,
            Carrier::Z => true,
        }
    }

    pub fn bounds(self) -> (Elem, Elem) {
        match self {
            Carrier::N => (0, Elem::MAX),
            Carrier::Z => (Elem::MIN, Elem::MAX),
        }
    }
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Carrier::N => "N",
            Carrier::Z => "Z",
        })
    }
}

/// The two arguments of an operation: `x op y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
}

impl Var {
    fn pick(self, x: Elem, y: Elem) -> Elem {
        match self {
            Var::X => x,
            Var::Y => y,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Var::X => "x",
            Var::Y => "y",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cmp {
    Eq,
    Ne,
    Gt,
    Lt,
    Ge,
    Le,
}

impl Cmp {
    fn holds(self, a: Elem, b: Elem) -> bool {
        match self {
            Cmp::Eq => a == b,
            Cmp::Ne => a != b,
            Cmp::Gt => a > b,
            Cmp::Lt => a < b,
            Cmp::Ge => a >= b,
            Cmp::Le => a <= b,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Cmp::Eq => "==",
            Cmp::Ne => "!=",
            Cmp::Gt => ">",
            Cmp::Lt => "<",
            Cmp::Ge => ">=",
            Cmp::Le => "<=",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rhs {
    Zero,
    Var(Var),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    Compare { lhs: Var, cmp: Cmp, rhs: Rhs },
    Even(Var),
    Odd(Var),
}

impl Atom {
    pub fn holds(&self, x: Elem, y: Elem) -> bool {
        match *self {
            Atom::Compare { lhs, cmp, rhs } => {
                let b = match rhs {
                    Rhs::Zero => 0,
                    Rhs::Var(v) => v.pick(x, y),
                };
                cmp.holds(lhs.pick(x, y), b)
            }
            Atom::Even(v) => v.pick(x, y).rem_euclid(2) == 0,
            Atom::Odd(v) => v.pick(x, y).rem_euclid(2) == 1,
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Compare { lhs, cmp, rhs: Rhs::Zero } => write!(f, "{lhs} {} 0", cmp.symbol()),
            Atom::Compare { lhs, cmp, rhs: Rhs::Var(v) } => write!(f, "{lhs} {} {v}", cmp.symbol()),
            Atom::Even(v) => write!(f, "even({v})"),
            Atom::Odd(v) => write!(f, "odd({v})"),
        }
    }
}

/// `(x_coef*x + y_coef*y + constant)`, optionally halved exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Affine {
    pub x_coef: i64,
    pub y_coef: i64,
    pub constant: i64,
    pub halve: bool,
}

/// Why an affine expression could not be evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AffineError {
    Overflow,
    Odd(Elem),
}

impl Affine {
    pub fn eval(&self, x: Elem, y: Elem) -> Result<Elem, AffineError> {
        let sum = self
            .x_coef
            .checked_mul(x)
            .and_then(|a| self.y_coef.checked_mul(y).and_then(|b| a.checked_add(b)))
            .and_then(|s| s.checked_add(self.constant))
            .ok_or(AffineError::Overflow)?;
        if self.halve {
            if sum.rem_euclid(2) != 0 {
                return Err(AffineError::Odd(sum));
            }
            Ok(sum / 2)
        } else {
            Ok(sum)
        }
    }

    fn is_single_term(&self) -> bool {
        let nonzero = [self.x_coef, self.y_coef, self.constant].iter().filter(|&&c| c != 0).count();
        nonzero <= 1
    }
}

fn write_sum(f: &mut fmt::Formatter<'_>, a: &Affine) -> fmt::Result {
    let mut first = true;
    for (coef, var) in [(a.x_coef, "x"), (a.y_coef, "y")] {
        if coef == 0 {
            continue;
        }
        let mag = coef.unsigned_abs();
        let sign = if first {
            if coef < 0 {
                "-"
            } else {
                ""
            }
        } else if coef < 0 {
            " - "
        } else {
            " + "
        };
        if mag == 1 {
            write!(f, "{sign}{var}")?;
        } else {
            write!(f, "{sign}{mag}*{var}")?;
        }
        first = false;
    }
    if first {
        write!(f, "{}", a.constant)
    } else if a.constant != 0 {
        let sign = if a.constant < 0 { " - " } else { " + " };
        write!(f, "{sign}{}", a.constant.unsigned_abs())
    } else {
        Ok(())
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.halve {
            return write_sum(f, self);
        }
        let bare = self.is_single_term() && self.x_coef >= 0 && self.y_coef >= 0 && self.constant >= 0;
        if bare {
            write_sum(f, self)?;
        } else {
            f.write_str("(")?;
            write_sum(f, self)?;
            f.write_str(")")?;
        }
        f.write_str(" / 2")
    }
}

/// `guard -> result`; an empty guard always holds.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Clause {
    pub guard: Vec<Atom>,
    pub result: Affine,
}

impl Clause {
    pub fn matches(&self, x: Elem, y: Elem) -> bool {
        self.guard.iter().all(|a| a.holds(x, y))
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.guard.is_empty() {
            f.write_str("true")?;
        }
        for (i, atom) in self.guard.iter().enumerate() {
            if i > 0 {
                f.write_str(" && ")?;
            }
            write!(f, "{atom}")?;
        }
        write!(f, " -> {}", self.result)
    }
}

/// First-match evaluation of a clause list.
pub fn eval_clauses(clauses: &[Clause], carrier: Carrier, op: Op, x: Elem, y: Elem) -> Result<Elem, EvalError> {
    if !carrier.contains(x) || !carrier.contains(y) {
        return Err(EvalError::OutOfCarrier { op, x, y });
    }
    let clause = clauses.iter().find(|c| c.matches(x, y)).ok_or(EvalError::NoClauseMatches { op, x, y })?;
    let value = clause.result.eval(x, y).map_err(|e| match e {
        AffineError::Overflow => EvalError::Overflow { op, x, y },
        AffineError::Odd(dividend) => EvalError::InexactHalving { op, x, y, dividend },
    })?;
    if !carrier.contains(value) {
        return Err(EvalError::ResultOutsideCarrier { op, x, y, value });
    }
    Ok(value)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RuleMagma {
    pub(crate) name: String,
    pub(crate) carrier: Carrier,
    pub(crate) mul: Vec<Clause>,
    pub(crate) ldiv: Vec<Clause>,
}

impl RuleMagma {
    pub fn new(name: impl Into<String>, carrier: Carrier, mul: Vec<Clause>, ldiv: Vec<Clause>) -> Self {
        RuleMagma { name: name.into(), carrier, mul, ldiv }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    pub fn mul_clauses(&self) -> &[Clause] {
        &self.mul
    }

    pub fn ldiv_clauses(&self) -> &[Clause] {
        &self.ldiv
    }

    pub fn clauses(&self, op: Op) -> &[Clause] {
        match op {
            Op::Mul => &self.mul,
            Op::Ldiv => &self.ldiv,
        }
    }

    pub fn clauses_mut(&mut self, op: Op) -> &mut Vec<Clause> {
        match op {
            Op::Mul => &mut self.mul,
            Op::Ldiv => &mut self.ldiv,
        }
    }

    pub fn apply(&self, op: Op, x: Elem, y: Elem) -> Result<Elem, EvalError> {
        eval_clauses(self.clauses(op), self.carrier, op, x, y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cmp(lhs: Var, cmp: Cmp, rhs: Rhs) -> Atom {
        Atom::Compare { lhs, cmp, rhs }
    }

    #[test]
    fn parity_of_negatives() {
        assert!(Atom::Odd(Var::Y).holds(0, -7));
        assert!(Atom::Even(Var::Y).holds(0, -8));
        assert!(!Atom::Even(Var::X).holds(-3, 0));
    }

    #[test]
    fn halving_is_exact_or_fails() {
        let e = Affine { x_coef: 0, y_coef: -1, constant: -1, halve: true };
        assert_eq!(e.eval(0, -7), Ok(3));
        assert_eq!(e.eval(0, -8), Err(AffineError::Odd(7)));
    }

    #[test]
    fn first_match_wins() {
        let clauses = vec![
            Clause { guard: vec![cmp(Var::X, Cmp::Eq, Rhs::Zero)], result: Affine { y_coef: 1, ..Default::default() } },
            Clause { guard: vec![], result: Affine { constant: 7, ..Default::default() } },
        ];
        assert_eq!(eval_clauses(&clauses, Carrier::Z, Op::Mul, 0, 4), Ok(4));
        assert_eq!(eval_clauses(&clauses, Carrier::Z, Op::Mul, 1, 4), Ok(7));
        assert!(matches!(
            eval_clauses(&clauses[..1], Carrier::Z, Op::Mul, 1, 4),
            Err(EvalError::NoClauseMatches { .. })
        ));
    }

    #[test]
    fn results_must_stay_in_carrier() {
        let clauses = vec![Clause { guard: vec![], result: Affine { y_coef: 1, constant: -1, ..Default::default() } }];
        assert!(matches!(
            eval_clauses(&clauses, Carrier::N, Op::Ldiv, 3, 0),
            Err(EvalError::ResultOutsideCarrier { value: -1, .. })
        ));
        assert!(matches!(eval_clauses(&clauses, Carrier::N, Op::Ldiv, -1, 0), Err(EvalError::OutOfCarrier { .. })));
    }

    #[test]
    fn affine_display() {
        let show = |x, y, c, h| Affine { x_coef: x, y_coef: y, constant: c, halve: h }.to_string();
        assert_eq!(show(0, -2, -1, false), "-2*y - 1");
        assert_eq!(show(0, -1, -1, true), "(-y - 1) / 2");
        assert_eq!(show(0, 1, 0, true), "y / 2");
        assert_eq!(show(0, 1, 1, false), "y + 1");
        assert_eq!(show(0, 0, 0, false), "0");
        assert_eq!(show(1, 0, 0, false), "x");
    }
}
