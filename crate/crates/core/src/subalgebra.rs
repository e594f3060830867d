//! Subsets of a carrier and restriction to them.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::check::{CheckReport, Outcome, Property, Violation};
use crate::error::{DomainError, EvalError};
use crate::magma::{Domain, Elem, Magma, Op, SubMagma};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SubPredicate {
    All,
    NonNeg,
    NonPos,
    Even,
    Set(BTreeSet<Elem>),
}

impl SubPredicate {
    pub fn holds(&self, v: Elem) -> bool {
        match self {
            SubPredicate::All => true,
            SubPredicate::NonNeg => v >= 0,
            SubPredicate::NonPos => v <= 0,
            SubPredicate::Even => v.rem_euclid(2) == 0,
            SubPredicate::Set(s) => s.contains(&v),
        }
    }
}

impl fmt::Display for SubPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubPredicate::All => f.write_str("all"),
            SubPredicate::NonNeg => f.write_str("nonneg"),
            SubPredicate::NonPos => f.write_str("nonpos"),
            SubPredicate::Even => f.write_str("even"),
            SubPredicate::Set(s) => {
                f.write_str("set:")?;
                for (i, v) in s.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for SubPredicate {
    type Err = String;

    /// `all`, `nonneg`, `nonpos`, `even`, or `set:1,2,3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(SubPredicate::All),
            "nonneg" => Ok(SubPredicate::NonNeg),
            "nonpos" => Ok(SubPredicate::NonPos),
            "even" => Ok(SubPredicate::Even),
            _ => {
                let list = s
                    .strip_prefix("set:")
                    .ok_or_else(|| format!("unknown subcarrier `{s}` (all, nonneg, nonpos, even, set:a,b,..)"))?;
                list.split(',')
                    .filter(|t| !t.trim().is_empty())
                    .map(|t| t.trim().parse::<Elem>().map_err(|e| format!("bad element `{t}`: {e}")))
                    .collect::<Result<BTreeSet<_>, _>>()
                    .map(SubPredicate::Set)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RestrictError {
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("subset `{predicate}` is not closed: {violation}")]
    NotClosed { predicate: SubPredicate, violation: Violation },
}

/// Checks that the elements of `dom` satisfying `predicate` contain the unit
/// and are closed under both operations. Pairs are scanned row-major, `mul`
/// before `ldiv`.
pub fn check_closure(m: &Magma, predicate: &SubPredicate, dom: &Domain) -> Result<CheckReport, DomainError> {
    let domain = m.effective_domain(dom)?;
    let elems: Vec<Elem> = m.elements(&domain)?.into_iter().filter(|&v| predicate.holds(v)).collect();
    let scan = || -> Result<Option<Violation>, EvalError> {
        let unit = m.unit();
        if !predicate.holds(unit) {
            return Ok(Some(Violation::UnitMissing { unit }));
        }
        for &x in &elems {
            for &y in &elems {
                for op in [Op::Mul, Op::Ldiv] {
                    let value = m.apply(op, x, y)?;
                    if !predicate.holds(value) || !m.contains(value) {
                        return Ok(Some(Violation::NotClosed { op, x, y, value }));
                    }
                }
            }
        }
        Ok(None)
    };
    let outcome = match scan() {
        Ok(None) => Outcome::Pass,
        Ok(Some(v)) => Outcome::Fail(v),
        Err(e) => Outcome::Error(e),
    };
    Ok(CheckReport { property: Property::Closure, domain, outcome })
}

/// The restriction of `m` to `predicate`, after verifying closure on `dom`.
///
/// Restricting to `All` returns `m` unchanged.
pub fn restrict(m: &Magma, predicate: &SubPredicate, dom: &Domain) -> Result<Magma, RestrictError> {
    let report = check_closure(m, predicate, dom)?;
    match report.outcome {
        Outcome::Pass => {}
        Outcome::Fail(violation) => return Err(RestrictError::NotClosed { predicate: predicate.clone(), violation }),
        Outcome::Error(e) => return Err(e.into()),
    }
    if *predicate == SubPredicate::All {
        return Ok(m.clone());
    }
    Ok(Magma::Sub(SubMagma { base: Box::new(m.clone()), predicate: predicate.clone() }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::builtin;
    use crate::check::magmas_equal_on;
    use crate::magma::Window;

    fn win(lo: Elem, hi: Elem) -> Domain {
        Domain::Window(Window::new(lo, hi).unwrap())
    }

    #[test]
    fn nonneg_part_of_wp_is_nwp() {
        let wp = builtin("wp-Z").unwrap();
        let sub = restrict(&wp, &SubPredicate::NonNeg, &win(0, 100)).unwrap();
        let nwp = builtin("nwp-N").unwrap();
        assert_eq!(magmas_equal_on(&sub, &nwp, &win(0, 100)).unwrap(), Ok(None));
        // windows reaching below zero are clamped by the subcarrier
        assert_eq!(sub.elements(&win(-5, 3)).unwrap(), vec![0, 1, 2, 3]);
        assert!(sub.mul(-1, 2).is_err());
    }

    #[test]
    fn restricting_to_all_is_identity() {
        let m = builtin("pnl-N").unwrap();
        assert_eq!(restrict(&m, &SubPredicate::All, &win(0, 10)).unwrap(), m);
    }

    #[test]
    fn even_integers_are_not_closed_in_wp() {
        let wp = builtin("wp-Z").unwrap();
        let err = restrict(&wp, &SubPredicate::Even, &win(-20, 20)).unwrap_err();
        // (-20) * (-18) = -18 / 2 = -9
        assert_eq!(
            err,
            RestrictError::NotClosed {
                predicate: SubPredicate::Even,
                violation: Violation::NotClosed { op: Op::Mul, x: -20, y: -18, value: -9 }
            }
        );
    }

    #[test]
    fn parse_predicates() {
        assert_eq!("nonneg".parse::<SubPredicate>(), Ok(SubPredicate::NonNeg));
        assert_eq!("set:0,3,1".parse::<SubPredicate>().unwrap().to_string(), "set:0,1,3");
        assert!("odd".parse::<SubPredicate>().is_err());
    }

    #[test]
    fn unit_must_be_in_subset() {
        let m = builtin("z2").unwrap();
        let r = check_closure(&m, &SubPredicate::Set([1].into()), &Domain::Full).unwrap();
        assert_eq!(r.violation(), Some(&Violation::UnitMissing { unit: 0 }));
        let r = check_closure(&m, &SubPredicate::Set([0].into()), &Domain::Full).unwrap();
        assert!(r.passed());
    }
}
