//! Building a multiplication from a left division.
//!
//! Given a unit `e` and a division `\` whose maps `D_y: x -> y \ x` are
//! injective, with `D_e` the identity and `x \ y = e` only when `x = y`,
//! setting
//!
//! ```text
//! y * x = D_y⁻¹(x)   if x is in the image of D_y
//!         y          otherwise
//! ```
//!
//! yields an LPM with the given division. For rule-defined divisions the
//! images are taken over a window, so the result is only defined for left
//! arguments inside it.

use std::collections::HashMap;

use thiserror::Error;

use crate::check::{check_division_by_unit, check_injectivity, check_pseudo_cancellation, CheckReport, Outcome};
use crate::error::{DomainError, EvalError};
use crate::magma::{ConstructedMagma, Domain, Elem, FiniteMagma, Magma, Window};
use crate::rules::{Carrier, Clause, RuleMagma};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DivisionStructure {
    Table {
        name: String,
        unit: usize,
        ldiv: Vec<Vec<usize>>,
    },
    /// Unit is 0.
    Rules {
        name: String,
        carrier: Carrier,
        ldiv: Vec<Clause>,
    },
}

impl DivisionStructure {
    /// The division of an existing table or rule magma.
    pub fn from_magma(m: &Magma) -> Option<Self> {
        match m {
            Magma::Finite(t) => Some(DivisionStructure::Table {
                name: t.name().to_string(),
                unit: t.unit(),
                ldiv: t.ldiv_table().to_vec(),
            }),
            Magma::Rule(r) => Some(DivisionStructure::Rules {
                name: r.name().to_string(),
                carrier: r.carrier(),
                ldiv: r.ldiv_clauses().to_vec(),
            }),
            _ => None,
        }
    }

    pub fn name(&self) -> &str {
        match self {
            DivisionStructure::Table { name, .. } | DivisionStructure::Rules { name, .. } => name,
        }
    }

    /// A magma carrying this division and a placeholder multiplication, for
    /// running the division-only checks.
    fn as_magma(&self) -> Magma {
        match self {
            DivisionStructure::Table { name, unit, ldiv } => {
                let n = ldiv.len();
                let mul = vec![vec![0; n]; n];
                Magma::Finite(FiniteMagma::new(name.clone(), *unit, mul, ldiv.clone()).expect("valid division table"))
            }
            DivisionStructure::Rules { name, carrier, ldiv } => {
                Magma::Rule(RuleMagma::new(name.clone(), *carrier, Vec::new(), ldiv.clone()))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("precondition {} fails on {}: {}", .0.property, .0.domain, .0.summary())]
    Precondition(CheckReport),
    #[error("a rule division needs a window")]
    NeedsWindow,
}

/// The division-only preconditions: injective `D_y`, `D_e = id`, and
/// `x \ y = e => x = y`, on `dom`.
pub fn check_preconditions(d: &DivisionStructure, dom: &Domain) -> Result<Vec<CheckReport>, DomainError> {
    let m = d.as_magma();
    Ok(vec![check_injectivity(&m, dom)?, check_division_by_unit(&m, dom)?, check_pseudo_cancellation(&m, dom)?])
}

pub fn construct_mul_from_div(d: &DivisionStructure, dom: &Domain) -> Result<Magma, ConstructError> {
    for report in check_preconditions(d, dom)? {
        match &report.outcome {
            Outcome::Pass => {}
            Outcome::Fail(_) => return Err(ConstructError::Precondition(report)),
            Outcome::Error(e) => return Err(e.clone().into()),
        }
    }
    let base = d.as_magma();
    match d {
        DivisionStructure::Table { name, unit, ldiv } => {
            let n = ldiv.len();
            let mul: Vec<Vec<usize>> = ldiv
                .iter()
                .enumerate()
                .map(|(y, row)| (0..n).map(|x| row.iter().position(|&v| v == x).unwrap_or(y)).collect())
                .collect();
            Ok(Magma::Finite(FiniteMagma::new(name.clone(), *unit, mul, ldiv.clone()).expect("valid tables")))
        }
        DivisionStructure::Rules { name, carrier, ldiv } => {
            let window = match base.effective_domain(dom)? {
                Domain::Window(w) => w,
                Domain::Full => return Err(ConstructError::NeedsWindow),
            };
            let elems: Vec<Elem> = window.iter().collect();
            let mut preimages = Vec::with_capacity(elems.len());
            for &y in &elems {
                let mut map = HashMap::with_capacity(elems.len());
                for &x in &elems {
                    map.insert(base.ldiv(y, x)?, x);
                }
                preimages.push(map);
            }
            Ok(Magma::Constructed(ConstructedMagma {
                name: name.clone(),
                carrier: *carrier,
                ldiv: ldiv.clone(),
                window,
                preimages,
            }))
        }
    }
}

/// The constructed multiplication over `window`, row `y`, column `x`.
pub fn mul_rows(m: &Magma, window: Window) -> Result<Vec<(Elem, Vec<Elem>)>, EvalError> {
    window.iter().map(|y| Ok((y, window.iter().map(|x| m.mul(y, x)).collect::<Result<_, _>>()?))).collect()
}
