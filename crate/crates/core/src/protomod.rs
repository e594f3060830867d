//! Witness chains and the (weak) protomodularity verdicts.
//!
//! An LPM `X` is weakly protomodular exactly when every `x` admits a chain
//! `x_1, .., x_n` with `x_1 \ (x_2 \ ( .. (x_n \ x) .. )) = e`. Such chains are
//! found here by breadth-first search over the states reachable from `x`
//! through the maps `s -> d \ s`. On a finite carrier the search decides the
//! question; on an infinite carrier it can only prove existence, and a failed
//! search is reported as inconclusive.
//!
//! Two further facts drive [`classify`]: `x \ x = e` for all `x` makes an LPM
//! protomodular, and every subalgebra of a protomodular LPM is weakly
//! protomodular, so a subalgebra without witnesses refutes protomodularity.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use rayon::prelude::*;

use crate::builtins::builtin;
use crate::check::{check_xdivx, is_left_loop, CheckReport, LeftLoopReport};
use crate::error::{DomainError, Error, EvalError};
use crate::magma::{Domain, Elem, Magma, Window};
use crate::subalgebra::{check_closure, restrict, RestrictError, SubPredicate};

/// `x_1, .., x_n` with `x_1` the outermost divisor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WitnessChain(pub Vec<Elem>);

impl WitnessChain {
    pub fn elements(&self) -> &[Elem] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for WitnessChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Evaluates `x_n \ x` first, then `x_{n-1} \ (..)`, up to `x_1`.
pub fn chain_value(m: &Magma, x: Elem, chain: &WitnessChain) -> Result<Elem, EvalError> {
    chain.0.iter().rev().try_fold(x, |acc, &d| m.ldiv(d, acc))
}

pub fn verify_witness(m: &Magma, x: Elem, chain: &WitnessChain) -> Result<bool, EvalError> {
    Ok(!chain.is_empty() && chain_value(m, x, chain)? == m.unit())
}

/// Limits of a witness search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    /// Maximum chain length.
    pub depth: usize,
    pub divisors: Domain,
    /// States with larger absolute value are dropped.
    pub value_bound: Elem,
}

pub const DEFAULT_DEPTH: usize = 16;
pub const DEFAULT_RANGE: Elem = 128;
pub const DEFAULT_VALUE_BOUND: Elem = 1_000_000;

/// Divisor window used when none is given: wide enough that the chain
/// `(-2x-1, -1)` of every `x` in the default range fits.
pub fn default_divisor_window(range: Window) -> Window {
    let r = range.lo().unsigned_abs().max(range.hi().unsigned_abs()) as Elem;
    Window::symmetric(2 * r + 1)
}

impl SearchBounds {
    pub fn new(depth: usize, divisors: impl Into<Domain>) -> Self {
        SearchBounds { depth, divisors: divisors.into(), value_bound: DEFAULT_VALUE_BOUND }
    }
}

/// Divisors in search order: by absolute value, negative first on ties.
fn divisor_order(m: &Magma, divisors: &Domain) -> Result<Vec<Elem>, DomainError> {
    let mut ds = m.elements(divisors)?;
    ds.sort_by_key(|&d| (d.unsigned_abs(), d));
    Ok(ds)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub chain: Option<WitnessChain>,
    /// Distinct states visited.
    pub states: usize,
    /// States dropped for exceeding the value bound.
    pub pruned: usize,
}

/// Per-level record of how each newly reached state was first reached.
type Level = BTreeMap<Elem, (Elem, Elem)>;

struct Bfs {
    levels: Vec<Level>,
    states: usize,
    pruned: usize,
    found: bool,
}

/// Level `k` holds the states first reached by a chain of length exactly `k`
/// (the start state may reappear at level 1). Stops early once `stop` is
/// reached.
fn bfs(m: &Magma, x: Elem, bounds: &SearchBounds, stop: Option<Elem>) -> Result<Bfs, Error> {
    let divisors = divisor_order(m, &bounds.divisors)?;
    let mut seen: HashSet<Elem> = HashSet::new();
    let mut frontier = vec![x];
    let mut out = Bfs { levels: Vec::new(), states: 0, pruned: 0, found: false };
    for _ in 0..bounds.depth {
        let mut level = Level::new();
        let mut next = Vec::new();
        'expand: for &s in &frontier {
            for &d in &divisors {
                let t = m.ldiv(d, s)?;
                if t.unsigned_abs() > bounds.value_bound.unsigned_abs() {
                    out.pruned += 1;
                    continue;
                }
                if seen.insert(t) {
                    level.insert(t, (s, d));
                    next.push(t);
                    if stop == Some(t) {
                        out.found = true;
                        break 'expand;
                    }
                }
            }
        }
        out.states = seen.len();
        out.levels.push(level);
        if out.found || next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(out)
}

/// A shortest chain taking `x` to the unit, if one exists within the bounds.
///
/// Divisors are tried in order of absolute value, so among shortest chains the
/// one whose innermost divisor `x_n` is closest to zero wins, then `x_{n-1}`,
/// and so on.
pub fn witness_search(m: &Magma, x: Elem, bounds: &SearchBounds) -> Result<SearchOutcome, Error> {
    let unit = m.unit();
    let run = bfs(m, x, bounds, Some(unit))?;
    let chain = run.found.then(|| {
        let mut chain = Vec::with_capacity(run.levels.len());
        let mut state = unit;
        for level in run.levels.iter().rev() {
            let (prev, d) = level[&state];
            chain.push(d);
            state = prev;
        }
        debug_assert_eq!(state, x);
        WitnessChain(chain)
    });
    Ok(SearchOutcome { chain, states: run.states, pruned: run.pruned })
}

/// `R_d`: the states reachable from `x` by chains of length `1..=d`, for each
/// `d` in `1..=depth`.
pub fn reachable_levels(m: &Magma, x: Elem, bounds: &SearchBounds) -> Result<Vec<BTreeSet<Elem>>, Error> {
    let divisors = divisor_order(m, &bounds.divisors)?;
    // a state that reappears later reaches nothing new, so each state is
    // expanded once
    let mut expanded = HashSet::new();
    let mut frontier = BTreeSet::from([x]);
    let mut union = BTreeSet::new();
    let mut out = Vec::with_capacity(bounds.depth);
    for _ in 0..bounds.depth {
        let mut next = BTreeSet::new();
        for &s in &frontier {
            if !expanded.insert(s) {
                continue;
            }
            for &d in &divisors {
                let t = m.ldiv(d, s)?;
                if t.unsigned_abs() <= bounds.value_bound.unsigned_abs() {
                    next.insert(t);
                }
            }
        }
        union.extend(next.iter().copied());
        out.push(union.clone());
        frontier = next;
    }
    Ok(out)
}

pub fn reachable_set(m: &Magma, x: Elem, bounds: &SearchBounds) -> Result<BTreeSet<Elem>, Error> {
    Ok(reachable_levels(m, x, bounds)?.pop().unwrap_or_default())
}

/// For `x > 0`, `R_d = {x, .., x + d}` for every `d` up to the bound: each
/// division step moves a state up by at most one and never down.
pub fn monotone_escape_holds(m: &Magma, x: Elem, bounds: &SearchBounds) -> Result<bool, Error> {
    if x <= m.unit() {
        return Ok(false);
    }
    let levels = reachable_levels(m, x, bounds)?;
    Ok(levels.iter().enumerate().all(|(i, set)| {
        let d = i as Elem + 1;
        set.len() as Elem == d + 1 && set.first() == Some(&x) && set.last() == Some(&(x + d))
    }))
}

fn is_builtin_nwp(m: &Magma) -> bool {
    builtin("nwp-N").is_ok_and(|b| b == *m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WpVerdict {
    /// Every element of the range has a verified chain.
    ProvedAll { range: Domain, witnesses: BTreeMap<Elem, WitnessChain> },
    /// Some element has no chain within the bounds; nothing is claimed about
    /// longer chains or divisors outside the window.
    Inconclusive {
        element: Elem,
        depth: usize,
        divisors: Domain,
        pruned: usize,
        /// Set when the monotone-escape check confirms that the element can
        /// never reach the unit.
        monotone_certified: bool,
    },
    /// Exact answer on a finite carrier.
    Decided { holds: bool, witnesses: BTreeMap<Elem, WitnessChain>, counterexample: Option<Elem> },
}

impl WpVerdict {
    pub fn is_positive(&self) -> bool {
        matches!(self, WpVerdict::ProvedAll { .. } | WpVerdict::Decided { holds: true, .. })
    }

    pub fn witnesses(&self) -> Option<&BTreeMap<Elem, WitnessChain>> {
        match self {
            WpVerdict::ProvedAll { witnesses, .. } | WpVerdict::Decided { witnesses, .. } => Some(witnesses),
            WpVerdict::Inconclusive { .. } => None,
        }
    }

    /// The element without a chain, if any.
    pub fn stuck_element(&self) -> Option<Elem> {
        match self {
            WpVerdict::Inconclusive { element, .. } => Some(*element),
            WpVerdict::Decided { counterexample, .. } => *counterexample,
            WpVerdict::ProvedAll { .. } => None,
        }
    }
}

/// Searches a chain for every element of `range`.
///
/// On a finite carrier the range and bounds are ignored: every element is
/// searched over the full carrier with depth equal to its size, which decides
/// the question since all states are carrier elements.
pub fn is_weakly_protomodular(m: &Magma, range: &Domain, bounds: &SearchBounds) -> Result<WpVerdict, Error> {
    let finite = m.is_finite();
    let (range, bounds) = if finite {
        let n = m.elements(&Domain::Full)?.len();
        (Domain::Full, SearchBounds { depth: n.max(1), divisors: Domain::Full, value_bound: bounds.value_bound })
    } else {
        (m.effective_domain(range)?, bounds.clone())
    };
    let elems = m.elements(&range)?;
    let outcomes: Vec<(Elem, SearchOutcome)> =
        elems.par_iter().map(|&x| witness_search(m, x, &bounds).map(|o| (x, o))).collect::<Result<_, _>>()?;

    let mut witnesses = BTreeMap::new();
    for (x, outcome) in outcomes {
        match outcome.chain {
            Some(chain) => {
                debug_assert!(verify_witness(m, x, &chain).unwrap_or(false));
                witnesses.insert(x, chain);
            }
            None if finite => return Ok(WpVerdict::Decided { holds: false, witnesses, counterexample: Some(x) }),
            None => {
                let monotone_certified = is_builtin_nwp(m) && monotone_escape_holds(m, x, &bounds)?;
                return Ok(WpVerdict::Inconclusive {
                    element: x,
                    depth: bounds.depth,
                    divisors: m.effective_domain(&bounds.divisors)?,
                    pruned: outcome.pruned,
                    monotone_certified,
                });
            }
        }
    }
    Ok(if finite {
        WpVerdict::Decided { holds: true, witnesses, counterexample: None }
    } else {
        WpVerdict::ProvedAll { range, witnesses }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvidenceGrade {
    /// Bounded search found no chain; longer chains or other divisors might.
    Evidence,
    /// The monotone-escape check shows no chain exists.
    CertifiedMonotone,
    /// Exact search on a finite carrier.
    Exact,
}

impl fmt::Display for EvidenceGrade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EvidenceGrade::Evidence => "evidence",
            EvidenceGrade::CertifiedMonotone => "certified (monotonicity)",
            EvidenceGrade::Exact => "exact",
        })
    }
}

/// A subalgebra with an element that has no witness chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refutation {
    pub subcarrier: SubPredicate,
    pub element: Elem,
    pub depth: usize,
    pub divisors: Domain,
    pub grade: EvidenceGrade,
}

/// Looks for an element of the subalgebra `predicate` without a witness
/// chain. Requires closure on `range`.
///
/// Returns `None` when every element of the range has a chain, or when the
/// search was cut short by the value bound (weak evidence).
pub fn refute_protomodular_by_subalgebra(
    m: &Magma,
    predicate: &SubPredicate,
    range: &Domain,
    bounds: &SearchBounds,
) -> Result<Option<Refutation>, Error> {
    let sub = restrict(m, predicate, range).map_err(|e| match e {
        RestrictError::Domain(d) => Error::Domain(d),
        RestrictError::Eval(e) => Error::Eval(e),
        e @ RestrictError::NotClosed { .. } => Error::Unsupported(e.to_string()),
    })?;
    let verdict = is_weakly_protomodular(&sub, range, bounds)?;
    Ok(match verdict {
        WpVerdict::Inconclusive { element, depth, divisors, pruned: 0, monotone_certified } => Some(Refutation {
            subcarrier: predicate.clone(),
            element,
            depth,
            divisors,
            grade: if monotone_certified { EvidenceGrade::CertifiedMonotone } else { EvidenceGrade::Evidence },
        }),
        WpVerdict::Decided { holds: false, counterexample: Some(element), .. } => Some(Refutation {
            subcarrier: predicate.clone(),
            element,
            depth: sub.elements(&Domain::Full)?.len(),
            divisors: Domain::Full,
            grade: EvidenceGrade::Exact,
        }),
        _ => None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProtoVerdict {
    /// `x \ x = e` holds on the stamped domain.
    ProvedByXdivX {
        domain: Domain,
    },
    RefutedBySubalgebra(Refutation),
    Unknown {
        reason: String,
    },
}

impl ProtoVerdict {
    pub fn is_positive(&self) -> bool {
        matches!(self, ProtoVerdict::ProvedByXdivX { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifyConfig {
    /// Elements checked; also the domain of the identity checks.
    pub range: Window,
    pub bounds: SearchBounds,
    /// Subalgebras tried, in order, when `x \ x = e` fails.
    pub subalgebras: Vec<SubPredicate>,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        let range = Window::symmetric(DEFAULT_RANGE);
        ClassifyConfig {
            range,
            bounds: SearchBounds::new(DEFAULT_DEPTH, default_divisor_window(range)),
            subalgebras: vec![SubPredicate::All, SubPredicate::NonNeg, SubPredicate::NonPos, SubPredicate::Even],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub name: String,
    /// The effective domain of the identity checks.
    pub domain: Domain,
    pub left_loop: LeftLoopReport,
    pub xdivx: CheckReport,
    pub weakly_protomodular: WpVerdict,
    pub protomodular: ProtoVerdict,
    /// Subalgebra candidates skipped because they are not closed on the range.
    pub skipped_subalgebras: Vec<(SubPredicate, String)>,
}

impl ClassificationReport {
    pub fn is_lpm(&self) -> bool {
        self.left_loop.lpm.holds()
    }

    pub fn is_left_loop(&self) -> bool {
        self.left_loop.holds()
    }
}

pub fn classify(m: &Magma, cfg: &ClassifyConfig) -> Result<ClassificationReport, Error> {
    let dom = if m.is_finite() { Domain::Full } else { m.effective_domain(&Domain::Window(cfg.range))? };
    let left_loop = is_left_loop(m, &dom)?;
    let xdivx = check_xdivx(m, &dom)?;
    let weakly_protomodular = is_weakly_protomodular(m, &dom, &cfg.bounds)?;
    let mut skipped = Vec::new();

    let protomodular = if !left_loop.lpm.holds() {
        ProtoVerdict::Unknown { reason: "not an LPM on the domain".into() }
    } else if xdivx.passed() {
        ProtoVerdict::ProvedByXdivX { domain: xdivx.domain }
    } else {
        let mut verdict = None;
        for pred in &cfg.subalgebras {
            if *pred == SubPredicate::All {
                if let Some(element) = weakly_protomodular.stuck_element() {
                    if let Some(r) = refute_protomodular_by_subalgebra(m, pred, &dom, &cfg.bounds)? {
                        debug_assert_eq!(r.element, element);
                        verdict = Some(r);
                        break;
                    }
                }
                continue;
            }
            let closure = check_closure(m, pred, &dom)?;
            if !closure.passed() {
                skipped.push((pred.clone(), closure.summary()));
                continue;
            }
            if let Some(r) = refute_protomodular_by_subalgebra(m, pred, &dom, &cfg.bounds)? {
                verdict = Some(r);
                break;
            }
        }
        match verdict {
            Some(r) => ProtoVerdict::RefutedBySubalgebra(r),
            None => ProtoVerdict::Unknown { reason: "x \\ x = e fails and no candidate subalgebra refutes".into() },
        }
    };

    Ok(ClassificationReport {
        name: m.name(),
        domain: dom,
        left_loop,
        xdivx,
        weakly_protomodular,
        protomodular,
        skipped_subalgebras: skipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::Violation;

    fn w(lo: Elem, hi: Elem) -> Window {
        Window::new(lo, hi).unwrap()
    }

    fn chain(v: &[Elem]) -> WitnessChain {
        WitnessChain(v.to_vec())
    }

    #[test]
    fn verify_chains() {
        let wp = builtin("wp-Z").unwrap();
        assert!(verify_witness(&wp, 5, &chain(&[-11, -1])).unwrap());
        assert!(!verify_witness(&wp, 5, &chain(&[-1, -11])).unwrap());
        assert!(verify_witness(&wp, -7, &chain(&[-7])).unwrap());
        assert!(!verify_witness(&wp, 0, &chain(&[])).unwrap());
        let nwp = builtin("nwp-N").unwrap();
        assert!(!verify_witness(&nwp, 1, &chain(&[0, 0, 0])).unwrap());
        assert_eq!(chain_value(&nwp, 1, &chain(&[0, 0, 0])).unwrap(), 1);
    }

    #[test]
    fn searches() {
        let wp = builtin("wp-Z").unwrap();
        let out = witness_search(&wp, -3, &SearchBounds::new(1, w(-10, 10))).unwrap();
        assert_eq!(out.chain, Some(chain(&[-3])));
        let out = witness_search(&wp, 5, &SearchBounds::new(2, w(-201, 201))).unwrap();
        assert_eq!(out.chain, Some(chain(&[-11, -1])));
        let out = witness_search(&wp, 0, &SearchBounds::new(3, w(-5, 5))).unwrap();
        assert_eq!(out.chain, Some(chain(&[0])));
        let nwp = builtin("nwp-N").unwrap();
        let out = witness_search(&nwp, 1, &SearchBounds::new(10, w(0, 50))).unwrap();
        assert_eq!(out.chain, None);
        // the divisor needed for x = 5 lies outside a narrow window
        let out = witness_search(&wp, 5, &SearchBounds::new(4, w(-10, 10))).unwrap();
        assert_eq!(out.chain, None);
    }

    #[test]
    fn reachable() {
        let nwp = builtin("nwp-N").unwrap();
        let r = reachable_set(&nwp, 3, &SearchBounds::new(4, w(0, 50))).unwrap();
        assert_eq!(r, BTreeSet::from([3, 4, 5, 6, 7]));
        let wp = builtin("wp-Z").unwrap();
        let r = reachable_set(&wp, 5, &SearchBounds::new(1, w(-11, -11))).unwrap();
        assert_eq!(r, BTreeSet::from([-11]));
        let r = reachable_set(&wp, 5, &SearchBounds::new(2, w(-11, -11))).unwrap();
        assert_eq!(r, BTreeSet::from([-11, 0]));
        let r = reachable_set(&nwp, 0, &SearchBounds::new(2, w(0, 3))).unwrap();
        assert!(r.contains(&0));
    }

    #[test]
    fn reachable_levels_match_brute_force() {
        // independent enumeration of all chains of each length
        let wp = builtin("wp-Z").unwrap();
        let bounds = SearchBounds::new(3, w(-3, 3));
        for x in -4..=4 {
            let levels = reachable_levels(&wp, x, &bounds).unwrap();
            let mut layer = BTreeSet::from([x]);
            let mut union = BTreeSet::new();
            for level in levels.iter() {
                layer = layer
                    .iter()
                    .flat_map(|&s| (-3..=3).map(move |d| (d, s)))
                    .map(|(d, s)| wp.ldiv(d, s).unwrap())
                    .collect();
                union.extend(layer.iter().copied());
                assert_eq!(*level, union, "x = {x}");
            }
        }
    }

    #[test]
    fn monotone_escape() {
        let nwp = builtin("nwp-N").unwrap();
        for x in 1..=5 {
            assert!(monotone_escape_holds(&nwp, x, &SearchBounds::new(10, w(0, 60))).unwrap());
        }
        let pnl = builtin("pnl-N").unwrap();
        assert!(!monotone_escape_holds(&pnl, 1, &SearchBounds::new(3, w(0, 60))).unwrap());
    }

    #[test]
    fn weak_protomodularity_verdicts() {
        let pnl = builtin("pnl-N").unwrap();
        let v = is_weakly_protomodular(&pnl, &w(0, 100).into(), &SearchBounds::new(16, w(0, 100))).unwrap();
        let witnesses = v.witnesses().unwrap();
        assert!(v.is_positive());
        assert!(witnesses.iter().all(|(x, c)| *c == chain(&[*x])));

        let wp = builtin("wp-Z").unwrap();
        let v = is_weakly_protomodular(&wp, &w(-100, 100).into(), &SearchBounds::new(2, w(-201, 201))).unwrap();
        assert!(matches!(v, WpVerdict::ProvedAll { .. }));

        let nwp = builtin("nwp-N").unwrap();
        let v = is_weakly_protomodular(&nwp, &w(0, 20).into(), &SearchBounds::new(15, w(0, 20))).unwrap();
        assert!(matches!(v, WpVerdict::Inconclusive { element: 1, monotone_certified: true, .. }), "{v:?}");

        let z2 = builtin("z2").unwrap();
        let v = is_weakly_protomodular(&z2, &Domain::Full, &SearchBounds::new(1, Domain::Full)).unwrap();
        assert!(matches!(v, WpVerdict::Decided { holds: true, .. }));
    }

    #[test]
    fn refutations() {
        let bounds = SearchBounds::new(15, w(0, 40));
        let wp = builtin("wp-Z").unwrap();
        let r =
            refute_protomodular_by_subalgebra(&wp, &SubPredicate::NonNeg, &w(0, 20).into(), &bounds).unwrap().unwrap();
        assert_eq!(r.element, 1);
        assert_eq!(r.grade, EvidenceGrade::Evidence);

        let triv = builtin("triv").unwrap();
        assert_eq!(refute_protomodular_by_subalgebra(&triv, &SubPredicate::All, &Domain::Full, &bounds).unwrap(), None);
        let pnl = builtin("pnl-N").unwrap();
        assert_eq!(
            refute_protomodular_by_subalgebra(&pnl, &SubPredicate::All, &w(0, 20).into(), &bounds).unwrap(),
            None
        );

        let nwp = builtin("nwp-N").unwrap();
        let r =
            refute_protomodular_by_subalgebra(&nwp, &SubPredicate::All, &w(0, 20).into(), &bounds).unwrap().unwrap();
        assert_eq!(r.grade, EvidenceGrade::CertifiedMonotone);

        assert!(refute_protomodular_by_subalgebra(&wp, &SubPredicate::Even, &w(-20, 20).into(), &bounds).is_err());
    }

    #[test]
    fn xdivx_checks() {
        let pnl = builtin("pnl-N").unwrap();
        assert!(check_xdivx(&pnl, &w(0, 200).into()).unwrap().passed());
        assert!(check_xdivx(&builtin("triv").unwrap(), &Domain::Full).unwrap().passed());
        let nwp = builtin("nwp-N").unwrap();
        let r = check_xdivx(&nwp, &w(0, 10).into()).unwrap();
        assert_eq!(r.violation(), Some(&Violation::Diagonal { x: 1, found: 2 }));
    }

    #[test]
    fn classification() {
        let cfg = ClassifyConfig::default();
        let pnl = classify(&builtin("pnl-N").unwrap(), &cfg).unwrap();
        assert!(pnl.is_lpm() && !pnl.is_left_loop());
        assert!(matches!(pnl.protomodular, ProtoVerdict::ProvedByXdivX { .. }));

        let wp = classify(&builtin("wp-Z").unwrap(), &cfg).unwrap();
        assert!(matches!(wp.weakly_protomodular, WpVerdict::ProvedAll { .. }));
        match &wp.protomodular {
            ProtoVerdict::RefutedBySubalgebra(r) => {
                assert_eq!(r.subcarrier, SubPredicate::NonNeg);
                assert_eq!(r.element, 1);
            }
            other => panic!("{other:?}"),
        }

        let triv = classify(&builtin("triv").unwrap(), &cfg).unwrap();
        assert!(triv.is_left_loop() && triv.xdivx.passed() && triv.weakly_protomodular.is_positive());
        assert!(triv.protomodular.is_positive());

        let nwp = classify(&builtin("nwp-N").unwrap(), &cfg).unwrap();
        assert!(!nwp.weakly_protomodular.is_positive());
        assert!(matches!(
            nwp.protomodular,
            ProtoVerdict::RefutedBySubalgebra(Refutation { grade: EvidenceGrade::CertifiedMonotone, .. })
        ));
    }
}
