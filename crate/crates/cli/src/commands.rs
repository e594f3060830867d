use std::fs;

use serde_json::{json, Value};

use lpm_core::check::{check_identity1, check_identity2, check_identity3, check_props, is_lpm, CheckReport};
use lpm_core::construct::{check_preconditions, construct_mul_from_div, mul_rows, DivisionStructure};
use lpm_core::enumerate::{for_each_lpm, EnumConfig};
use lpm_core::format::{parse_division, parse_magma, print_division, print_table};
use lpm_core::protomod::{
    classify, default_divisor_window, witness_search, ClassifyConfig, ProtoVerdict, SearchBounds, WitnessChain,
    WpVerdict, DEFAULT_DEPTH, DEFAULT_RANGE,
};
use lpm_core::term::{evaluate, kernel_member, normalize_counted, parse_term, Assignment, Term};
use lpm_core::{builtin, Domain, Elem, Magma, Window};

use crate::report::Report;
use crate::{Command, SearchArgs, WindowArg};

type CmdResult = Result<(i32, String), String>;

pub(crate) fn execute(cmd: &Command, json: bool) -> CmdResult {
    match cmd {
        Command::Check { source, window } => check(source, window, json),
        Command::Classify { source, range, window, search, subalgebras } => {
            classify_cmd(source, *range, window, search, subalgebras, json)
        }
        Command::Witness { source, element, search } => witness(source, *element, search, json),
        Command::Enumerate { order, up_to_iso, count_only, identity2, allow_large } => {
            let cfg = EnumConfig {
                order: *order,
                up_to_iso: *up_to_iso,
                require_identity2: *identity2,
                allow_large: *allow_large,
            };
            enumerate(&cfg, *count_only, json)
        }
        Command::Eval { source, term, assign } => eval(source, term, assign.as_deref(), json),
        Command::Kernel { source, point, term } => kernel(source, *point, term, json),
        Command::ConstructMul { source, window } => construct(source, window, json),
        Command::Examples => examples(json),
    }
}

fn finish(code: i32, report: &Report, json: bool) -> CmdResult {
    Ok((code, if json { report.to_json() } else { report.to_text() }))
}

fn read_source(src: &str) -> Result<String, String> {
    fs::read_to_string(src).map_err(|e| format!("{src}: {e}"))
}

fn load(src: &str) -> Result<Magma, String> {
    if let Some(name) = src.strip_prefix("builtin:") {
        return builtin(name).map_err(|e| e.to_string());
    }
    parse_magma(&read_source(src)?).map_err(|e| format!("{src}:{e}"))
}

fn window(bounds: &[Elem]) -> Result<Window, String> {
    Window::new(bounds[0], bounds[1]).map_err(|e| e.to_string())
}

/// The given window, else the whole carrier when finite, else the default
/// symmetric window; clamped to the carrier.
fn domain_for(m: &Magma, arg: &WindowArg) -> Result<Domain, String> {
    let dom = match &arg.window {
        Some(b) => Domain::Window(window(b)?),
        None if m.is_finite() => Domain::Full,
        None => Domain::Window(Window::symmetric(DEFAULT_RANGE)),
    };
    m.effective_domain(&dom).map_err(|e| e.to_string())
}

fn check(src: &str, arg: &WindowArg, json: bool) -> CmdResult {
    let m = load(src)?;
    let dom = domain_for(&m, arg)?;
    let err = |e: lpm_core::DomainError| e.to_string();
    let id1 = check_identity1(&m, &dom).map_err(err)?;
    let id2 = check_identity2(&m, &dom).map_err(err)?;
    let id3 = check_identity3(&m, &dom).map_err(err)?;
    let props = check_props(&m, &dom).map_err(err)?;

    let mut r = Report::new();
    r.put("source", m.name()).put("domain", dom.to_string());
    r.put("identity 1", CheckReport::summary(&id1))
        .put("identity 2", CheckReport::summary(&id2))
        .put("identity 3", CheckReport::summary(&id3));
    r.put("surjectivity", props.surjectivity.summary());
    r.put("injectivity", CheckReport::summary(&props.injectivity));
    r.put("division by unit", CheckReport::summary(&props.division_by_unit));
    r.put("pseudo-cancellation", CheckReport::summary(&props.pseudo_cancellation));
    let lpm = id1.passed() && id3.passed();
    r.put("lpm", lpm).put("left loop", lpm && id2.passed());

    // a window can cut off preimages, so only an exact surjectivity failure counts
    let surjective = props.surjectivity.passed() || (!props.surjectivity.exact && props.surjectivity.error.is_none());
    let ok = lpm
        && id2.passed()
        && surjective
        && props.injectivity.passed()
        && props.division_by_unit.passed()
        && props.pseudo_cancellation.passed();
    finish(if ok { 0 } else { 1 }, &r, json)
}

fn search_bounds(m: &Magma, search: &SearchArgs, range: Window) -> Result<SearchBounds, String> {
    let divisors = match &search.divisor_window {
        Some(b) => Domain::Window(window(b)?),
        None if m.is_finite() => Domain::Full,
        None => Domain::Window(default_divisor_window(range)),
    };
    Ok(SearchBounds::new(search.depth.unwrap_or(DEFAULT_DEPTH), divisors))
}

fn effective(m: &Magma, d: &Domain) -> Result<Domain, String> {
    m.effective_domain(d).map_err(|e| e.to_string())
}

fn chain_text(m: &Magma, chain: &WitnessChain) -> String {
    chain
        .elements()
        .iter()
        .map(|&v| if v == m.unit() { "e".to_string() } else { v.to_string() })
        .collect::<Vec<_>>()
        .join(" ")
}

fn classify_cmd(
    src: &str,
    range: Option<Elem>,
    arg: &WindowArg,
    search: &SearchArgs,
    subalgebras: &[lpm_core::SubPredicate],
    json: bool,
) -> CmdResult {
    let m = load(src)?;
    let range = match (&arg.window, range) {
        (Some(b), _) => window(b)?,
        (None, Some(r)) if r >= 0 => Window::symmetric(r),
        (None, Some(r)) => return Err(format!("--range must be nonnegative, got {r}")),
        (None, None) => Window::symmetric(DEFAULT_RANGE),
    };
    let mut cfg = ClassifyConfig { range, bounds: search_bounds(&m, search, range)?, ..ClassifyConfig::default() };
    if !subalgebras.is_empty() {
        cfg.subalgebras = subalgebras.to_vec();
    }
    let report = classify(&m, &cfg).map_err(|e| e.to_string())?;

    let mut r = Report::new();
    r.put("source", m.name()).put("domain", report.domain.to_string());
    r.put("depth", cfg.bounds.depth as u64);
    r.put("divisors", effective(&m, &cfg.bounds.divisors)?.to_string());
    r.put("value bound", cfg.bounds.value_bound);
    r.put("subalgebras", cfg.subalgebras.iter().map(|p| p.to_string()).collect::<Vec<_>>());

    let ll = &report.left_loop;
    r.put(
        "lpm",
        if ll.lpm.holds() {
            "yes".to_string()
        } else {
            format!("no ({})", first_failure(&[&ll.lpm.identity1, &ll.lpm.identity3]))
        },
    );
    r.put(
        "left loop",
        if ll.holds() {
            "yes".to_string()
        } else if !ll.lpm.holds() {
            "no".to_string()
        } else {
            format!("no (identity 2 {})", CheckReport::summary(&ll.identity2))
        },
    );
    r.put("x\\x=e", CheckReport::summary(&report.xdivx));

    r.put("weakly protomodular", wp_text(&report.weakly_protomodular));
    if let Some(w) = report.weakly_protomodular.witnesses() {
        r.put("max chain length", w.values().map(WitnessChain::len).max().unwrap_or(0) as u64);
    }
    match &report.protomodular {
        ProtoVerdict::ProvedByXdivX { domain } => {
            r.put("protomodular", "proved (x\\x=e)").put("proved on", domain.to_string());
        }
        ProtoVerdict::RefutedBySubalgebra(f) => {
            r.put("protomodular", format!("refuted-by-subalgebra ({})", f.grade));
            r.put(
                "refutation",
                format!(
                    "subalgebra {} is not weakly protomodular: {} has no chain within depth {} over {}",
                    f.subcarrier, f.element, f.depth, f.divisors
                ),
            );
        }
        ProtoVerdict::Unknown { reason } => {
            r.put("protomodular", format!("unknown ({reason})"));
        }
    }
    if !report.skipped_subalgebras.is_empty() {
        let skipped: Vec<String> =
            report.skipped_subalgebras.iter().map(|(p, why)| format!("{p}: not closed, {why}")).collect();
        r.put("skipped subalgebras", skipped);
    }
    let ok = report.is_lpm() && report.protomodular.is_positive();
    finish(if ok { 0 } else { 1 }, &r, json)
}

fn first_failure(reports: &[&CheckReport]) -> String {
    reports.iter().find(|r| !r.passed()).map(|r| format!("{} {}", r.property.key(), r.summary())).unwrap_or_default()
}

fn wp_text(v: &WpVerdict) -> String {
    match v {
        WpVerdict::ProvedAll { range, .. } => format!("proved on range {}", domain_range(range)),
        WpVerdict::Decided { holds: true, .. } => "yes (exact, finite carrier)".to_string(),
        WpVerdict::Decided { counterexample, .. } => format!(
            "no (exact, finite carrier): {} has no chain",
            counterexample.map_or("?".to_string(), |x| x.to_string())
        ),
        WpVerdict::Inconclusive { element, depth, divisors, pruned, monotone_certified } => {
            let mut s = format!("inconclusive: {element} has no chain within depth {depth} over {divisors}");
            if *pruned > 0 {
                s.push_str(&format!(", {pruned} states pruned by the value bound"));
            }
            if *monotone_certified {
                s.push_str(", certified (monotonicity)");
            }
            s
        }
    }
}

fn domain_range(d: &Domain) -> String {
    match d {
        Domain::Window(w) => w.to_string(),
        Domain::Full => "full carrier".to_string(),
    }
}

fn witness(src: &str, x: Elem, search: &SearchArgs, json: bool) -> CmdResult {
    let m = load(src)?;
    let range = Window::symmetric(DEFAULT_RANGE.max(x.saturating_abs()));
    let bounds = search_bounds(&m, search, range)?;
    let outcome = witness_search(&m, x, &bounds).map_err(|e| e.to_string())?;

    let mut r = Report::new();
    r.put("source", m.name()).put("element", x);
    r.put("depth", bounds.depth as u64);
    r.put("divisors", effective(&m, &bounds.divisors)?.to_string());
    r.put("value bound", bounds.value_bound);
    match &outcome.chain {
        Some(c) => {
            r.put("chain", chain_text(&m, c)).put("chain length", c.len() as u64);
        }
        None => {
            r.put("chain", "none within bounds");
        }
    }
    r.put("states visited", outcome.states as u64).put("states pruned", outcome.pruned as u64);
    finish(if outcome.chain.is_some() { 0 } else { 1 }, &r, json)
}

fn enumerate(cfg: &EnumConfig, count_only: bool, json: bool) -> CmdResult {
    let mut records = Vec::new();
    let count = for_each_lpm(cfg, |m| {
        if !count_only {
            records.push(m.clone());
        }
    })
    .map_err(|e| e.to_string())?;

    let mut r = Report::new();
    r.put("order", cfg.order as u64).put("up to iso", cfg.up_to_iso).put("identity 2 filter", cfg.require_identity2);
    r.put("count", count as u64);
    if count_only {
        return finish(0, &r, json);
    }
    if json {
        let structures: Vec<Value> = records
            .iter()
            .map(|m| json!({"name": m.name(), "unit": m.unit(), "mul": m.mul_table(), "ldiv": m.ldiv_table()}))
            .collect();
        r.put("structures", structures);
        return finish(0, &r, true);
    }
    // records in the table format, separated by blank lines, then the summary as comments
    let mut out: Vec<String> = records.iter().map(print_table).collect();
    out.push(r.to_text().lines().map(|l| format!("# {l}\n")).collect());
    Ok((0, out.join("\n")))
}

fn parse_assignment(text: Option<&str>) -> Result<Assignment, String> {
    let mut a = Assignment::new();
    for part in text.unwrap_or("").split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| format!("bad assignment `{part}`, expected NAME=VALUE"))?;
        let v: Elem = v.trim().parse().map_err(|_| format!("bad value in assignment `{part}`"))?;
        a.insert(k.trim().to_string(), v);
    }
    Ok(a)
}

fn term(text: &str) -> Result<Term, String> {
    parse_term(text).map_err(|e| format!("term:{e}"))
}

fn eval(src: &str, text: &str, assign: Option<&str>, json: bool) -> CmdResult {
    let m = load(src)?;
    let t = term(text)?;
    let a = parse_assignment(assign)?;
    let value = evaluate(&t, &m, &a).map_err(|e| e.to_string())?;
    let n = normalize_counted(&t, &m).map_err(|e| e.to_string())?;

    let mut r = Report::new();
    r.put("source", m.name()).put("term", t.to_string());
    let shown: Vec<String> = a.iter().map(|(k, v)| format!("{k}={v}")).collect();
    r.put("assignment", if shown.is_empty() { Value::Null } else { shown.into() });
    r.put("value", value).put("normal form", n.term.to_string()).put("rewrite steps", n.steps as u64);
    finish(0, &r, json)
}

fn kernel(src: &str, x: Elem, text: &str, json: bool) -> CmdResult {
    let m = load(src)?;
    let t = term(text)?;
    let member = kernel_member(&m, x, &t).map_err(|e| e.to_string())?;
    let value = evaluate(&t, &m, &Assignment::from([("z".to_string(), x)])).map_err(|e| e.to_string())?;

    let mut r = Report::new();
    r.put("source", m.name()).put("point", x).put("term", t.to_string());
    r.put("value", value).put("in kernel", member);
    finish(if member { 0 } else { 1 }, &r, json)
}

fn load_division(src: &str) -> Result<DivisionStructure, String> {
    if let Some(name) = src.strip_prefix("builtin:") {
        let m = builtin(name).map_err(|e| e.to_string())?;
        return DivisionStructure::from_magma(&m).ok_or_else(|| format!("{name} has no division to read"));
    }
    parse_division(&read_source(src)?).map_err(|e| format!("{src}:{e}"))
}

fn construct(src: &str, arg: &WindowArg, json: bool) -> CmdResult {
    let d = load_division(src)?;
    let dom = match (&d, &arg.window) {
        (_, Some(b)) => Domain::Window(window(b)?),
        (DivisionStructure::Table { .. }, None) => Domain::Full,
        (DivisionStructure::Rules { .. }, None) => Domain::Window(Window::symmetric(DEFAULT_RANGE)),
    };
    let pre = check_preconditions(&d, &dom).map_err(|e| e.to_string())?;

    let mut r = Report::new();
    r.put("source", d.name()).put("domain", pre[0].domain.to_string());
    r.put("injectivity", CheckReport::summary(&pre[0]));
    r.put("division by unit", CheckReport::summary(&pre[1]));
    r.put("pseudo-cancellation", CheckReport::summary(&pre[2]));
    if !pre.iter().all(CheckReport::passed) {
        r.put("result", "preconditions fail, no multiplication constructed");
        return finish(1, &r, json);
    }
    let m = construct_mul_from_div(&d, &dom).map_err(|e| e.to_string())?;
    let lpm = is_lpm(&m, &pre[0].domain).map_err(|e| e.to_string())?;
    r.put("lpm", lpm.holds());
    match &m {
        Magma::Finite(t) => {
            r.put("structure", print_table(t));
        }
        Magma::Constructed(c) => {
            let w = c.window();
            let rows = mul_rows(&m, w).map_err(|e| e.to_string())?;
            r.put("mul window", w.to_string());
            r.put("mul rows", rows.into_iter().map(|(_, row)| row).collect::<Vec<_>>());
            r.put("division", print_division(&d));
        }
        _ => unreachable!("construction yields tables or windowed rules"),
    }
    finish(if lpm.holds() { 0 } else { 1 }, &r, json)
}

fn examples(json: bool) -> CmdResult {
    let mut r = Report::new();
    for (name, description) in lpm_core::builtins::builtin_descriptions() {
        r.put(name, description);
    }
    finish(0, &r, json)
}
