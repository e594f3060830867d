//! Acceptance suite: one line per criterion with its time limit. Runs as a
//! plain binary so the lines are always printed.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lpm_core::check::{
    check_identity1, check_identity2, check_identity3, check_props, is_left_loop, is_lpm, magmas_equal_on, Violation,
};
use lpm_core::construct::{construct_mul_from_div, DivisionStructure};
use lpm_core::enumerate::{enumerate_lpms, EnumConfig};
use lpm_core::protomod::{
    classify, is_weakly_protomodular, reachable_levels, verify_witness, witness_search, ClassifyConfig, EvidenceGrade,
    ProtoVerdict, SearchBounds, WitnessChain, WpVerdict,
};
use lpm_core::term::{evaluate, kernel_member, normalize, normalize_counted, parse_term, Assignment, Term};
use lpm_core::{builtin, Domain, Elem, Magma, SubPredicate, Window, BUILTIN_NAMES};

fn win(lo: Elem, hi: Elem) -> Domain {
    Domain::Window(Window::new(lo, hi).unwrap())
}

fn criterion_1() {
    // (x, y, x \ y, x * y) read off the case tables by hand
    let nwp: [(Elem, Elem, Elem, Elem); 5] = [(0, 7, 7, 7), (3, 0, 1, 3), (5, 9, 10, 8), (1, 1, 2, 0), (9, 4, 5, 3)];
    let wp: [(Elem, Elem, Elem, Elem); 5] =
        [(0, -5, -5, -5), (2, 3, 4, 2), (2, -3, -3, -3), (-1, 3, -7, -2), (-2, -3, -6, 1)];
    let pnl: [(Elem, Elem, Elem, Elem); 5] = [(0, 4, 4, 4), (3, 3, 0, 2), (1, 2, 3, 1), (2, 1, 2, 0), (5, 0, 1, 5)];
    let extra_wp = [(-4, -4, 0, -2), (-1, -7, -14, 3), (-3, 4, -9, 2), (4, -6, -6, -6)];
    for (name, rows) in [("nwp-N", &nwp[..]), ("wp-Z", &wp[..]), ("pnl-N", &pnl[..]), ("wp-Z", &extra_wp[..])] {
        let m = builtin(name).unwrap();
        for &(x, y, div, mul) in rows {
            assert_eq!(m.ldiv(x, y).unwrap(), div, "{name}: {x} \\ {y}");
            assert_eq!(m.mul(x, y).unwrap(), mul, "{name}: {x} * {y}");
        }
    }
    for (name, dom) in [("nwp-N", win(0, 200)), ("pnl-N", win(0, 200)), ("wp-Z", win(-200, 200))] {
        let m = builtin(name).unwrap();
        assert!(check_identity1(&m, &dom).unwrap().passed(), "{name} identity 1");
        assert!(check_identity3(&m, &dom).unwrap().passed(), "{name} identity 3");
    }
    let pnl = builtin("pnl-N").unwrap();
    let id2 = check_identity2(&pnl, &win(0, 200)).unwrap();
    assert_eq!(id2.violation(), Some(&Violation::Pair { x: 1, y: 2, found: 0, expected: 2 }));
}

fn criterion_2() {
    let wp = builtin("wp-Z").unwrap();
    let bounds = SearchBounds::new(2, Window::new(-201, 201).unwrap());
    for x in -100..=100 {
        let chain = witness_search(&wp, x, &bounds).unwrap().chain.unwrap_or_else(|| panic!("no chain for {x}"));
        assert!(chain.len() <= 2 && verify_witness(&wp, x, &chain).unwrap(), "{x}: {chain}");
        let closed_form = if x <= 0 { WitnessChain(vec![x]) } else { WitnessChain(vec![-2 * x - 1, -1]) };
        assert!(verify_witness(&wp, x, &closed_form).unwrap(), "{x}: {closed_form}");
    }
    let verdict = is_weakly_protomodular(&wp, &win(-100, 100), &bounds).unwrap();
    assert!(matches!(verdict, WpVerdict::ProvedAll { .. }));
}

fn criterion_3() {
    let nwp = builtin("nwp-N").unwrap();
    let bounds = SearchBounds::new(30, Window::new(0, 200).unwrap());
    for x in 1..=20 {
        assert_eq!(witness_search(&nwp, x, &bounds).unwrap().chain, None, "{x}");
        let levels = reachable_levels(&nwp, x, &bounds).unwrap();
        assert_eq!(levels.len(), 30);
        for (i, set) in levels.iter().enumerate() {
            let d = i as Elem + 1;
            assert_eq!(*set, (x..=x + d).collect::<BTreeSet<_>>(), "x = {x}, d = {d}");
        }
    }
    let verdict = is_weakly_protomodular(&nwp, &win(0, 20), &bounds).unwrap();
    assert!(matches!(verdict, WpVerdict::Inconclusive { element: 1, monotone_certified: true, .. }), "{verdict:?}");
}

fn criterion_4() {
    let cfg = ClassifyConfig::default();
    let pnl = classify(&builtin("pnl-N").unwrap(), &cfg).unwrap();
    assert!(pnl.is_lpm() && !pnl.is_left_loop());
    assert!(matches!(pnl.protomodular, ProtoVerdict::ProvedByXdivX { .. }));

    let wp = classify(&builtin("wp-Z").unwrap(), &cfg).unwrap();
    assert!(wp.is_lpm() && !wp.is_left_loop() && !wp.xdivx.passed());
    assert!(matches!(wp.weakly_protomodular, WpVerdict::ProvedAll { .. }));
    match &wp.protomodular {
        ProtoVerdict::RefutedBySubalgebra(r) => {
            assert_eq!(r.subcarrier, SubPredicate::NonNeg);
            assert_eq!(r.element, 1);
            assert_eq!(r.grade, EvidenceGrade::Evidence);
        }
        other => panic!("wp-Z: {other:?}"),
    }

    let z2 = classify(&builtin("z2").unwrap(), &cfg).unwrap();
    assert!(z2.is_left_loop() && z2.xdivx.passed() && z2.weakly_protomodular.is_positive());
    assert!(z2.protomodular.is_positive());
}

type Tables = (Vec<Vec<usize>>, Vec<Vec<usize>>);

/// All table pairs with unit 0 passing `y = x * (x \ y)` and the unit laws, by brute force
/// over every filling of the non-unit mul cells and every ldiv table.
fn naive_census(n: usize) -> BTreeSet<Tables> {
    let free: Vec<(usize, usize)> = (1..n).flat_map(|r| (1..n).map(move |c| (r, c))).collect();
    let mut out = BTreeSet::new();
    for mi in 0..n.pow(free.len() as u32) {
        let mut mul: Vec<Vec<usize>> = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        if r == 0 {
                            c
                        } else if c == 0 {
                            r
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect();
        let mut k = mi;
        for &(r, c) in &free {
            mul[r][c] = k % n;
            k /= n;
        }
        for li in 0..n.pow((n * n) as u32) {
            let mut k = li;
            let mut ldiv = vec![vec![0; n]; n];
            for row in ldiv.iter_mut() {
                for cell in row.iter_mut() {
                    *cell = k % n;
                    k /= n;
                }
            }
            let id1 = (0..n).all(|x| (0..n).all(|y| mul[x][ldiv[x][y]] == y));
            let id3 = (0..n).all(|x| mul[0][x] == x && mul[x][0] == x);
            if id1 && id3 {
                out.insert((mul.clone(), ldiv));
            }
        }
    }
    out
}

fn criterion_5() {
    for (n, expected) in [(1, 1), (2, 1), (3, 4)] {
        let found: BTreeSet<Tables> = enumerate_lpms(&EnumConfig::new(n))
            .unwrap()
            .into_iter()
            .map(|m| (m.mul_table().to_vec(), m.ldiv_table().to_vec()))
            .collect();
        let oracle = naive_census(n);
        assert_eq!(oracle.len(), expected, "order {n}");
        assert_eq!(found, oracle, "order {n}");
    }
    let z2 = builtin("z2").unwrap();
    assert_eq!(Magma::Finite(enumerate_lpms(&EnumConfig::new(2)).unwrap()[0].clone().with_name("z2")), z2);
    for n in 1..=4 {
        for m in enumerate_lpms(&EnumConfig::new(n)).unwrap() {
            let name = m.name().to_string();
            let m = Magma::Finite(m);
            assert!(is_left_loop(&m, &Domain::Full).unwrap().holds(), "{name}");
            assert!(check_props(&m, &Domain::Full).unwrap().passed(), "{name}");
        }
    }
}

fn criterion_6() {
    for n in 1..=3 {
        for t in enumerate_lpms(&EnumConfig::new(n)).unwrap() {
            let original = Magma::Finite(t);
            let d = DivisionStructure::from_magma(&original).unwrap();
            let built = construct_mul_from_div(&d, &Domain::Full).unwrap();
            assert!(is_lpm(&built, &Domain::Full).unwrap().holds());
            assert_eq!(magmas_equal_on(&built, &original, &Domain::Full).unwrap(), Ok(None), "{}", original.name());
        }
    }
    let nwp = builtin("nwp-N").unwrap();
    let d = DivisionStructure::from_magma(&nwp).unwrap();
    let dom = win(0, 100);
    let built = construct_mul_from_div(&d, &dom).unwrap();
    assert!(is_lpm(&built, &dom).unwrap().holds());
    assert_eq!(magmas_equal_on(&built, &nwp, &dom).unwrap(), Ok(None));
}

fn random_term(rng: &mut ChaCha8Rng, depth: u32, consts: &[Elem]) -> Term {
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..10) {
            0 => Term::Unit,
            1..=4 => Term::Const(consts[rng.gen_range(0..consts.len())]),
            5..=7 => Term::gen("z"),
            _ => Term::gen("w"),
        };
    }
    let a = random_term(rng, depth - 1, consts);
    let b = random_term(rng, depth - 1, consts);
    match rng.gen_range(0..5) {
        // s * (s \ t), so cancellation has something to do
        0 => Term::mul(a.clone(), Term::ldiv(a, b)),
        1 | 2 => Term::mul(a, b),
        _ => Term::ldiv(a, b),
    }
}

/// Straightforward recursive evaluation, kept apart from the library's.
fn eval_direct(t: &Term, m: &Magma, z: Elem, w: Elem) -> Elem {
    match t {
        Term::Unit => m.unit(),
        Term::Const(c) => *c,
        Term::Gen(g) if g == "z" => z,
        Term::Gen(_) => w,
        Term::Mul(a, b) => m.mul(eval_direct(a, m, z, w), eval_direct(b, m, z, w)).unwrap(),
        Term::Ldiv(a, b) => m.ldiv(eval_direct(a, m, z, w), eval_direct(b, m, z, w)).unwrap(),
    }
}

fn criterion_7() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for name in BUILTIN_NAMES {
        let m = builtin(name).unwrap();
        let consts = m.elements(&win(-10, 10)).unwrap();
        for _ in 0..1000 {
            let t = random_term(&mut rng, 5, &consts);
            let (z, w) = (consts[rng.gen_range(0..consts.len())], consts[rng.gen_range(0..consts.len())]);
            let a = Assignment::from([("z".to_string(), z), ("w".to_string(), w)]);
            let value = evaluate(&t, &m, &a).unwrap();
            assert_eq!(value, eval_direct(&t, &m, z, w), "{name}: {t}");
            let n = normalize_counted(&t, &m).unwrap();
            assert_eq!(evaluate(&n.term, &m, &a).unwrap(), value, "{name}: {t} -> {}", n.term);
            assert_eq!(normalize(&n.term, &m).unwrap(), n.term, "{name}: {t}");
            assert!(n.term.node_count() <= t.node_count() && n.steps <= t.node_count(), "{name}: {t}");
            if !t.generators().contains(&"w") {
                assert_eq!(kernel_member(&m, z, &t).unwrap(), value == m.unit(), "{name}: {t}");
            }
        }
    }
    let wp = builtin("wp-Z").unwrap();
    assert_eq!(normalize(&parse_term("(3 * (3 \\ z))").unwrap(), &wp).unwrap(), Term::gen("z"));
}

const CLI_RUNS: &[&[&str]] = &[
    &["check", "builtin:nwp-N", "--window", "0", "200"],
    &["check", "builtin:pnl-N", "--window", "0", "200"],
    &["check", "builtin:wp-Z", "--window", "-200", "200"],
    &["witness", "builtin:wp-Z", "--element", "5"],
    &["witness", "builtin:wp-Z", "--element", "-3", "--depth", "1", "--divisor-window", "-10", "10"],
    &["witness", "builtin:nwp-N", "--element", "1", "--depth", "30", "--divisor-window", "0", "200"],
    &["classify", "builtin:pnl-N"],
    &["classify", "builtin:wp-Z"],
    &["classify", "builtin:z2", "--json"],
    &["enumerate", "--order", "3"],
    &["enumerate", "--order", "4", "--up-to-iso", "--json"],
    &["construct-mul", "builtin:nwp-N", "--window", "0", "100"],
    &["eval", "builtin:wp-Z", "--term", "(3 * (3 \\ z))", "--assign", "z=4"],
    &["kernel", "builtin:wp-Z", "--point", "5", "--term", "((-11) \\ ((-1) \\ z))"],
    &["examples"],
];

fn criterion_8() {
    let exe = env!("CARGO_BIN_EXE_lpm");
    for args in CLI_RUNS {
        let runs: Vec<_> = (0..3).map(|_| Command::new(exe).args(*args).output().unwrap()).collect();
        assert!(!runs[0].stdout.is_empty(), "{args:?}");
        for r in &runs[1..] {
            assert_eq!(r.stdout, runs[0].stdout, "{args:?}");
            assert_eq!(r.status.code(), runs[0].status.code(), "{args:?}");
        }
    }
}

/// Number, title, time limit in seconds, body.
type Criterion = (u32, &'static str, u64, fn());

fn main() {
    let criteria: [Criterion; 8] = [
        (1, "example fidelity", 5, criterion_1),
        (2, "weak protomodularity witnesses", 5, criterion_2),
        (3, "no witnesses for nwp-N", 10, criterion_3),
        (4, "strict inclusion chain", 15, criterion_4),
        (5, "finite census", 30, criterion_5),
        (6, "multiplication from division", 10, criterion_6),
        (7, "rewriting soundness", 10, criterion_7),
        (8, "deterministic CLI reports", 60, criterion_8),
    ];
    let mut failed = 0;
    for (id, title, limit, f) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f));
        let elapsed = start.elapsed();
        let on_time = elapsed < Duration::from_secs(limit);
        let verdict = match (&result, on_time) {
            (Ok(()), true) => "PASS",
            (Ok(()), false) => "FAIL (too slow)",
            (Err(_), _) => "FAIL",
        };
        if verdict != "PASS" {
            failed += 1;
        }
        println!("criterion {id} ({title}): {verdict} in {:.2}s, limit {limit}s", elapsed.as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
