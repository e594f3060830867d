//! Named example structures, stored in the text formats.

use crate::error::Error;
use crate::format::parse_magma;
use crate::magma::Magma;

/// Registry order is alphabetical so listings are stable.
pub const BUILTIN_NAMES: [&str; 5] = ["nwp-N", "pnl-N", "triv", "wp-Z", "z2"];

const SOURCES: [(&str, &str, &str); 5] = [
    ("nwp-N", include_str!("../data/nwp-N.lpmr"), "LPM on N that is not weakly protomodular: x \\ y = y + 1 for x > 0"),
    ("pnl-N", include_str!("../data/pnl-N.lpmr"), "LPM on N with x \\ x = 0 (protomodular) that is not a left loop"),
    ("triv", include_str!("../data/triv.lpmt"), "the one-element LPM"),
    (
        "wp-Z",
        include_str!("../data/wp-Z.lpmr"),
        "weakly protomodular LPM on Z with nwp-N as its nonnegative subalgebra",
    ),
    ("z2", include_str!("../data/z2.lpmt"), "the group of order 2, the unique LPM of order 2"),
];

/// Source text of a builtin in its file format.
pub fn builtin_source(name: &str) -> Result<&'static str, Error> {
    SOURCES
        .iter()
        .find(|s| s.0 == name)
        .map(|s| s.1)
        .ok_or_else(|| Error::UnknownBuiltin { name: name.to_string(), available: BUILTIN_NAMES.join(", ") })
}

pub fn builtin(name: &str) -> Result<Magma, Error> {
    Ok(parse_magma(builtin_source(name)?).expect("builtin sources parse"))
}

/// `(name, one-line description)` for every builtin, sorted by name.
pub fn builtin_descriptions() -> Vec<(&'static str, &'static str)> {
    SOURCES.iter().map(|s| (s.0, s.2)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magma::Elem;

    #[test]
    fn all_builtins_load() {
        for name in BUILTIN_NAMES {
            assert_eq!(builtin(name).unwrap().name(), name);
        }
        let mut sorted = BUILTIN_NAMES;
        sorted.sort();
        assert_eq!(sorted, BUILTIN_NAMES);
    }

    #[test]
    fn unknown_builtin_lists_names() {
        let err = builtin("zz").unwrap_err().to_string();
        assert!(err.contains("nwp-N") && err.contains("z2"), "{err}");
    }

    // Independent transcriptions of the case tables, used as oracles below.
    fn nwp_ldiv(x: Elem, y: Elem) -> Elem {
        if x == 0 {
            y
        } else {
            y + 1
        }
    }

    fn nwp_mul(x: Elem, y: Elem) -> Elem {
        if y == 0 {
            x
        } else if x == 0 {
            y
        } else {
            y - 1
        }
    }

    fn pnl_ldiv(x: Elem, y: Elem) -> Elem {
        if x == 0 {
            y
        } else if x == y {
            0
        } else {
            y + 1
        }
    }

    #[test]
    fn rule_builtins_match_case_tables() {
        let nwp = builtin("nwp-N").unwrap();
        let pnl = builtin("pnl-N").unwrap();
        for x in 0..=100 {
            for y in 0..=100 {
                assert_eq!(nwp.ldiv(x, y).unwrap(), nwp_ldiv(x, y));
                assert_eq!(nwp.mul(x, y).unwrap(), nwp_mul(x, y));
                assert_eq!(pnl.ldiv(x, y).unwrap(), pnl_ldiv(x, y));
                assert_eq!(pnl.mul(x, y).unwrap(), nwp_mul(x, y));
            }
        }
    }

    #[test]
    fn hand_transcribed_values() {
        let wp = builtin("wp-Z").unwrap();
        assert_eq!(wp.mul(-1, -7).unwrap(), 3);
        assert_eq!(wp.ldiv(-1, 3).unwrap(), -7);
        let nwp = builtin("nwp-N").unwrap();
        assert_eq!(nwp.mul(2, 3).unwrap(), 2);
        assert_eq!(nwp.ldiv(2, 3).unwrap(), 4);
        for name in BUILTIN_NAMES {
            let m = builtin(name).unwrap();
            let e = m.unit();
            for a in 0..m.elements(&crate::Domain::Window(crate::Window::new(0, 10).unwrap())).unwrap().len() as Elem {
                assert_eq!(m.mul(e, a).unwrap(), a, "{name}");
                assert_eq!(m.ldiv(e, a).unwrap(), a, "{name}");
            }
        }
    }
}
