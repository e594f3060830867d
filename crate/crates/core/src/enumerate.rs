//! Exhaustive generation of finite LPMs with unit 0.
//!
//! Cells are filled by backtracking: first the free cells of `mul` (row 0 and
//! column 0 are fixed by the unit laws) row-major, then `ldiv` row-major. A
//! `mul` row is abandoned as soon as its remaining cells cannot cover the
//! values still missing from it, since `y = x * (x \ y)` needs every `y` in
//! the row. An `ldiv` cell `(x, y)` only takes values `v` with
//! `x * v = y`.

use thiserror::Error;

use crate::magma::FiniteMagma;

/// Orders above this need [`EnumConfig::allow_large`].
pub const SOFT_ORDER_LIMIT: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumConfig {
    pub order: usize,
    /// Emit only canonical representatives of isomorphism classes.
    pub up_to_iso: bool,
    /// Also require `y = x \ (x * y)`.
    pub require_identity2: bool,
    pub allow_large: bool,
}

impl EnumConfig {
    pub fn new(order: usize) -> Self {
        EnumConfig { order, up_to_iso: false, require_identity2: false, allow_large: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("order {0} exceeds the limit of {SOFT_ORDER_LIMIT}; pass the override to proceed")]
    TooLarge(usize),
}

struct Search<'a> {
    n: usize,
    mul: Vec<Vec<usize>>,
    ldiv: Vec<Vec<usize>>,
    cfg: &'a EnumConfig,
    perms: Vec<Vec<usize>>,
    emitted: usize,
}

impl Search<'_> {
    fn mul_cell(&mut self, k: usize, visit: &mut dyn FnMut(&FiniteMagma)) {
        let n = self.n;
        let free = (n - 1) * (n - 1);
        if k == free {
            return self.ldiv_cell(0, visit);
        }
        let (r, c) = (1 + k / (n - 1), 1 + k % (n - 1));
        for v in 0..n {
            self.mul[r][c] = v;
            if self.row_can_cover(r, c) {
                self.mul_cell(k + 1, visit);
            }
        }
    }

    /// Whether the cells of row `r` after column `c` can still supply every
    /// value missing from `mul[r][..=c]`.
    fn row_can_cover(&self, r: usize, c: usize) -> bool {
        let row = &self.mul[r];
        let mut present = vec![false; self.n];
        for &v in &row[..=c] {
            present[v] = true;
        }
        let missing = present.iter().filter(|p| !**p).count();
        missing <= self.n - 1 - c
    }

    fn ldiv_cell(&mut self, k: usize, visit: &mut dyn FnMut(&FiniteMagma)) {
        let n = self.n;
        if k == n * n {
            return self.emit(visit);
        }
        let (x, y) = (k / n, k % n);
        for v in 0..n {
            if self.mul[x][v] == y {
                self.ldiv[x][y] = v;
                self.ldiv_cell(k + 1, visit);
            }
        }
    }

    fn emit(&mut self, visit: &mut dyn FnMut(&FiniteMagma)) {
        if self.cfg.require_identity2 {
            let ok = (0..self.n).all(|x| (0..self.n).all(|y| self.ldiv[x][self.mul[x][y]] == y));
            if !ok {
                return;
            }
        }
        if self.cfg.up_to_iso && !is_canonical(&self.mul, &self.ldiv, &self.perms) {
            return;
        }
        self.emitted += 1;
        let name = format!("lpm{}-{}", self.n, self.emitted);
        let m = FiniteMagma::new(name, 0, self.mul.clone(), self.ldiv.clone()).expect("entries in range");
        visit(&m);
    }
}

/// Calls `visit` on every LPM of the configured order, in a fixed order.
pub fn for_each_lpm(cfg: &EnumConfig, mut visit: impl FnMut(&FiniteMagma)) -> Result<usize, EnumError> {
    let n = cfg.order;
    if n == 0 {
        return Err(EnumError::ZeroOrder);
    }
    if n > SOFT_ORDER_LIMIT && !cfg.allow_large {
        return Err(EnumError::TooLarge(n));
    }
    let mut mul = vec![vec![0; n]; n];
    for (i, row) in mul.iter_mut().enumerate() {
        row[0] = i;
    }
    mul[0] = (0..n).collect();
    let mut search = Search {
        n,
        mul,
        ldiv: vec![vec![0; n]; n],
        cfg,
        perms: if cfg.up_to_iso { permutations_fixing_zero(n) } else { Vec::new() },
        emitted: 0,
    };
    if n == 1 {
        search.ldiv_cell(0, &mut visit);
    } else {
        search.mul_cell(0, &mut visit);
    }
    Ok(search.emitted)
}

pub fn enumerate_lpms(cfg: &EnumConfig) -> Result<Vec<FiniteMagma>, EnumError> {
    let mut out = Vec::new();
    for_each_lpm(cfg, |m| out.push(m.clone()))?;
    Ok(out)
}

pub fn count_lpms(order: usize, up_to_iso: bool) -> Result<usize, EnumError> {
    for_each_lpm(&EnumConfig { up_to_iso, ..EnumConfig::new(order) }, |_| {})
}

/// All permutations of `0..n` with `p[0] = 0`, lexicographic.
pub fn permutations_fixing_zero(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 1..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut used = vec![false; n];
    if n > 0 {
        used[0] = true;
        go(&mut vec![0], &mut used, &mut out);
    }
    out
}

/// `t'[p a][p b] = p t[a][b]`.
fn relabel(table: &[Vec<usize>], p: &[usize]) -> Vec<Vec<usize>> {
    let n = table.len();
    let mut out = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            out[p[a]][p[b]] = p[table[a][b]];
        }
    }
    out
}

fn is_canonical(mul: &[Vec<usize>], ldiv: &[Vec<usize>], perms: &[Vec<usize>]) -> bool {
    perms.iter().all(|p| {
        let key = (relabel(mul, p), relabel(ldiv, p));
        (key.0.as_slice(), key.1.as_slice()) >= (mul, ldiv)
    })
}

/// The lexicographically least `(mul, ldiv)` pair over all relabelings that
/// send the unit to 0.
pub fn canonical_form(m: &FiniteMagma) -> FiniteMagma {
    let n = m.size();
    let u = m.unit();
    // move the unit to 0 first, then minimize over permutations fixing 0
    let mut to_front: Vec<usize> = (0..n).collect();
    to_front.swap(0, u);
    let mut inverse = vec![0; n];
    for (i, &v) in to_front.iter().enumerate() {
        inverse[v] = i;
    }
    let mul0 = relabel(m.mul_table(), &inverse);
    let ldiv0 = relabel(m.ldiv_table(), &inverse);
    let best = permutations_fixing_zero(n)
        .iter()
        .map(|p| (relabel(&mul0, p), relabel(&ldiv0, p)))
        .min()
        .expect("at least the identity permutation");
    FiniteMagma::new(m.name(), 0, best.0, best.1).expect("relabeling keeps entries in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::builtin;
    use proptest::prelude::Strategy;

    #[test]
    fn small_counts() {
        assert_eq!(count_lpms(1, false).unwrap(), 1);
        assert_eq!(count_lpms(2, false).unwrap(), 1);
        assert_eq!(count_lpms(3, false).unwrap(), 4);
        let one = enumerate_lpms(&EnumConfig::new(1)).unwrap();
        assert_eq!(one[0].mul_table(), builtin("triv").unwrap().as_finite().unwrap().mul_table());
        let two = enumerate_lpms(&EnumConfig::new(2)).unwrap();
        assert_eq!(two[0].clone().with_name("z2"), *builtin("z2").unwrap().as_finite().unwrap());
    }

    #[test]
    fn limits() {
        assert_eq!(count_lpms(0, false), Err(EnumError::ZeroOrder));
        assert_eq!(count_lpms(6, false), Err(EnumError::TooLarge(6)));
    }

    #[test]
    fn permutations() {
        assert_eq!(permutations_fixing_zero(3), vec![vec![0, 1, 2], vec![0, 2, 1]]);
        assert_eq!(permutations_fixing_zero(4).len(), 6);
        assert_eq!(permutations_fixing_zero(1), vec![vec![0]]);
    }

    #[test]
    fn canonical_form_of_z2_is_z2() {
        let z2 = builtin("z2").unwrap().as_finite().unwrap().clone();
        assert_eq!(canonical_form(&z2), z2);
    }

    #[test]
    fn permuted_copies_share_a_canonical_form() {
        for m in enumerate_lpms(&EnumConfig::new(3)).unwrap() {
            let swapped = [0, 2, 1];
            let copy =
                FiniteMagma::new(m.name(), 0, relabel(m.mul_table(), &swapped), relabel(m.ldiv_table(), &swapped))
                    .unwrap();
            assert_eq!(canonical_form(&copy), canonical_form(&m));
        }
    }

    #[test]
    fn canonical_form_moves_unit_to_zero() {
        let z2 = builtin("z2").unwrap().as_finite().unwrap().clone();
        let moved =
            FiniteMagma::new("z2", 1, relabel(z2.mul_table(), &[1, 0]), relabel(z2.ldiv_table(), &[1, 0])).unwrap();
        assert_eq!(moved.unit(), 1);
        assert_eq!(canonical_form(&moved), z2);
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(100))]
        #[test]
        fn canonical_form_is_idempotent(
            (u, mul, ldiv) in (1usize..6).prop_flat_map(|n| {
                let table = proptest::collection::vec(proptest::collection::vec(0..n, n), n);
                (0..n, table.clone(), table)
            })
        ) {
            let m = FiniteMagma::new("t", u, mul, ldiv).unwrap();
            let c = canonical_form(&m);
            proptest::prop_assert_eq!(canonical_form(&c), c);
        }
    }

    #[test]
    fn iso_representatives_are_canonical() {
        for n in 1..=4 {
            for m in enumerate_lpms(&EnumConfig { up_to_iso: true, ..EnumConfig::new(n) }).unwrap() {
                assert_eq!(canonical_form(&m), m);
            }
        }
    }
}
