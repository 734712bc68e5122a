//! Exhaustive reference solvers. Deliberately naive: they follow the problem
//! and triple definitions literally and share no code with the fast solver
//! beyond strong-component labelling.

use crate::bitset::VertexSet;
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::semicomplete::{DegreeRule, ValidTriple};

/// Largest `n` accepted by [`optimal_coc`].
pub const COC_GUARD: usize = 24;
/// Largest `n` accepted by [`brute_force_triples`].
pub const TRIPLE_GUARD: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub optimum: usize,
    pub witness: VertexSet,
}

/// Smallest `X` with `mco(D - X) <= ell`, searching sizes `0..=cap`.
///
/// Sizes are tried in increasing order and subsets of one size in
/// lexicographic order, so the witness is the lexicographically first
/// optimal set.
pub fn optimal_coc(d: &Digraph, ell: usize, cap: usize) -> Result<Option<OracleResult>> {
    let n = d.n();
    if n > COC_GUARD {
        return Err(Error::OracleGuard { n, limit: COC_GUARD });
    }
    for size in 0..=cap.min(n) {
        let mut found = None;
        for_each_subset_of_size(n, size, |x| {
            if d.mco(x) <= ell {
                found = Some(x.clone());
                true
            } else {
                false
            }
        });
        if let Some(witness) = found {
            return Ok(Some(OracleResult { optimum: size, witness }));
        }
    }
    Ok(None)
}

/// Directed feedback vertex set: `optimal_coc` with `ell = 1`.
pub fn min_feedback_vertex_set(d: &Digraph, cap: usize) -> Result<Option<OracleResult>> {
    optimal_coc(d, 1, cap)
}

/// Every `t`-valid triple, by checking all `C(n, t)` partitions against all
/// `2^n` candidate sets `S` with the definition verbatim.
pub fn brute_force_triples(d: &Digraph, t: usize, k: usize) -> Result<Vec<ValidTriple>> {
    brute_force_triples_with(d, t, k, DegreeRule::Strict)
}

/// As [`brute_force_triples`]; under [`DegreeRule::Relaxed`] a member of `S`
/// above both degree thresholds may sit on either side.
pub fn brute_force_triples_with(d: &Digraph, t: usize, k: usize, rule: DegreeRule) -> Result<Vec<ValidTriple>> {
    let n = d.n();
    if n > TRIPLE_GUARD {
        return Err(Error::OracleGuard { n, limit: TRIPLE_GUARD });
    }
    d.ensure_semicomplete()?;
    if t > n {
        return Ok(Vec::new());
    }
    let full: u32 = if n == 32 { !0 } else { (1u32 << n) - 1 };
    let out_hi = |v: usize| d.out_degree(v) > n - t + k;
    let in_hi = |v: usize| d.in_degree(v) > t + k;

    let mut out = Vec::new();
    for y in 0u32..=full {
        if y.count_ones() as usize != t {
            continue;
        }
        let z = full & !y;
        let backward: Vec<(usize, usize)> = (0..n)
            .filter(|&zv| z >> zv & 1 == 1)
            .flat_map(|zv| (0..n).filter(move |&yv| y >> yv & 1 == 1).map(move |yv| (zv, yv)))
            .filter(|&(zv, yv)| d.has_arc(zv, yv))
            .collect();
        let covers = |s: u32| backward.iter().all(|&(a, b)| s >> a & 1 == 1 || s >> b & 1 == 1);

        for s in 0u32..=full {
            if s.count_ones() as usize > k || !covers(s) {
                continue;
            }
            let minimal = (0..n).filter(|&v| s >> v & 1 == 1).all(|v| !covers(s & !(1 << v)));
            if !minimal {
                continue;
            }
            let placed = (0..n).filter(|&v| s >> v & 1 == 1).all(|v| {
                let in_y = y >> v & 1 == 1;
                match (rule, out_hi(v), in_hi(v)) {
                    (DegreeRule::Relaxed, true, true) => true,
                    (_, hi_out, hi_in) => (!hi_out || in_y) && (!hi_in || !in_y),
                }
            });
            if placed {
                out.push(ValidTriple {
                    t,
                    y: mask_to_set(n, y),
                    s: mask_to_set(n, s),
                });
            }
        }
    }
    Ok(out)
}

fn mask_to_set(n: usize, mask: u32) -> VertexSet {
    VertexSet::from_iter_with_capacity(n, (0..n).filter(|&v| mask >> v & 1 == 1))
}

/// Visits `size`-subsets of `0..n` in lexicographic order until `f` returns true.
fn for_each_subset_of_size<F: FnMut(&VertexSet) -> bool>(n: usize, size: usize, mut f: F) {
    let mut idx: Vec<usize> = (0..size).collect();
    let mut set = VertexSet::from_iter_with_capacity(n, idx.iter().copied());
    loop {
        if f(&set) {
            return;
        }
        let Some(pos) = (0..size).rev().find(|&i| idx[i] != i + n - size) else {
            return;
        };
        for &v in &idx[pos..] {
            set.remove(v);
        }
        idx[pos] += 1;
        for j in pos + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
        for &v in &idx[pos..] {
            set.insert(v);
        }
    }
}
