//! Valid triples `(Y, Z, S)` of a semicomplete digraph at a fixed level `t = |Y|`.
//!
//! `Y, Z` partition the vertices, `S` is an inclusion-minimal cover of the
//! backward arcs (arcs from `Z` into `Y`) with `|S| <= k`, and members of `S`
//! respect the degree placement rules. Vertices whose out-degree exceeds
//! `n - t + k` can only sit in `Y`, vertices whose in-degree exceeds `t + k`
//! only in `Z`, so a level is determined by the placement of the few
//! remaining "free" vertices and a minimal cover for each placement.

use crate::bitset::VertexSet;
use crate::digraph::Digraph;
use crate::error::Result;

use super::cover::covers_with_forced;

/// How members of `S` that exceed both degree thresholds are treated.
///
/// Such a vertex needs digons: in a tournament the two thresholds can never
/// both be exceeded, and the two rules produce identical levels.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DegreeRule {
    /// Placement rules applied verbatim: a vertex above both thresholds
    /// would have to lie in `Y` and in `Z`, so such levels are empty.
    Strict,
    /// A vertex above both thresholds must belong to `S` and may sit on
    /// either side. Needed for completeness on digraphs with digons.
    #[default]
    Relaxed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForcedPartition {
    pub y_forced: VertexSet,
    pub z_forced: VertexSet,
    pub free: VertexSet,
}

impl ForcedPartition {
    /// Vertices exceeding both thresholds.
    pub fn doubly_forced(&self) -> VertexSet {
        self.y_forced.intersection(&self.z_forced)
    }
}

/// Splits the vertices by degree for level `t`.
///
/// `y_forced = {v : d+(v) > n - t + k}`, `z_forced = {v : d-(v) > t + k}`,
/// `free` is everything else.
pub fn forced_partition(d: &Digraph, t: usize, k: usize) -> Result<ForcedPartition> {
    d.ensure_semicomplete()?;
    Ok(forced_partition_unchecked(d, t, k))
}

pub(crate) fn forced_partition_unchecked(d: &Digraph, t: usize, k: usize) -> ForcedPartition {
    let n = d.n();
    debug_assert!(t <= n);
    let out_limit = n - t + k;
    let in_limit = t + k;
    let mut y_forced = VertexSet::new(n);
    let mut z_forced = VertexSet::new(n);
    let mut free = VertexSet::new(n);
    for v in 0..n {
        let hi_out = d.out_degree(v) > out_limit;
        let hi_in = d.in_degree(v) > in_limit;
        if hi_out {
            y_forced.insert(v);
        }
        if hi_in {
            z_forced.insert(v);
        }
        if !hi_out && !hi_in {
            free.insert(v);
        }
    }
    ForcedPartition {
        y_forced,
        z_forced,
        free,
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ValidTriple {
    pub t: usize,
    pub y: VertexSet,
    pub s: VertexSet,
}

impl ValidTriple {
    pub fn z(&self) -> VertexSet {
        self.y.complement()
    }

    pub fn source(n: usize) -> Self {
        ValidTriple {
            t: 0,
            y: VertexSet::new(n),
            s: VertexSet::new(n),
        }
    }

    pub fn sink(n: usize) -> Self {
        ValidTriple {
            t: n,
            y: VertexSet::full(n),
            s: VertexSet::new(n),
        }
    }
}

impl std::fmt::Debug for ValidTriple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(t={}, Y={:?}, S={:?})", self.t, self.y, self.s)
    }
}

/// One level of the enumeration, with the data the arc test needs.
#[derive(Clone, Debug)]
pub struct Level {
    pub triples: Vec<ValidTriple>,
    /// `|free|` at this level.
    pub free_len: usize,
    /// Vertices whose side is not fixed by degree: `free` plus doubly forced.
    pub pivots: Vec<usize>,
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct LevelParams {
    pub rule: DegreeRule,
    /// Skip levels whose free set exceeds `7k + 2`; such levels hold no triples.
    pub free_bound_shortcut: bool,
}

/// All `t`-valid triples, in a deterministic order.
pub fn enumerate_t_valid_triples(d: &Digraph, t: usize, k: usize) -> Result<Vec<ValidTriple>> {
    enumerate_t_valid_triples_with(d, t, k, DegreeRule::default())
}

pub fn enumerate_t_valid_triples_with(d: &Digraph, t: usize, k: usize, rule: DegreeRule) -> Result<Vec<ValidTriple>> {
    d.ensure_semicomplete()?;
    if !d.is_dense() {
        return Err(crate::error::Error::TooLarge {
            n: d.n(),
            limit: crate::digraph::DENSE_LIMIT,
        });
    }
    let params = LevelParams {
        rule,
        free_bound_shortcut: true,
    };
    Ok(enumerate_level(d, t, k, params).triples)
}

/// Caller guarantees `d` is semicomplete and dense.
pub(crate) fn enumerate_level(d: &Digraph, t: usize, k: usize, params: LevelParams) -> Level {
    let n = d.n();
    let fp = forced_partition_unchecked(d, t, k);
    let both = fp.doubly_forced();
    let free_len = fp.free.len();

    let mut pivots: Vec<usize> = fp.free.union(&both).to_vec();
    pivots.sort_unstable();
    let empty = |pivots| Level {
        triples: Vec::new(),
        free_len,
        pivots,
    };

    match params.rule {
        DegreeRule::Strict if !both.is_empty() => return empty(pivots),
        // every doubly forced vertex must be in S
        DegreeRule::Relaxed if both.len() > k => return empty(pivots),
        _ => {}
    }
    if params.free_bound_shortcut && free_len + both.len() > 7 * k + 2 {
        return empty(pivots);
    }
    let base_y = fp.y_forced.difference(&both);
    let Some(pick) = t.checked_sub(base_y.len()) else {
        return empty(pivots);
    };
    if pick > pivots.len() {
        return empty(pivots);
    }

    let mut triples = Vec::new();
    for_each_combination(&pivots, pick, |chosen| {
        let mut y = base_y.clone();
        chosen.iter().for_each(|&v| {
            y.insert(v);
        });
        for s in backward_arc_covers(d, &y, k) {
            debug_assert!(respects_degree_rules(&fp, &y, &s, params.rule));
            triples.push(ValidTriple { t, y: y.clone(), s });
        }
    });
    debug_assert!(triples.iter().all(|tr| tr.y.len() == t));
    debug_assert!(n == 0 || triples.len() <= triple_bound(k).unwrap_or(usize::MAX));
    Level {
        triples,
        free_len,
        pivots,
    }
}

/// `2^(8k+2)`, or `None` if it does not fit.
pub fn triple_bound(k: usize) -> Option<usize> {
    let exp = 8 * k + 2;
    (exp < usize::BITS as usize).then(|| 1usize << exp)
}

fn respects_degree_rules(fp: &ForcedPartition, y: &VertexSet, s: &VertexSet, rule: DegreeRule) -> bool {
    s.iter().all(|v| {
        let hi_out = fp.y_forced.contains(v);
        let hi_in = fp.z_forced.contains(v);
        match (rule, hi_out, hi_in) {
            (DegreeRule::Relaxed, true, true) => true,
            _ => (!hi_out || y.contains(v)) && (!hi_in || !y.contains(v)),
        }
    }) && (rule == DegreeRule::Strict || fp.doubly_forced().is_subset(s))
}

/// Minimal covers (size <= k) of the bipartite graph whose edges are the
/// backward arcs `z -> y`, `z ∉ Y`, `y ∈ Y`.
fn backward_arc_covers(d: &Digraph, y: &VertexSet, k: usize) -> Vec<VertexSet> {
    let n = d.n();
    let z = y.complement();
    let in_row = |v| d.in_row(v).expect("dense digraph");
    let out_row = |v| d.out_row(v).expect("dense digraph");

    // Vertices with more than k backward arcs are in every small cover.
    let mut heavy = VertexSet::new(n);
    for v in y.iter() {
        if in_row(v).intersection_len(&z) > k {
            heavy.insert(v);
        }
    }
    for v in z.iter() {
        if out_row(v).intersection_len(y) > k {
            heavy.insert(v);
        }
    }
    if heavy.len() > k {
        return Vec::new();
    }

    // Remaining vertices have at most k backward arcs each; a cover of size
    // <= k then covers at most k^2 of them.
    let light_z = z.difference(&heavy);
    let mut edges = Vec::new();
    for v in y.iter().filter(|&v| !heavy.contains(v)) {
        let tails = in_row(v).intersection(&light_z);
        for u in tails.iter() {
            edges.push((u, v));
        }
        if edges.len() > k * k {
            return Vec::new();
        }
    }
    covers_with_forced(&edges, heavy, k)
}

/// Calls `f` with every `r`-subset of `items` in lexicographic order.
fn for_each_combination<F: FnMut(&[usize])>(items: &[usize], r: usize, mut f: F) {
    let m = items.len();
    if r > m {
        return;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    let mut chosen: Vec<usize> = idx.iter().map(|&i| items[i]).collect();
    loop {
        f(&chosen);
        let Some(pos) = (0..r).rev().find(|&i| idx[i] != i + m - r) else {
            return;
        };
        idx[pos] += 1;
        for j in pos + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
        for j in pos..r {
            chosen[j] = items[idx[j]];
        }
    }
}
