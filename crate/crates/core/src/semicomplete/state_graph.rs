//! The leveled state graph over valid triples and its arc test.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::VertexSet;
use crate::digraph::{Instance, DENSE_LIMIT};
use crate::error::{Error, Result};

use super::triples::{enumerate_level, DegreeRule, Level, LevelParams, ValidTriple};

/// Which implementation of the arc test to run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ArcCheck {
    /// Whole-set bit operations, O(n / 64) per candidate pair.
    #[default]
    Dense,
    /// Touches only the level pivots and the two cover sets, O(k) per pair.
    Sparse,
}

#[derive(Clone, Copy, Debug)]
pub struct SolverOptions {
    pub rule: DegreeRule,
    pub arc_check: ArcCheck,
    pub free_bound_shortcut: bool,
    pub parallel: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            rule: DegreeRule::default(),
            arc_check: ArcCheck::default(),
            free_bound_shortcut: true,
            parallel: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StateArc {
    pub from: usize,
    pub to: usize,
    pub weight: usize,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct BuildStats {
    pub triples_per_level: Vec<usize>,
    pub free_per_level: Vec<usize>,
    pub arcs_generated: usize,
    /// Candidate pairs skipped by the level-gap rule without testing.
    pub arcs_pruned: usize,
    /// Candidate pairs tested and rejected.
    pub arcs_rejected: usize,
    #[serde(skip)]
    pub enumerate_time: Duration,
    #[serde(skip)]
    pub arcs_time: Duration,
}

#[derive(Clone, Debug)]
pub struct StateGraph {
    pub n: usize,
    pub ell: usize,
    pub k: usize,
    /// All triples, grouped by level in increasing `t`.
    pub triples: Vec<ValidTriple>,
    /// Triples of level `t` are `triples[level_start[t]..level_start[t + 1]]`.
    pub level_start: Vec<usize>,
    /// Arcs grouped by head, heads increasing, tails increasing within a group.
    pub arcs: Vec<StateArc>,
    in_start: Vec<usize>,
    pub source: usize,
    pub sink: usize,
    pub stats: BuildStats,
}

impl StateGraph {
    pub fn level(&self, t: usize) -> &[ValidTriple] {
        &self.triples[self.level_start[t]..self.level_start[t + 1]]
    }

    pub fn in_arcs(&self, id: usize) -> &[StateArc] {
        &self.arcs[self.in_start[id]..self.in_start[id + 1]]
    }

    pub fn out_arcs(&self, id: usize) -> impl Iterator<Item = &StateArc> {
        self.arcs.iter().filter(move |a| a.from == id)
    }

    pub fn find(&self, t: usize, y: &VertexSet, s: &VertexSet) -> Option<usize> {
        let start = self.level_start[t];
        self.level(t)
            .iter()
            .position(|tr| &tr.y == y && &tr.s == s)
            .map(|i| start + i)
    }
}

/// Largest level gap `t2 - t1` for which an arc can have weight at most `k`:
/// the slab minus at most `2k` cover vertices must fit `ell + k`.
pub fn max_level_gap(ell: usize, k: usize) -> usize {
    ell + 3 * k
}

/// Weight of the arc `a -> b`, or `None` if the pair is not an arc.
///
/// Conditions: `Y_a ⊂ Y_b`; members of `S_a ∩ Z_a` still in `Z_b` stay in
/// `S_b`; members of `Y_a ∖ S_a` stay in `Y_b ∖ S_b`; and the weight
/// `|S_a ∖ S_b| + max(0, |Z_a ∩ Y_b ∖ (S_a ∪ S_b)| - ell)` is at most `k`.
pub fn state_arc(a: &ValidTriple, b: &ValidTriple, k: usize, ell: usize) -> Option<usize> {
    if a.t >= b.t || !a.y.is_subset(&b.y) {
        return None;
    }
    // S_a ∩ Z_a ∩ Z_b ⊆ S_b
    let z_b = b.y.complement();
    let mut leaving = a.s.difference(&a.y);
    leaving.intersect_with(&z_b);
    if !leaving.is_subset(&b.s) {
        return None;
    }
    // Y_a ∖ S_a ⊆ Y_b ∖ S_b, given Y_a ⊆ Y_b
    let settled = a.y.difference(&a.s);
    if !settled.is_disjoint(&b.s) {
        return None;
    }
    let mut slab = b.y.difference(&a.y);
    slab.difference_with(&a.s);
    slab.difference_with(&b.s);
    let weight = a.s.difference_len(&b.s) + slab.len().saturating_sub(ell);
    (weight <= k).then_some(weight)
}

/// Same result as [`state_arc`], inspecting only `pivots_a ∪ pivots_b ∪ S_a ∪ S_b`.
///
/// Outside the pivots a vertex's side is fixed by its degree, and a vertex
/// fixed to `Y` at level `t_a` stays fixed to `Y` (or becomes a pivot) at any
/// higher level, so `Y_a ⊆ Y_b` only needs checking on the pivots.
pub fn state_arc_sparse(
    a: &ValidTriple,
    b: &ValidTriple,
    pivots_a: &[usize],
    pivots_b: &[usize],
    k: usize,
    ell: usize,
) -> Option<usize> {
    if a.t >= b.t {
        return None;
    }
    let escapes = |v: usize| a.y.contains(v) && !b.y.contains(v);
    if pivots_a.iter().chain(pivots_b).any(|&v| escapes(v)) {
        return None;
    }
    let mut s_a_minus_s_b = 0;
    let mut covered_in_slab = 0;
    for v in a.s.iter() {
        if escapes(v) {
            return None;
        }
        let in_z_a = !a.y.contains(v);
        let in_z_b = !b.y.contains(v);
        if in_z_a && in_z_b && !b.s.contains(v) {
            return None;
        }
        if !b.s.contains(v) {
            s_a_minus_s_b += 1;
        }
        if in_z_a && !in_z_b {
            covered_in_slab += 1;
        }
    }
    for v in b.s.iter() {
        if escapes(v) {
            return None;
        }
        if a.y.contains(v) && !a.s.contains(v) {
            return None;
        }
        if !a.y.contains(v) && b.y.contains(v) && !a.s.contains(v) {
            covered_in_slab += 1;
        }
    }
    let slab = (b.t - a.t) - covered_in_slab;
    let weight = s_a_minus_s_b + slab.saturating_sub(ell);
    (weight <= k).then_some(weight)
}

/// Builds the full state graph. The instance must be semicomplete.
pub fn build_state_graph(inst: &Instance) -> Result<StateGraph> {
    build_state_graph_with(inst, &SolverOptions::default())
}

pub fn build_state_graph_with(inst: &Instance, opts: &SolverOptions) -> Result<StateGraph> {
    let d = &inst.digraph;
    if inst.ell == 0 {
        return Err(Error::ZeroEll);
    }
    if !d.is_dense() {
        return Err(Error::TooLarge {
            n: d.n(),
            limit: DENSE_LIMIT,
        });
    }
    d.ensure_semicomplete()?;
    let (n, k, ell) = (d.n(), inst.k, inst.ell);
    let params = LevelParams {
        rule: opts.rule,
        free_bound_shortcut: opts.free_bound_shortcut,
    };

    let clock = Instant::now();
    let levels: Vec<Level> = if opts.parallel {
        (0..=n)
            .into_par_iter()
            .map(|t| enumerate_level(d, t, k, params))
            .collect()
    } else {
        (0..=n).map(|t| enumerate_level(d, t, k, params)).collect()
    };
    let enumerate_time = clock.elapsed();

    let mut level_start = Vec::with_capacity(n + 2);
    let mut triples = Vec::new();
    let mut level_of = Vec::new();
    for (t, level) in levels.iter().enumerate() {
        level_start.push(triples.len());
        triples.extend(level.triples.iter().cloned());
        level_of.extend(std::iter::repeat_n(t, level.triples.len()));
    }
    level_start.push(triples.len());

    let source = level_start[0];
    let sink = level_start[n];
    debug_assert_eq!(triples[source], ValidTriple::source(n));
    debug_assert_eq!(triples[sink], ValidTriple::sink(n));

    let clock = Instant::now();
    let gap = max_level_gap(ell, k);
    let tails_of = |to: usize| -> (Vec<StateArc>, usize) {
        let b = &triples[to];
        let tb = level_of[to];
        let lo = tb.saturating_sub(gap);
        let mut found = Vec::new();
        let mut rejected = 0;
        for from in level_start[lo]..level_start[tb] {
            let a = &triples[from];
            let w = match opts.arc_check {
                ArcCheck::Dense => state_arc(a, b, k, ell),
                ArcCheck::Sparse => state_arc_sparse(a, b, &levels[level_of[from]].pivots, &levels[tb].pivots, k, ell),
            };
            match w {
                Some(weight) => found.push(StateArc { from, to, weight }),
                None => rejected += 1,
            }
        }
        (found, rejected)
    };
    let per_head: Vec<(Vec<StateArc>, usize)> = if opts.parallel {
        (0..triples.len()).into_par_iter().map(tails_of).collect()
    } else {
        (0..triples.len()).map(tails_of).collect()
    };

    let mut arcs = Vec::new();
    let mut in_start = Vec::with_capacity(triples.len() + 1);
    let mut arcs_rejected = 0;
    for (found, rejected) in per_head {
        in_start.push(arcs.len());
        arcs.extend(found);
        arcs_rejected += rejected;
    }
    in_start.push(arcs.len());
    let arcs_time = clock.elapsed();

    // Pairs (a, b) with t_b - t_a > gap, counted per head level.
    let sizes: Vec<usize> = levels.iter().map(|l| l.triples.len()).collect();
    let mut prefix = vec![0usize; n + 2];
    for t in 0..=n {
        prefix[t + 1] = prefix[t] + sizes[t];
    }
    let arcs_pruned = (0..=n).filter(|&t| t > gap).map(|t| sizes[t] * prefix[t - gap]).sum();

    let stats = BuildStats {
        triples_per_level: sizes,
        free_per_level: levels.iter().map(|l| l.free_len).collect(),
        arcs_generated: arcs.len(),
        arcs_pruned,
        arcs_rejected,
        enumerate_time,
        arcs_time,
    };

    Ok(StateGraph {
        n,
        ell,
        k,
        triples,
        level_start,
        arcs,
        in_start,
        source,
        sink,
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::Digraph;

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_iter_with_capacity(n, vs.iter().copied())
    }

    fn triple(n: usize, y: &[usize], s: &[usize]) -> ValidTriple {
        ValidTriple {
            t: y.len(),
            y: set(n, y),
            s: set(n, s),
        }
    }

    #[test]
    fn source_to_sink_weights() {
        let (a, b) = (ValidTriple::source(4), ValidTriple::sink(4));
        assert_eq!(state_arc(&a, &b, 2, 2), Some(2));
        assert_eq!(state_arc(&a, &b, 0, 4), Some(0));
        assert_eq!(state_arc(&a, &b, 1, 2), None);
        assert_eq!(state_arc(&b, &a, 4, 4), None);
    }

    #[test]
    fn cover_vertex_leaving_s_costs_one() {
        let a = triple(4, &[0], &[0]);
        let b = triple(4, &[0, 1], &[]);
        assert_eq!(state_arc(&a, &b, 1, 1), Some(1));
        assert_eq!(state_arc(&a, &b, 0, 1), None);
    }

    #[test]
    fn arc_conditions() {
        // Y_a not a subset of Y_b
        assert_eq!(state_arc(&triple(4, &[0], &[]), &triple(4, &[1, 2], &[]), 3, 3), None);
        // S_a ∩ Z_a ∩ Z_b must stay in S_b: vertex 3 leaves S while still in Z
        assert_eq!(state_arc(&triple(4, &[0], &[3]), &triple(4, &[0, 1], &[]), 3, 3), None);
        assert_eq!(
            state_arc(&triple(4, &[0], &[3]), &triple(4, &[0, 1], &[3]), 3, 3),
            Some(0)
        );
        // Y_a ∖ S_a cannot re-enter S
        assert_eq!(state_arc(&triple(4, &[0], &[]), &triple(4, &[0, 1], &[0]), 3, 3), None);
    }

    #[test]
    fn transitive_three_has_zero_path() {
        let d = Digraph::from_arcs(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        let g = build_state_graph(&Instance::new(d, 1, 0).unwrap()).unwrap();
        let a = g.find(1, &set(3, &[0]), &set(3, &[])).unwrap();
        let b = g.find(2, &set(3, &[0, 1]), &set(3, &[])).unwrap();
        assert!(g.in_arcs(a).iter().any(|arc| arc.from == g.source && arc.weight == 0));
        assert!(g.in_arcs(b).iter().any(|arc| arc.from == a && arc.weight == 0));
        assert!(g.in_arcs(g.sink).iter().any(|arc| arc.from == b && arc.weight == 0));
    }

    #[test]
    fn large_ell_gives_direct_arc() {
        let d = Digraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let g = build_state_graph(&Instance::new(d, 3, 0).unwrap()).unwrap();
        assert!(g
            .in_arcs(g.sink)
            .iter()
            .any(|arc| arc.from == g.source && arc.weight == 0));
    }

    #[test]
    fn rejects_bad_input() {
        let d = Digraph::from_arcs(3, [(0, 1)]).unwrap();
        assert_eq!(
            build_state_graph(&Instance::new(d, 1, 0).unwrap()).unwrap_err(),
            Error::NotSemicomplete(0, 2)
        );
    }
}
