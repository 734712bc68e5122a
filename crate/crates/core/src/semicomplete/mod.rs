//! Exact DCOC solver for semicomplete digraphs.
//!
//! The instance is answered by a shortest path from `(∅, V, ∅)` to
//! `(V, ∅, ∅)` in a leveled acyclic graph whose nodes are valid triples.
//! For a fixed budget `k` each level holds at most `2^(8k+2)` triples and
//! arcs only join levels at most `ell + 3k` apart, so the whole
//! construction is quadratic in `n`.

mod cover;
mod state_graph;
mod triples;

pub use cover::{enumerate_min_vertex_covers, CoverGraph};
pub use state_graph::{
    build_state_graph, build_state_graph_with, max_level_gap, state_arc, state_arc_sparse, ArcCheck, BuildStats,
    SolverOptions, StateArc, StateGraph,
};
pub use triples::{
    enumerate_t_valid_triples, enumerate_t_valid_triples_with, forced_partition, triple_bound, DegreeRule,
    ForcedPartition, ValidTriple,
};

use std::time::{Duration, Instant};

use crate::bitset::VertexSet;
use crate::digraph::{verify_solution, Instance};
use crate::error::{Error, Result};

/// One triple on the optimal path, and the extra deletions `T_i` charged on
/// the arc that enters it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathStep {
    pub t: usize,
    pub y: Vec<usize>,
    pub s: Vec<usize>,
    pub extra: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub x: VertexSet,
    /// `|x|`.
    pub cost: usize,
    /// Total weight of the state-graph path; `cost <= path_cost`.
    pub path_cost: usize,
    pub path: Vec<PathStep>,
    /// True when `k + ell >= n` answered the instance without a state graph.
    pub via_shortcut: bool,
}

#[derive(Clone, Debug, Default)]
pub struct PhaseTimings {
    pub enumerate: Duration,
    pub arcs: Duration,
    pub dp: Duration,
    pub reconstruct: Duration,
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub solution: Option<Solution>,
    /// Cheapest source-to-sink path weight if the state graph was built and a path exists.
    pub best_cost: Option<usize>,
    pub stats: Option<BuildStats>,
    pub timings: PhaseTimings,
}

/// Decides `(D, ell, k)`; returns a witness on YES.
pub fn solve(inst: &Instance) -> Result<Option<Solution>> {
    Ok(solve_with(inst, &SolverOptions::default())?.solution)
}

pub fn solve_with(inst: &Instance, opts: &SolverOptions) -> Result<SolveReport> {
    check_input(inst)?;
    let n = inst.n();
    if inst.k + inst.ell >= n {
        let x = VertexSet::from_iter_with_capacity(n, 0..n.saturating_sub(inst.ell));
        debug_assert!(verify_solution(inst, &x));
        let cost = x.len();
        return Ok(SolveReport {
            solution: Some(Solution {
                x,
                cost,
                path_cost: cost,
                path: Vec::new(),
                via_shortcut: true,
            }),
            best_cost: None,
            stats: None,
            timings: PhaseTimings::default(),
        });
    }

    let graph = build_state_graph_with(inst, opts)?;
    let mut timings = PhaseTimings {
        enumerate: graph.stats.enumerate_time,
        arcs: graph.stats.arcs_time,
        ..Default::default()
    };

    let clock = Instant::now();
    let dp = shortest_path(&graph);
    timings.dp = clock.elapsed();

    let best_cost = dp.dist[graph.sink];
    let solution = match best_cost {
        Some(c) if c <= inst.k => {
            let clock = Instant::now();
            let sol = reconstruct(&graph, &dp, inst);
            timings.reconstruct = clock.elapsed();
            Some(sol)
        }
        _ => None,
    };
    Ok(SolveReport {
        solution,
        best_cost,
        stats: Some(graph.stats),
        timings,
    })
}

/// Minimum number of deletions if it is at most `inst.k`, `None` otherwise.
pub fn min_cost(inst: &Instance) -> Result<Option<usize>> {
    check_input(inst)?;
    let n = inst.n();
    if inst.ell >= n {
        return Ok(Some(0));
    }
    // Deleting n - ell vertices always works; search below that.
    let always = n - inst.ell;
    let budget = inst.k.min(always - 1);
    let capped = Instance {
        digraph: inst.digraph.clone(),
        ell: inst.ell,
        k: budget,
    };
    let graph = build_state_graph(&capped)?;
    let dp = shortest_path(&graph);
    Ok(match dp.dist[graph.sink] {
        Some(c) if c <= budget => Some(c),
        _ if inst.k >= always => Some(always),
        _ => None,
    })
}

fn check_input(inst: &Instance) -> Result<()> {
    if inst.ell == 0 {
        return Err(Error::ZeroEll);
    }
    inst.digraph.ensure_semicomplete()
}

pub(crate) struct ShortestPaths {
    pub dist: Vec<Option<usize>>,
    pub parent: Vec<Option<usize>>,
}

/// Single-source shortest paths over triples in id order (a topological order).
/// Ties go to the lowest tail id.
pub(crate) fn shortest_path(g: &StateGraph) -> ShortestPaths {
    let count = g.triples.len();
    let mut dist: Vec<Option<usize>> = vec![None; count];
    let mut parent = vec![None; count];
    dist[g.source] = Some(0);
    for id in 0..count {
        if id == g.source {
            continue;
        }
        for arc in g.in_arcs(id) {
            let Some(base) = dist[arc.from] else { continue };
            let cand = base + arc.weight;
            if dist[id].is_none_or(|cur| cand < cur) {
                dist[id] = Some(cand);
                parent[id] = Some(arc.from);
            }
        }
    }
    ShortestPaths { dist, parent }
}

fn reconstruct(g: &StateGraph, dp: &ShortestPaths, inst: &Instance) -> Solution {
    let n = g.n;
    let mut ids = vec![g.sink];
    while let Some(p) = dp.parent[*ids.last().unwrap()] {
        ids.push(p);
    }
    ids.reverse();
    debug_assert_eq!(ids[0], g.source);

    let mut x = VertexSet::new(n);
    let mut path = Vec::with_capacity(ids.len());
    for (i, &id) in ids.iter().enumerate() {
        let cur = &g.triples[id];
        x.union_with(&cur.s);
        let mut extra = Vec::new();
        if i > 0 {
            let prev = &g.triples[ids[i - 1]];
            let mut slab = cur.y.difference(&prev.y);
            slab.difference_with(&prev.s);
            slab.difference_with(&cur.s);
            let excess = slab.len().saturating_sub(inst.ell);
            extra.extend(slab.iter().take(excess));
            extra.iter().for_each(|&v| {
                x.insert(v);
            });
        }
        path.push(PathStep {
            t: cur.t,
            y: cur.y.to_vec(),
            s: cur.s.to_vec(),
            extra,
        });
    }

    let path_cost = dp.dist[g.sink].expect("sink reached");
    let cost = x.len();
    debug_assert!(cost <= path_cost);
    debug_assert!(verify_solution(inst, &x), "reconstructed set fails verification");
    Solution {
        x,
        cost,
        path_cost,
        path,
        via_shortcut: false,
    }
}
