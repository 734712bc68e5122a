//! Enumeration of all inclusion-minimal vertex covers of size at most `k`.
//!
//! Vertices whose degree exceeds the remaining budget are forced into every
//! cover (repeatedly, until stable); if more than `budget²` edges survive no
//! small cover exists. The rest is a two-way search tree on an uncovered
//! edge, followed by a minimality filter.

use crate::bitset::VertexSet;

/// A simple undirected graph on `0..n`, given as an edge list.
#[derive(Clone, Debug, Default)]
pub struct CoverGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl CoverGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Self {
        debug_assert!(edges.iter().all(|&(u, v)| u < n && v < n && u != v));
        CoverGraph { n, edges }
    }
}

/// All minimal vertex covers of `g` with at most `k` vertices, sorted and
/// duplicate-free.
pub fn enumerate_min_vertex_covers(g: &CoverGraph, k: usize) -> Vec<VertexSet> {
    covers_with_forced(&g.edges, VertexSet::new(g.n), k)
}

/// Like [`enumerate_min_vertex_covers`] for the graph `edges ∪ E'` where every
/// edge of `E'` touches `forced` and every vertex of `forced` has more than
/// `k` incident edges in `E'`. Such vertices belong to every cover of size at
/// most `k` and are always non-redundant, so `E'` itself never needs to be
/// materialised.
pub(crate) fn covers_with_forced(edges: &[(usize, usize)], mut forced: VertexSet, k: usize) -> Vec<VertexSet> {
    if forced.len() > k {
        return Vec::new();
    }

    // Buss rule to a fixpoint.
    let mut live: Vec<(usize, usize)> = edges
        .iter()
        .copied()
        .filter(|&(u, v)| !forced.contains(u) && !forced.contains(v))
        .collect();
    loop {
        let budget = k - forced.len();
        let mut degree = std::collections::HashMap::<usize, usize>::new();
        for &(u, v) in &live {
            *degree.entry(u).or_default() += 1;
            *degree.entry(v).or_default() += 1;
        }
        let mut heavy: Vec<usize> = degree
            .into_iter()
            .filter(|&(_, d)| d > budget)
            .map(|(v, _)| v)
            .collect();
        if heavy.is_empty() {
            if live.len() > budget * budget {
                return Vec::new();
            }
            break;
        }
        heavy.sort_unstable();
        for v in heavy {
            forced.insert(v);
        }
        if forced.len() > k {
            return Vec::new();
        }
        live.retain(|&(u, v)| !forced.contains(u) && !forced.contains(v));
    }

    let mut found = Vec::new();
    let mut current = forced.clone();
    branch(&live, &mut current, k - forced.len(), &mut found);

    found.retain(|c| is_minimal(edges, &forced, c));
    found.sort_unstable();
    found.dedup();
    found
}

fn branch(live: &[(usize, usize)], current: &mut VertexSet, budget: usize, out: &mut Vec<VertexSet>) {
    let open = live
        .iter()
        .find(|&&(u, v)| !current.contains(u) && !current.contains(v));
    let Some(&(u, v)) = open else {
        out.push(current.clone());
        return;
    };
    if budget == 0 {
        return;
    }
    for w in [u, v] {
        current.insert(w);
        branch(live, current, budget - 1, out);
        current.remove(w);
    }
}

/// Every non-forced member needs an edge whose other endpoint is outside the cover.
fn is_minimal(edges: &[(usize, usize)], forced: &VertexSet, cover: &VertexSet) -> bool {
    let mut needed = cover.difference(forced);
    for &(u, v) in edges {
        if !cover.contains(v) {
            needed.remove(u);
        }
        if !cover.contains(u) {
            needed.remove(v);
        }
    }
    needed.is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_iter_with_capacity(n, vs.iter().copied())
    }

    /// Every subset of size <= k that covers all edges and loses that property
    /// when any single member is dropped.
    fn brute_force(g: &CoverGraph, k: usize) -> Vec<VertexSet> {
        let mut out = Vec::new();
        for mask in 0u32..(1 << g.n) {
            if mask.count_ones() as usize > k {
                continue;
            }
            let covers = |m: u32| g.edges.iter().all(|&(u, v)| m >> u & 1 == 1 || m >> v & 1 == 1);
            if !covers(mask) {
                continue;
            }
            let minimal = (0..g.n)
                .filter(|&v| mask >> v & 1 == 1)
                .all(|v| !covers(mask & !(1 << v)));
            if minimal {
                out.push(VertexSet::from_iter_with_capacity(
                    g.n,
                    (0..g.n).filter(|&v| mask >> v & 1 == 1),
                ));
            }
        }
        out.sort_unstable();
        out
    }

    #[test]
    fn single_edge() {
        let g = CoverGraph::new(2, vec![(0, 1)]);
        assert_eq!(enumerate_min_vertex_covers(&g, 1), vec![set(2, &[0]), set(2, &[1])]);
        assert!(enumerate_min_vertex_covers(&g, 0).is_empty());
    }

    #[test]
    fn star_forces_center() {
        for k in 1..5 {
            let g = CoverGraph::new(k + 2, (1..=k + 1).map(|leaf| (0, leaf)).collect());
            assert_eq!(enumerate_min_vertex_covers(&g, k), vec![set(k + 2, &[0])]);
        }
    }

    #[test]
    fn path_of_three() {
        // y1=0, z1=1, y2=2
        let g = CoverGraph::new(3, vec![(0, 1), (1, 2)]);
        let got = enumerate_min_vertex_covers(&g, 2);
        assert_eq!(got, vec![set(3, &[1]), set(3, &[0, 2])]);
        assert_eq!(got, brute_force(&g, 2));
    }

    #[test]
    fn empty_graph_has_only_empty_cover() {
        let g = CoverGraph::new(4, vec![]);
        assert_eq!(enumerate_min_vertex_covers(&g, 0), vec![VertexSet::new(4)]);
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        // all graphs on 5 vertices (1024 edge subsets), k in 0..=4
        let pairs: Vec<(usize, usize)> = (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect();
        for mask in 0u32..(1 << pairs.len()) {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = CoverGraph::new(5, edges);
            for k in 0..=4 {
                let got = enumerate_min_vertex_covers(&g, k);
                assert!(got.len() <= 1 << k);
                assert_eq!(got, brute_force(&g, k), "mask {mask:#b} k {k}");
            }
        }
    }
}
