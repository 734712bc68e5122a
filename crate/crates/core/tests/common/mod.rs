//! Test-side reference code. Nothing here calls the library's component
//! labelling or search routines.

#![allow(dead_code)]

use dcoc::generators::{random_semicomplete, random_tournament};
use dcoc::{Digraph, VertexSet};

/// Largest strong component of `d - removed` from a transitive closure.
#[allow(clippy::needless_range_loop)]
pub fn closure_mco(d: &Digraph, removed: &[usize]) -> usize {
    let n = d.n();
    let alive: Vec<bool> = (0..n).map(|v| !removed.contains(&v)).collect();
    let mut reach = vec![vec![false; n]; n];
    for (u, v) in d.arcs() {
        if alive[u] && alive[v] {
            reach[u][v] = true;
        }
    }
    for v in 0..n {
        reach[v][v] = alive[v];
    }
    for w in 0..n {
        for u in 0..n {
            if reach[u][w] {
                for v in 0..n {
                    if reach[w][v] {
                        reach[u][v] = true;
                    }
                }
            }
        }
    }
    (0..n)
        .filter(|&v| alive[v])
        .map(|v| (0..n).filter(|&w| reach[v][w] && reach[w][v]).count())
        .max()
        .unwrap_or(0)
}

/// Minimum deletion count for `mco <= ell` by trying every vertex subset.
pub fn brute_optimum(d: &Digraph, ell: usize) -> usize {
    let n = d.n();
    assert!(n <= 16);
    let mut best = n;
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size >= best {
            continue;
        }
        let removed: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if closure_mco(d, &removed) <= ell {
            best = size;
        }
    }
    best
}

pub fn set(n: usize, vs: &[usize]) -> VertexSet {
    VertexSet::from_iter_with_capacity(n, vs.iter().copied())
}

/// 500 seeded random tournaments with `n` cycling through `1..=7`.
pub fn tournament_suite() -> Vec<Digraph> {
    (0..500u64)
        .map(|seed| random_tournament(1 + (seed % 7) as usize, seed))
        .collect()
}

/// 200 seeded random semicomplete digraphs with digons, `n` cycling through `2..=7`.
pub fn semicomplete_suite() -> Vec<Digraph> {
    (0..200u64)
        .map(|seed| random_semicomplete(2 + (seed % 6) as usize, 0.35, 10_000 + seed))
        .collect()
}

/// Every labelled tournament on `n` vertices.
pub fn all_tournaments(n: usize) -> impl Iterator<Item = Digraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let count = 1u64 << pairs.len();
    (0..count).map(move |code| tournament_from_code(n, &pairs, code))
}

fn tournament_from_code(n: usize, pairs: &[(usize, usize)], code: u64) -> Digraph {
    let arcs = pairs
        .iter()
        .enumerate()
        .map(|(i, &(u, v))| if code >> i & 1 == 1 { (v, u) } else { (u, v) });
    Digraph::from_arcs(n, arcs).unwrap()
}

/// One representative per isomorphism class of tournaments on `n <= 7` vertices.
pub fn tournament_classes(n: usize) -> Vec<Digraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let perms = permutations(n);
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for code in 0..1u64 << pairs.len() {
        let d = tournament_from_code(n, &pairs, code);
        // every class has a member whose scores are non-decreasing
        let scores: Vec<usize> = (0..n).map(|v| d.out_degree(v)).collect();
        if scores.windows(2).any(|w| w[0] > w[1]) {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                let mut adj = vec![0u8; n * n];
                for (u, v) in d.arcs() {
                    adj[p[u] * n + p[v]] = 1;
                }
                adj
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            out.push(d);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}
