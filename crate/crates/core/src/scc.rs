//! Iterative Tarjan strong components, optionally restricted to an induced
//! subdigraph.

use crate::bitset::VertexSet;
use crate::digraph::Digraph;

const UNVISITED: u32 = u32::MAX;

/// Component labels of `D[alive]` (all of `D` when `alive` is `None`).
///
/// Labels are numbered in acyclic order: every arc between two alive vertices
/// goes from a label to an equal or larger one. Dead vertices get `u32::MAX`.
pub struct Labels {
    pub label: Vec<u32>,
    pub count: usize,
}

pub fn label_components(d: &Digraph, alive: Option<&VertexSet>) -> Labels {
    let n = d.n();
    let is_alive = |v: usize| alive.is_none_or(|a| a.contains(v));

    let mut index = vec![UNVISITED; n];
    let mut low = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<u32> = Vec::new();
    let mut call: Vec<(u32, u32)> = Vec::new();
    let mut rev_label = vec![UNVISITED; n];
    let mut next_index = 0u32;
    let mut found = 0u32;

    for root in 0..n {
        if index[root] != UNVISITED || !is_alive(root) {
            continue;
        }
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root as u32);
        on_stack[root] = true;
        call.push((root as u32, 0));

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            let v = v as usize;
            let out = d.out_slice(v);
            if (*pos as usize) < out.len() {
                let w = out[*pos as usize] as usize;
                *pos += 1;
                if !is_alive(w) {
                    continue;
                }
                if index[w] == UNVISITED {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w as u32);
                    on_stack[w] = true;
                    call.push((w as u32, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }

            call.pop();
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack underflow") as usize;
                    on_stack[w] = false;
                    rev_label[w] = found;
                    if w == v {
                        break;
                    }
                }
                found += 1;
            }
            if let Some(&(parent, _)) = call.last() {
                let parent = parent as usize;
                low[parent] = low[parent].min(low[v]);
            }
        }
    }

    // Tarjan completes sink components first; flip to source-first order.
    let label = rev_label
        .into_iter()
        .map(|l| if l == UNVISITED { l } else { found - 1 - l })
        .collect();
    Labels {
        label,
        count: found as usize,
    }
}

pub fn components_within(d: &Digraph, alive: Option<&VertexSet>) -> Vec<VertexSet> {
    let labels = label_components(d, alive);
    let mut comps = vec![VertexSet::new(d.n()); labels.count];
    for (v, &l) in labels.label.iter().enumerate() {
        if l != UNVISITED {
            comps[l as usize].insert(v);
        }
    }
    comps
}

pub fn largest_component(d: &Digraph, alive: Option<&VertexSet>) -> usize {
    let labels = label_components(d, alive);
    let mut sizes = vec![0usize; labels.count];
    for &l in &labels.label {
        if l != UNVISITED {
            sizes[l as usize] += 1;
        }
    }
    sizes.into_iter().max().unwrap_or(0)
}

/// The strong component of `v` inside `D[alive]`; empty if `v` is not alive.
pub fn component_of(d: &Digraph, alive: &VertexSet, v: usize) -> VertexSet {
    let mut comp = VertexSet::new(d.n());
    if !alive.contains(v) {
        return comp;
    }
    let labels = label_components(d, Some(alive));
    let target = labels.label[v];
    for (w, &l) in labels.label.iter().enumerate() {
        if l == target {
            comp.insert(w);
        }
    }
    comp
}
