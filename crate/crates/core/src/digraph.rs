//! Loop-free simple digraphs on dense vertex ids `0..n`.
//!
//! Arcs are kept in insertion order (so the edge-list writer reproduces its
//! input byte for byte), as sorted out/in adjacency lists, and, for
//! `n <= DENSE_LIMIT`, as bit rows giving O(1) arc queries and word-parallel
//! neighbourhood intersections.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::scc;

/// Largest vertex count for which bit-row adjacency is materialised.
pub const DENSE_LIMIT: usize = 1 << 14;

#[derive(Clone)]
pub struct Digraph {
    n: usize,
    arcs: Vec<(u32, u32)>,
    out_adj: Vec<Vec<u32>>,
    in_adj: Vec<Vec<u32>>,
    rows: Option<DenseRows>,
}

#[derive(Clone)]
struct DenseRows {
    out_rows: Vec<VertexSet>,
    in_rows: Vec<VertexSet>,
}

impl Digraph {
    /// Builds a digraph, rejecting self-loops, parallel arcs and out-of-range ids.
    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        assert!(n <= u32::MAX as usize, "vertex count exceeds u32 ids");
        let mut list = Vec::new();
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for (u, v) in arcs {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            list.push((u as u32, v as u32));
            out_adj[u].push(v as u32);
            in_adj[v].push(u as u32);
        }
        for (u, nbrs) in out_adj.iter_mut().enumerate() {
            nbrs.sort_unstable();
            if let Some(w) = nbrs.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateArc(u, w[0] as usize));
            }
        }
        in_adj.iter_mut().for_each(|nbrs| nbrs.sort_unstable());

        let rows = (n <= DENSE_LIMIT).then(|| {
            let mut out_rows = vec![VertexSet::new(n); n];
            let mut in_rows = vec![VertexSet::new(n); n];
            for &(u, v) in &list {
                out_rows[u as usize].insert(v as usize);
                in_rows[v as usize].insert(u as usize);
            }
            DenseRows { out_rows, in_rows }
        });

        Ok(Digraph {
            n,
            arcs: list,
            out_adj,
            in_adj,
            rows,
        })
    }

    pub fn empty(n: usize) -> Self {
        Self::from_arcs(n, std::iter::empty()).expect("empty digraph is valid")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of arcs. A digon counts twice.
    #[inline]
    pub fn m(&self) -> usize {
        self.arcs.len()
    }

    /// Arcs in insertion order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().map(|&(u, v)| (u as usize, v as usize))
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        match &self.rows {
            Some(rows) => rows.out_rows[u].contains(v),
            None => self.out_adj[u].binary_search(&(v as u32)).is_ok(),
        }
    }

    #[inline]
    pub fn out_degree(&self, v: usize) -> usize {
        self.out_adj[v].len()
    }

    #[inline]
    pub fn in_degree(&self, v: usize) -> usize {
        self.in_adj[v].len()
    }

    pub fn out_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.out_adj[v].iter().map(|&w| w as usize)
    }

    pub fn in_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.in_adj[v].iter().map(|&w| w as usize)
    }

    pub(crate) fn out_slice(&self, v: usize) -> &[u32] {
        &self.out_adj[v]
    }

    /// Out-neighbourhood as a bit row; `None` above `DENSE_LIMIT`.
    pub fn out_row(&self, v: usize) -> Option<&VertexSet> {
        self.rows.as_ref().map(|r| &r.out_rows[v])
    }

    /// In-neighbourhood as a bit row; `None` above `DENSE_LIMIT`.
    pub fn in_row(&self, v: usize) -> Option<&VertexSet> {
        self.rows.as_ref().map(|r| &r.in_rows[v])
    }

    pub fn is_dense(&self) -> bool {
        self.rows.is_some()
    }

    /// Returns an unordered pair `{u, v}` (u < v) with no arc in either direction.
    pub fn non_adjacent_pair(&self) -> Option<(usize, usize)> {
        (0..self.n).find_map(|u| self.missing_neighbor(u).map(|v| (u, v)))
    }

    /// Smallest `v > u` not adjacent to `u`.
    fn missing_neighbor(&self, u: usize) -> Option<usize> {
        if let Some(rows) = &self.rows {
            let mut adjacent = rows.out_rows[u].union(&rows.in_rows[u]);
            adjacent.insert(u);
            return adjacent.complement().iter().find(|&v| v > u);
        }
        let (out, inn) = (&self.out_adj[u], &self.in_adj[u]);
        let (mut i, mut j) = (0, 0);
        for v in u + 1..self.n {
            while i < out.len() && (out[i] as usize) < v {
                i += 1;
            }
            while j < inn.len() && (inn[j] as usize) < v {
                j += 1;
            }
            let hit = (i < out.len() && out[i] as usize == v) || (j < inn.len() && inn[j] as usize == v);
            if !hit {
                return Some(v);
            }
        }
        None
    }

    pub fn is_semicomplete(&self) -> bool {
        self.non_adjacent_pair().is_none()
    }

    /// Semicomplete with exactly one arc per pair.
    pub fn is_tournament(&self) -> bool {
        self.m() == self.n * self.n.saturating_sub(1) / 2 && self.is_semicomplete()
    }

    pub fn ensure_semicomplete(&self) -> Result<()> {
        match self.non_adjacent_pair() {
            Some((u, v)) => Err(Error::NotSemicomplete(u, v)),
            None => Ok(()),
        }
    }

    /// Strong components in acyclic order: no arc leads from a later component
    /// to an earlier one.
    pub fn strong_components(&self) -> Vec<VertexSet> {
        scc::components_within(self, None)
    }

    /// Order of the largest strong component of `D - removed`; 0 when nothing remains.
    pub fn mco(&self, removed: &VertexSet) -> usize {
        let alive = removed.complement();
        scc::largest_component(self, Some(&alive))
    }

    /// The digraph with the single arc `u -> v` replaced by `v -> u`, keeping
    /// its position in the arc list.
    pub fn with_arc_reversed(&self, u: usize, v: usize) -> Result<Digraph> {
        if u >= self.n || v >= self.n || !self.has_arc(u, v) || self.has_arc(v, u) {
            return Err(Error::FlipPrecondition(u, v));
        }
        let arcs = self.arcs().map(|a| if a == (u, v) { (v, u) } else { a });
        Digraph::from_arcs(self.n, arcs)
    }
}

impl PartialEq for Digraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.out_adj == other.out_adj
    }
}

impl Eq for Digraph {}

impl std::fmt::Debug for Digraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Digraph")
            .field("n", &self.n)
            .field("arcs", &self.arcs)
            .finish()
    }
}

/// A DCOC instance: delete at most `k` vertices so that every strong
/// component has at most `ell` vertices.
#[derive(Clone, Debug)]
pub struct Instance {
    pub digraph: Digraph,
    pub ell: usize,
    pub k: usize,
}

impl Instance {
    pub fn new(digraph: Digraph, ell: usize, k: usize) -> Result<Self> {
        if ell == 0 {
            return Err(Error::ZeroEll);
        }
        Ok(Instance { digraph, ell, k })
    }

    pub fn n(&self) -> usize {
        self.digraph.n()
    }
}

/// True iff `|x| <= k` and every strong component of `D - x` has at most `ell` vertices.
pub fn verify_solution(inst: &Instance, x: &VertexSet) -> bool {
    x.len() <= inst.k && inst.digraph.mco(x) <= inst.ell
}
