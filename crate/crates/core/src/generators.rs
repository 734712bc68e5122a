//! Deterministic and seeded instance families.
//!
//! Random families draw from [`crate::rng::Rng`] in a fixed order, so a
//! family name, its parameters and a seed pin down the digraph byte for byte
//! in the edge-list format.

use std::collections::BTreeMap;

use crate::bitset::VertexSet;
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::rng::{Rng, DEFAULT_SEED};

/// The fixed strong tournament `H_i`: the transitive tournament on `0..i`
/// with the arc `0 -> i-1` reversed. Exists for `i = 1` and `i >= 3`.
pub fn strong_tournament(i: usize) -> Result<Digraph> {
    Digraph::from_arcs(i, strong_block_arcs(0, i)?)
}

fn strong_block_arcs(offset: usize, i: usize) -> Result<Vec<(usize, usize)>> {
    if i == 0 || i == 2 {
        return Err(Error::InvalidBlockSize(i));
    }
    let mut arcs = Vec::with_capacity(i * (i - 1) / 2);
    for u in 0..i {
        for v in u + 1..i {
            let arc = if u == 0 && v == i - 1 { (v, u) } else { (u, v) };
            arcs.push((offset + arc.0, offset + arc.1));
        }
    }
    Ok(arcs)
}

pub fn transitive_tournament(n: usize) -> Digraph {
    Digraph::from_arcs(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
}

/// `H_{sizes[0]}, H_{sizes[1]}, ...` in a chain, every arc between two blocks
/// pointing from the earlier block to the later one.
pub fn layered_tournament(sizes: &[usize]) -> Result<Digraph> {
    let n: usize = sizes.iter().sum();
    let mut arcs = Vec::new();
    let mut offset = 0;
    for &size in sizes {
        arcs.extend(strong_block_arcs(offset, size)?);
        for u in offset..offset + size {
            for v in offset + size..n {
                arcs.push((u, v));
            }
        }
        offset += size;
    }
    Digraph::from_arcs(n, arcs)
}

/// Block sizes for a chain of `floor(n / block)` copies of `H_block` plus a
/// remainder block; a remainder of 2 is split into two singletons.
pub fn chain_sizes(n: usize, block: usize) -> Result<Vec<usize>> {
    if block == 0 || block == 2 {
        return Err(Error::InvalidBlockSize(block));
    }
    let mut sizes = vec![block; n / block];
    match n % block {
        0 => {}
        2 => sizes.extend([1, 1]),
        r => sizes.push(r),
    }
    Ok(sizes)
}

/// Reverses the single arc `u -> v`.
pub fn flip_one_arc(d: &Digraph, u: usize, v: usize) -> Result<Digraph> {
    d.with_arc_reversed(u, v)
}

/// Uniform random tournament; same stream as `random_semicomplete(n, 0.0, seed)`.
pub fn random_tournament(n: usize, seed: u64) -> Digraph {
    random_semicomplete(n, 0.0, seed)
}

/// For each pair `u < v` in lexicographic order: one `unit()` draw decides a
/// digon (`< digon_prob`), then one `coin()` draw orients the pair (`true`
/// means `v -> u`). Both draws are always consumed. A digon is emitted as
/// `u -> v` followed by `v -> u`.
pub fn random_semicomplete(n: usize, digon_prob: f64, seed: u64) -> Digraph {
    let mut rng = Rng::new(seed);
    let mut arcs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            let digon = rng.unit() < digon_prob;
            let backward = rng.coin();
            if digon {
                arcs.push((u, v));
                arcs.push((v, u));
            } else if backward {
                arcs.push((v, u));
            } else {
                arcs.push((u, v));
            }
        }
    }
    Digraph::from_arcs(n, arcs).unwrap()
}

#[derive(Clone, Debug)]
pub struct Planted {
    pub digraph: Digraph,
    pub ell: usize,
    pub k: usize,
    pub x: VertexSet,
}

/// A layered tournament with `extra_k` new vertices appended. Each new vertex
/// is joined to every earlier vertex by one `coin()` draw (`true` means the
/// new vertex is the head), in order of new vertex then earlier vertex. The
/// new vertices form the planted solution; `ell` is the largest block.
pub fn planted_instance(sizes: &[usize], extra_k: usize, seed: u64) -> Result<Planted> {
    let base = layered_tournament(sizes)?;
    let b = base.n();
    let n = b + extra_k;
    let mut rng = Rng::new(seed);
    let mut arcs: Vec<(usize, usize)> = base.arcs().collect();
    for new in b..n {
        for old in 0..new {
            arcs.push(if rng.coin() { (old, new) } else { (new, old) });
        }
    }
    let digraph = Digraph::from_arcs(n, arcs)?;
    let x = VertexSet::from_iter_with_capacity(n, b..n);
    let ell = sizes.iter().copied().max().unwrap_or(1);
    Ok(Planted {
        digraph,
        ell,
        k: extra_k,
        x,
    })
}

/// A parsed `family:param=value,...` generator description.
#[derive(Clone, Debug, PartialEq)]
pub struct GenSpec {
    pub family: String,
    pub params: BTreeMap<String, String>,
}

impl GenSpec {
    pub fn parse(text: &str) -> Result<GenSpec> {
        let bad = |msg: &str| Error::GenSpec(format!("`{text}`: {msg}"));
        let (family, rest) = match text.split_once(':') {
            Some((f, r)) => (f.trim(), r.trim()),
            None => (text.trim(), ""),
        };
        if family.is_empty() {
            return Err(bad("missing family name"));
        }
        let mut params = BTreeMap::new();
        for item in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item.split_once('=').ok_or_else(|| bad("expected param=value"))?;
            if params.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
                return Err(bad(&format!("parameter `{}` given twice", k.trim())));
            }
        }
        Ok(GenSpec {
            family: family.to_string(),
            params,
        })
    }

    fn get<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        self.params
            .get(key)
            .map(|raw| {
                raw.parse()
                    .map_err(|_| Error::GenSpec(format!("{}: bad value `{raw}` for `{key}`", self.family)))
            })
            .transpose()
    }

    fn require<T: std::str::FromStr>(&self, key: &str) -> Result<T> {
        self.get(key)?
            .ok_or_else(|| Error::GenSpec(format!("{}: missing parameter `{key}`", self.family)))
    }

    fn sizes(&self) -> Result<Vec<usize>> {
        let raw: String = self.require("sizes")?;
        raw.split('+')
            .map(|s| {
                s.trim()
                    .parse()
                    .map_err(|_| Error::GenSpec(format!("{}: bad block size `{s}`", self.family)))
            })
            .collect()
    }

    fn check_known(&self, known: &[&str]) -> Result<()> {
        match self.params.keys().find(|k| !known.contains(&k.as_str())) {
            Some(k) => Err(Error::GenSpec(format!("{}: unknown parameter `{k}`", self.family))),
            None => Ok(()),
        }
    }

    /// Builds the digraph. `seed_override` replaces (or supplies) `seed`.
    ///
    /// Families: `tournament:n,seed`, `semicomplete:n,digon,seed`,
    /// `transitive:n`, `strong:n`, `layered:sizes=a+b+...`,
    /// `chain:n,block`, `circulant:n` (odd `n`, arcs `i -> i+1 .. i+(n-1)/2`),
    /// `planted:sizes,extra,seed`.
    pub fn generate(&self, seed_override: Option<u64>) -> Result<Digraph> {
        let seed = match seed_override {
            Some(s) => s,
            None => self.get("seed")?.unwrap_or(DEFAULT_SEED),
        };
        match self.family.as_str() {
            "tournament" => {
                self.check_known(&["n", "seed"])?;
                Ok(random_tournament(self.require("n")?, seed))
            }
            "semicomplete" => {
                self.check_known(&["n", "digon", "seed"])?;
                let p: f64 = self.require("digon")?;
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::GenSpec(format!("digon probability {p} outside [0, 1]")));
                }
                Ok(random_semicomplete(self.require("n")?, p, seed))
            }
            "transitive" => {
                self.check_known(&["n"])?;
                Ok(transitive_tournament(self.require("n")?))
            }
            "strong" => {
                self.check_known(&["n"])?;
                strong_tournament(self.require("n")?)
            }
            "layered" => {
                self.check_known(&["sizes"])?;
                layered_tournament(&self.sizes()?)
            }
            "chain" => {
                self.check_known(&["n", "block"])?;
                layered_tournament(&chain_sizes(self.require("n")?, self.require("block")?)?)
            }
            "circulant" => {
                self.check_known(&["n"])?;
                circulant_tournament(self.require("n")?)
            }
            "planted" => {
                self.check_known(&["sizes", "extra", "seed"])?;
                Ok(planted_instance(&self.sizes()?, self.require("extra")?, seed)?.digraph)
            }
            other => Err(Error::GenSpec(format!("unknown family `{other}`"))),
        }
    }
}

/// The rotational tournament on odd `n`: `i -> i + j (mod n)` for `1 <= j <= (n-1)/2`.
pub fn circulant_tournament(n: usize) -> Result<Digraph> {
    if n.is_multiple_of(2) {
        return Err(Error::GenSpec(format!("circulant tournament needs odd n, got {n}")));
    }
    let arcs = (0..n).flat_map(|i| (1..=(n - 1) / 2).map(move |j| (i, (i + j) % n)));
    Digraph::from_arcs(n, arcs)
}
