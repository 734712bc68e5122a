//! Randomized guessing of the strong components that a compression set
//! `X0` occupies after deleting an unknown solution `X`, for general digraphs.
//!
//! Starting from `S = X0`, every other vertex joins `S` independently with
//! probability `p = ell / (ell + 1)`. A guess succeeds when `S` contains the
//! component `V_x` of every `x ∈ X0` in `D - X` and avoids `X`; then each of
//! those components is also the component of `x` in `D[S]`.

use num_bigint::BigUint;
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::bitset::VertexSet;
use crate::digraph::{Digraph, Instance};
use crate::error::{Error, Result};
use crate::oracle;
use crate::rng::{stream_seed, Rng};
use crate::scc;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GuessConfig {
    pub ell: usize,
    pub k: usize,
    pub seed: u64,
}

impl GuessConfig {
    pub fn new(ell: usize, k: usize, seed: u64) -> Result<Self> {
        if ell == 0 {
            return Err(Error::ZeroEll);
        }
        Ok(GuessConfig { ell, k, seed })
    }

    /// Inclusion probability `ell / (ell + 1)`.
    pub fn p(&self) -> BigRational {
        BigRational::new((self.ell as i64).into(), (self.ell as i64 + 1).into())
    }
}

/// One guess from a caller-supplied stream. Vertices are visited in
/// increasing order; each vertex outside `x0` consumes one `below(ell + 1)`
/// draw and joins `S` unless the draw is 0.
pub fn sample_guess_from(rng: &mut Rng, x0: &VertexSet, ell: usize) -> VertexSet {
    let n = x0.capacity();
    let mut s = x0.clone();
    for v in 0..n {
        if !x0.contains(v) && rng.below(ell as u64 + 1) != 0 {
            s.insert(v);
        }
    }
    s
}

/// One guess seeded by `cfg.seed`.
pub fn sample_guess(d: &Digraph, x0: &VertexSet, cfg: &GuessConfig) -> VertexSet {
    debug_assert_eq!(x0.capacity(), d.n());
    sample_guess_from(&mut Rng::new(cfg.seed), x0, cfg.ell)
}

/// `Y = ⋃_{x ∈ X0} V_x`, the vertices every successful guess must contain.
pub fn required_vertices(d: &Digraph, x: &VertexSet, x0: &VertexSet) -> Result<VertexSet> {
    if let Some(v) = x.intersection(x0).first() {
        return Err(Error::Overlap(v));
    }
    let alive = x.complement();
    let labels = scc::label_components(d, Some(&alive));
    let wanted: std::collections::HashSet<u32> = x0.iter().map(|v| labels.label[v]).collect();
    Ok(VertexSet::from_iter_with_capacity(
        d.n(),
        (0..d.n()).filter(|&v| alive.contains(v) && wanted.contains(&labels.label[v])),
    ))
}

pub fn is_success(d: &Digraph, x: &VertexSet, x0: &VertexSet, s: &VertexSet) -> Result<bool> {
    let y = required_vertices(d, x, x0)?;
    Ok(y.is_subset(s) && x.is_disjoint(s))
}

/// `p^|Y ∖ X0| · (1 - p)^|X|` as an exact rational.
pub fn exact_success_probability(d: &Digraph, x: &VertexSet, x0: &VertexSet, ell: usize) -> Result<BigRational> {
    if ell == 0 {
        return Err(Error::ZeroEll);
    }
    let y = required_vertices(d, x, x0)?;
    let random_members = y.difference_len(x0);
    Ok(pattern_probability(ell, random_members, x.len()))
}

pub fn pattern_probability(ell: usize, included: usize, excluded: usize) -> BigRational {
    let ell = BigUint::from(ell);
    let denom = &ell + BigUint::one();
    let num = ell.pow(included as u32);
    let den = denom.pow((included + excluded) as u32);
    BigRational::new(num.into(), den.into())
}

/// For every `v ∈ x0`, the component of `v` in `D[s]` equals its component in `D - x`.
pub fn component_fix_check(d: &Digraph, x: &VertexSet, x0: &VertexSet, s: &VertexSet) -> bool {
    let alive = x.complement();
    let in_rest = scc::label_components(d, Some(&alive));
    let in_guess = scc::label_components(d, Some(s));
    x0.iter().all(|v| {
        if !alive.contains(v) || !s.contains(v) {
            return false;
        }
        (0..d.n()).all(|w| {
            let a = alive.contains(w) && in_rest.label[w] == in_rest.label[v];
            let b = s.contains(w) && in_guess.label[w] == in_guess.label[v];
            a == b
        })
    })
}

#[derive(Clone, Debug)]
pub struct MonteCarlo {
    pub trials: u64,
    pub successes: u64,
    pub exact: BigRational,
    /// Successful guesses whose components disagreed with `D - X`; always 0
    /// if the component guarantee holds.
    pub fix_failures: u64,
}

impl MonteCarlo {
    pub fn exact_f64(&self) -> f64 {
        self.exact.to_f64().unwrap_or(f64::NAN)
    }

    pub fn frequency(&self) -> Option<f64> {
        (self.trials > 0).then(|| self.successes as f64 / self.trials as f64)
    }

    /// Binomial standard deviation of the frequency under the exact probability.
    pub fn sigma(&self) -> Option<f64> {
        let q = self.exact_f64();
        (self.trials > 0).then(|| (q * (1.0 - q) / self.trials as f64).sqrt())
    }

    /// `|frequency - exact| <= 3 sigma`; `None` without trials.
    pub fn within_three_sigma(&self) -> Option<bool> {
        let (f, s) = (self.frequency()?, self.sigma()?);
        Some((f - self.exact_f64()).abs() <= 3.0 * s)
    }
}

/// Runs `trials` independent guesses; trial `i` draws from
/// `Rng::new(stream_seed(seed, i))`. Every success is also run through
/// [`component_fix_check`].
pub fn monte_carlo(
    d: &Digraph,
    x: &VertexSet,
    x0: &VertexSet,
    ell: usize,
    trials: u64,
    seed: u64,
) -> Result<MonteCarlo> {
    let exact = exact_success_probability(d, x, x0, ell)?;
    let y = required_vertices(d, x, x0)?;
    let (successes, fix_failures) = (0..trials)
        .into_par_iter()
        .map(|i| {
            let s = sample_guess_from(&mut Rng::new(stream_seed(seed, i)), x0, ell);
            if y.is_subset(&s) && x.is_disjoint(&s) {
                (1u64, u64::from(!component_fix_check(d, x, x0, &s)))
            } else {
                (0, 0)
            }
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Ok(MonteCarlo {
        trials,
        successes,
        exact,
        fix_failures,
    })
}

/// DCOC on a general digraph. The parameterized pipeline around the guessing
/// step is not provided; this answers exactly by exhaustive search and
/// refuses beyond the oracle guard.
pub fn solve_general(inst: &Instance) -> Result<Option<VertexSet>> {
    Ok(oracle::optimal_coc(&inst.digraph, inst.ell, inst.k)?.map(|r| r.witness))
}

// ---------------------------------------------------------------------------
// Cover-free families

/// Largest ground set for which families are built (they are always verified
/// against every disjoint pair).
pub const FAMILY_GUARD: usize = 20;
/// Multiplier `c` in the sample budget `c · C(r+s, r) · (r+s) · ln n`.
pub const FAMILY_BUDGET_FACTOR: f64 = 3.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyMode {
    /// All `r`-subsets, or the complements of all `s`-subsets, whichever is smaller.
    Exhaustive,
    /// Independent random sets, each vertex kept with probability `r / (r + s)`,
    /// until every pair is covered; redundant members are then dropped.
    Randomized { seed: u64 },
}

/// A family `F` of subsets of `0..n` such that for all disjoint `A, B` with
/// `|A| = r`, `|B| = s` some member contains `A` and misses `B`.
pub fn candidate_family(n: usize, r: usize, s: usize, mode: FamilyMode) -> Result<Vec<VertexSet>> {
    if r + s > n {
        return Err(Error::InvalidFamily(format!("r + s = {} exceeds n = {n}", r + s)));
    }
    if n > FAMILY_GUARD {
        return Err(Error::InvalidFamily(format!(
            "n = {n} exceeds verification guard {FAMILY_GUARD}"
        )));
    }
    if r == 0 {
        return Ok(vec![VertexSet::new(n)]);
    }
    if s == 0 {
        return Ok(vec![VertexSet::full(n)]);
    }
    let family = match mode {
        FamilyMode::Exhaustive => {
            let (size, complement) = if binomial(n, r) <= binomial(n, s) {
                (r, false)
            } else {
                (s, true)
            };
            let mut out = Vec::new();
            for_each_mask(n, size, |m| {
                let m = if complement { full_mask(n) & !m } else { m };
                out.push(mask_set(n, m));
            });
            out
        }
        FamilyMode::Randomized { seed } => randomized_family(n, r, s, seed)?,
    };
    debug_assert!(verify_cover_free(n, r, s, &family));
    Ok(family)
}

fn randomized_family(n: usize, r: usize, s: usize, seed: u64) -> Result<Vec<VertexSet>> {
    let budget = {
        let raw = FAMILY_BUDGET_FACTOR * binomial(r + s, r) as f64 * (r + s) as f64 * (n as f64).ln();
        (raw.ceil() as usize).max(1)
    };
    let pairs = all_pairs(n, r, s);
    let mut cover_count = vec![0u32; pairs.len()];
    let mut uncovered = pairs.len();
    let mut members: Vec<u32> = Vec::new();
    let mut rng = Rng::new(seed);

    for _ in 0..budget {
        if uncovered == 0 {
            break;
        }
        let mut m = 0u32;
        for v in 0..n {
            if rng.below((r + s) as u64) < r as u64 {
                m |= 1 << v;
            }
        }
        let mut useful = false;
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if a & !m == 0 && b & m == 0 {
                if cover_count[i] == 0 {
                    uncovered -= 1;
                    useful = true;
                }
                cover_count[i] += 1;
            }
        }
        if useful {
            members.push(m);
        } else {
            // keep counts in step with `members`
            for (i, &(a, b)) in pairs.iter().enumerate() {
                if a & !m == 0 && b & m == 0 {
                    cover_count[i] -= 1;
                }
            }
        }
    }
    if uncovered > 0 {
        return Err(Error::FamilyBudgetExhausted { n, r, s, budget });
    }

    // Drop members whose every pair is covered elsewhere, latest first.
    let mut keep = vec![true; members.len()];
    for j in (0..members.len()).rev() {
        let m = members[j];
        let covered: Vec<usize> = pairs
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| a & !m == 0 && b & m == 0)
            .map(|(i, _)| i)
            .collect();
        if covered.iter().all(|&i| cover_count[i] > 1) {
            keep[j] = false;
            covered.iter().for_each(|&i| cover_count[i] -= 1);
        }
    }
    Ok(members
        .into_iter()
        .zip(keep)
        .filter(|&(_, k)| k)
        .map(|(m, _)| mask_set(n, m))
        .collect())
}

/// Exhaustive check of the cover-free property over every disjoint `(A, B)`.
pub fn verify_cover_free(n: usize, r: usize, s: usize, family: &[VertexSet]) -> bool {
    let mut ok = true;
    for_each_mask(n, r, |a| {
        if !ok {
            return;
        }
        for_each_mask(n, s, |b| {
            if ok && a & b == 0 {
                let a_set = mask_set(n, a);
                let b_set = mask_set(n, b);
                ok = family.iter().any(|f| a_set.is_subset(f) && b_set.is_disjoint(f));
            }
        });
    });
    ok
}

fn all_pairs(n: usize, r: usize, s: usize) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for_each_mask(n, r, |a| {
        for_each_mask(n, s, |b| {
            if a & b == 0 {
                out.push((a, b));
            }
        })
    });
    out
}

fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        !0
    } else {
        (1u32 << n) - 1
    }
}

fn mask_set(n: usize, m: u32) -> VertexSet {
    VertexSet::from_iter_with_capacity(n, (0..n).filter(|&v| m >> v & 1 == 1))
}

/// Visits every `size`-subset of `0..n` as a bit mask, in increasing order.
fn for_each_mask<F: FnMut(u32)>(n: usize, size: usize, mut f: F) {
    if size > n {
        return;
    }
    if size == 0 {
        f(0);
        return;
    }
    let mut m: u32 = (1u32 << size) - 1;
    let limit = full_mask(n);
    loop {
        f(m);
        // Gosper's hack: next mask with the same popcount
        let c = m & m.wrapping_neg();
        let r = m + c;
        if r == 0 || r > limit {
            return;
        }
        m = (((r ^ m) >> 2) / c) | r;
        if m > limit {
            return;
        }
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

// ---------------------------------------------------------------------------
// Bound on the number of guesses

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    /// The bracketing of `e` was too coarse to decide.
    Undecided,
}

#[derive(Clone, Debug)]
pub struct BoundCheck {
    pub ell: usize,
    pub k: usize,
    /// `C(ell(k+1) + k, k)`.
    pub binom: BigUint,
    /// `binom <= (e (ell + 1 + ell/k))^k`.
    pub middle: Verdict,
    /// `binom <= ceil((3 e ell)^k)`.
    pub outer: Verdict,
}

/// Exact verification of `C(ell(k+1)+k, k) <= (e(ell+1+ell/k))^k <= (3 e ell)^k`.
///
/// Powers of `e` are bracketed by rationals from its first 20 decimals, so
/// every comparison is between exact big rationals.
pub fn check_guess_bound(ell: usize, k: usize) -> BoundCheck {
    assert!(ell >= 1 && k >= 1);
    let binom = big_binomial(ell * (k + 1) + k, k);
    let scale = BigUint::from(10u32).pow(20);
    let e_lo_num: BigUint = "271828182845904523536".parse().unwrap();
    let e_lo = Ratio::new(e_lo_num.clone(), scale.clone());
    let e_hi = Ratio::new(e_lo_num + BigUint::one(), scale);

    let base_middle = Ratio::new(BigUint::from(ell * (k + 1) + k), BigUint::from(k));
    let base_outer = Ratio::from_integer(BigUint::from(3 * ell));
    let b = Ratio::from_integer(binom.clone());

    let compare = |base: &Ratio<BigUint>, ceil: bool| {
        let lo = pow_ratio(&(base * &e_lo), k);
        let hi = pow_ratio(&(base * &e_hi), k);
        let (lo, hi) = if ceil {
            (
                Ratio::from_integer(lo.ceil().to_integer()),
                Ratio::from_integer(hi.ceil().to_integer()),
            )
        } else {
            (lo, hi)
        };
        if b <= lo {
            Verdict::Holds
        } else if b > hi {
            Verdict::Fails
        } else {
            Verdict::Undecided
        }
    };
    let middle = compare(&base_middle, false);
    let outer = compare(&base_outer, true);
    BoundCheck {
        ell,
        k,
        binom,
        middle,
        outer,
    }
}

fn pow_ratio(r: &Ratio<BigUint>, k: usize) -> Ratio<BigUint> {
    let mut acc = Ratio::from_integer(BigUint::one());
    for _ in 0..k {
        acc = &acc * r;
    }
    acc
}

pub fn big_binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}
