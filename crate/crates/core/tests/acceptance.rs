//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the report is always printed. The
//! process exits non-zero if any hard criterion fails; the scaling check only
//! warns.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_bigint::BigUint;
use num_rational::BigRational;

use common::{brute_optimum, closure_mco, semicomplete_suite, tournament_classes, tournament_suite};
use dcoc::cli::{cmd_bench, ArcCheckArg, BenchArgs, RuleArg, SolverFlags};
use dcoc::generators::{
    chain_sizes, circulant_tournament, flip_one_arc, layered_tournament, planted_instance, random_semicomplete,
    random_tournament, strong_tournament, transitive_tournament,
};
use dcoc::guess::{self, check_guess_bound, FamilyMode, Verdict};
use dcoc::oracle::{brute_force_triples, brute_force_triples_with, min_feedback_vertex_set, optimal_coc};
use dcoc::rng::Rng;
use dcoc::semicomplete::{
    build_state_graph_with, enumerate_t_valid_triples, enumerate_t_valid_triples_with, forced_partition, min_cost,
    solve, solve_with, triple_bound, DegreeRule, SolverOptions,
};
use dcoc::{verify_solution, Digraph, Instance, VertexSet};

enum Outcome {
    Pass(String),
    Fail(String),
    Warn(String),
}

type Check = fn() -> Outcome;

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Outcome::Pass(detail)
    } else {
        Outcome::Fail(detail)
    }
}

fn main() {
    let criteria: [(&str, Check); 12] = [
        ("oracle equivalence", oracle_equivalence),
        ("feedback vertex set special case", feedback_vertex_set),
        ("per-level triple bound", triple_count_bound),
        ("free-set bound", free_set_bound),
        ("triple enumeration matches definition", triple_enumeration),
        ("degree separation", degree_separation),
        ("guessing probability", guessing_probability),
        ("guess-count bound arithmetic", guess_bound_arithmetic),
        ("cover-free families", cover_free_families),
        ("quadratic scaling (soft)", scaling),
        ("small-instance shortcut", shortcut),
        ("adversary fixture", adversary),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let clock = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|e| Outcome::Fail(format!("panicked: {}", panic_message(&e))));
        let secs = clock.elapsed().as_secs_f64();
        let (tag, detail) = match outcome {
            Outcome::Pass(d) => ("PASS", d),
            Outcome::Warn(d) => ("WARN", d),
            Outcome::Fail(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} {:>2} {name}: {detail} [{secs:.1}s]", i + 1);
    }
    println!("acceptance: {} of {} hard criteria passed", 11 - failed.min(11), 11);
    if failed > 0 {
        std::process::exit(1);
    }
}

fn panic_message(e: &Box<dyn std::any::Any + Send>) -> String {
    e.downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| e.downcast_ref::<String>().cloned())
        .unwrap_or_default()
}

fn witness_ok(d: &Digraph, ell: usize, k: usize, x: &VertexSet) -> bool {
    let inst = Instance::new(d.clone(), ell, k).unwrap();
    x.len() <= k && verify_solution(&inst, x) && closure_mco(d, &x.to_vec()) <= ell
}

fn oracle_equivalence() -> Outcome {
    let mut checked = 0;
    let mut problems = Vec::new();
    for (family, suite) in [
        ("tournament", tournament_suite()),
        ("semicomplete", semicomplete_suite()),
    ] {
        for (idx, d) in suite.iter().enumerate() {
            for ell in 1..=3 {
                let optimum = brute_optimum(d, ell);
                let by_oracle = optimal_coc(d, ell, d.n()).unwrap().unwrap().optimum;
                if by_oracle != optimum {
                    problems.push(format!("{family} #{idx}: oracle {by_oracle} vs closure {optimum}"));
                }
                for k in 0..=3 {
                    checked += 1;
                    let inst = Instance::new(d.clone(), ell, k).unwrap();
                    let answer = solve(&inst).unwrap();
                    if answer.is_some() != (optimum <= k) {
                        problems.push(format!("{family} #{idx} ell={ell} k={k}: decision differs"));
                    }
                    if let Some(sol) = answer {
                        if !witness_ok(d, ell, k, &sol.x) {
                            problems.push(format!("{family} #{idx} ell={ell} k={k}: bad witness {:?}", sol.x));
                        }
                    }
                }
            }
        }
    }
    ensure(
        problems.is_empty(),
        format!(
            "{checked} instances, {} mismatches {:?}",
            problems.len(),
            problems.first()
        ),
    )
}

fn small_tournaments() -> Vec<Digraph> {
    let mut out = tournament_suite();
    out.extend((0..200u64).map(|s| random_tournament(8, 20_000 + s)));
    out.extend([circulant_tournament(5).unwrap(), circulant_tournament(7).unwrap()]);
    out.extend([1, 3, 4, 5, 6, 7, 8].map(|i| strong_tournament(i).unwrap()));
    out.extend((1..=8).map(transitive_tournament));
    out
}

fn feedback_vertex_set() -> Outcome {
    let suite = small_tournaments();
    let mut bad = Vec::new();
    for (idx, d) in suite.iter().enumerate() {
        let n = d.n();
        let fvs = min_feedback_vertex_set(d, n).unwrap().unwrap().optimum;
        let dp = min_cost(&Instance::new(d.clone(), 1, n).unwrap()).unwrap();
        // the exhaustive answer is also checked against the closure-based count
        if dp != Some(fvs) || brute_optimum(d, 1) != fvs {
            bad.push((idx, n, dp, fvs));
        }
    }
    ensure(
        bad.is_empty(),
        format!("{} tournaments with n <= 8, mismatches {:?}", suite.len(), bad.first()),
    )
}

fn layered_suite() -> Vec<Digraph> {
    let mut out = Vec::new();
    for n in [8, 16, 32, 64] {
        out.push(layered_tournament(&chain_sizes(n, 3).unwrap()).unwrap());
        out.push(layered_tournament(&chain_sizes(n, 5).unwrap()).unwrap());
    }
    for seed in 0..24u64 {
        out.push(layered_tournament(&random_blocks(64 >> (seed % 3), seed)).unwrap());
    }
    out
}

/// Block sizes from {1, 3, 4, 5} filling exactly `n`.
fn random_blocks(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = Rng::new(seed);
    let mut sizes = Vec::new();
    let mut left = n;
    while left > 0 {
        let choices: Vec<usize> = [1, 3, 4, 5]
            .into_iter()
            .filter(|&s| s <= left && left - s != 2)
            .collect();
        let s = choices[rng.below(choices.len() as u64) as usize];
        sizes.push(s);
        left -= s;
    }
    sizes
}

fn triple_count_bound() -> Outcome {
    let mut levels = 0;
    let mut largest = (0usize, 0usize);
    let mut violations = 0;
    let mut check = |d: &Digraph, k: usize| {
        let bound = triple_bound(k).unwrap();
        for t in 0..=d.n() {
            let count = enumerate_t_valid_triples(d, t, k).unwrap().len();
            levels += 1;
            if count > bound {
                violations += 1;
            }
            if count > largest.0 {
                largest = (count, k);
            }
        }
    };
    for d in tournament_suite().iter().chain(semicomplete_suite().iter()) {
        for k in 0..=3 {
            check(d, k);
        }
    }
    for d in small_tournaments().iter().filter(|d| d.n() == 8) {
        for k in 0..=3 {
            check(d, k);
        }
    }
    for d in layered_suite() {
        for k in 0..=2 {
            check(&d, k);
        }
    }
    ensure(
        violations == 0,
        format!(
            "{levels} levels, {violations} over 2^(8k+2); largest level {} triples at k={}",
            largest.0, largest.1
        ),
    )
}

fn free_set_bound() -> Outcome {
    let opts = SolverOptions {
        free_bound_shortcut: false,
        ..Default::default()
    };
    let mut nonempty = 0;
    let mut max_free = 0;
    let mut violations = Vec::new();
    let mut check = |d: &Digraph, k: usize, tag: &str| {
        let g = build_state_graph_with(&Instance::new(d.clone(), 1, k).unwrap(), &opts).unwrap();
        for t in 0..=d.n() {
            if g.stats.triples_per_level[t] > 0 {
                nonempty += 1;
                let free = g.stats.free_per_level[t];
                max_free = max_free.max(free);
                if free > 7 * k + 2 {
                    violations.push(format!("{tag} t={t} k={k} free={free}"));
                }
            }
        }
    };
    for d in tournament_suite().iter().chain(semicomplete_suite().iter()) {
        for k in 0..=3 {
            check(d, k, "small");
        }
    }
    for d in layered_suite() {
        for k in 0..=2 {
            check(&d, k, "layered");
        }
    }
    // definition level: any brute-force triple at all means a small free set
    let mut brute_levels = 0;
    for d in tournament_suite()
        .iter()
        .step_by(5)
        .chain(semicomplete_suite().iter().step_by(5))
    {
        for k in 0..=1 {
            for t in 0..=d.n() {
                if !brute_force_triples_with(d, t, k, DegreeRule::Relaxed)
                    .unwrap()
                    .is_empty()
                {
                    brute_levels += 1;
                    let free = forced_partition(d, t, k).unwrap().free.len();
                    if free > 7 * k + 2 {
                        violations.push(format!("brute t={t} k={k} free={free}"));
                    }
                }
            }
        }
    }
    ensure(
        violations.is_empty(),
        format!(
            "{nonempty} non-empty levels without the free-set shortcut plus {brute_levels} by definition; \
             largest free set {max_free}; violations {:?}",
            violations.first()
        ),
    )
}

fn triple_enumeration() -> Outcome {
    let mut graphs: Vec<Digraph> = (0..=5).flat_map(common::all_tournaments).collect();
    let classes = tournament_classes(6);
    if classes.len() != 56 {
        return Outcome::Fail(format!(
            "expected 56 tournament classes on 6 vertices, got {}",
            classes.len()
        ));
    }
    graphs.extend(classes);
    let mut compared = 0;
    let mut mismatches = Vec::new();
    for d in &graphs {
        for k in 0..=2 {
            for t in 0..=d.n() {
                let mut brute = brute_force_triples(d, t, k).unwrap();
                brute.sort();
                for rule in [DegreeRule::Strict, DegreeRule::Relaxed] {
                    let mut fast = enumerate_t_valid_triples_with(d, t, k, rule).unwrap();
                    fast.sort();
                    compared += 1;
                    if fast != brute {
                        mismatches.push(format!("n={} t={t} k={k} {rule:?}", d.n()));
                    }
                }
            }
        }
    }
    ensure(
        mismatches.is_empty(),
        format!(
            "{} tournaments (all labelled n <= 5, all 56 classes n = 6), {compared} level comparisons, \
             mismatches {:?}",
            graphs.len(),
            mismatches.first()
        ),
    )
}

/// For every cut between blocks of a layered tournament, vertices whose
/// degree across the cut is within `p` of the minimum are few.
fn separation_counts(d: &Digraph, sizes: &[usize], p: usize) -> Vec<(usize, usize)> {
    let n = d.n();
    let mut out = Vec::new();
    let mut y_len = 0;
    for &s in &sizes[..sizes.len() - 1] {
        y_len += s;
        let z_len = n - y_len;
        let low_out = (0..y_len).filter(|&y| d.out_degree(y) <= z_len + p).count();
        let low_in = (y_len..n).filter(|&z| d.in_degree(z) <= y_len + p).count();
        out.push((low_out, low_in));
    }
    out
}

fn degree_separation() -> Outcome {
    let mut cuts = 0;
    let mut worst = Vec::new();
    for seed in 0..200u64 {
        let n = 6 + (seed % 40) as usize;
        let sizes = random_blocks(n, 500 + seed);
        if sizes.len() < 2 {
            continue;
        }
        let d = layered_tournament(&sizes).unwrap();
        for p in 0..=3 {
            for (a, b) in separation_counts(&d, &sizes, p) {
                cuts += 1;
                if a > 2 * p + 1 || b > 2 * p + 1 {
                    worst.push((seed, p, a, b));
                }
            }
        }
    }
    ensure(
        worst.is_empty(),
        format!(
            "200 layered tournaments, {cuts} (cut, p) checks, violations {:?}",
            worst.first()
        ),
    )
}

fn guessing_probability() -> Outcome {
    let fixtures: [(&[usize], usize); 10] = [
        (&[3, 3, 3, 1], 2),
        (&[3, 1, 3], 1),
        (&[4, 3, 3], 2),
        (&[1, 1, 3, 1, 3], 2),
        (&[5, 3, 1], 2),
        (&[3, 3, 3, 3], 2),
        (&[4, 4], 1),
        (&[3, 4, 1, 3], 2),
        (&[1, 3, 1, 3, 1], 1),
        (&[5, 5, 1], 2),
    ];
    let mut lines = Vec::new();
    let mut ok = true;
    for (i, (sizes, extra)) in fixtures.into_iter().enumerate() {
        let planted = planted_instance(sizes, extra, 700 + i as u64).unwrap();
        let d = &planted.digraph;
        let n = d.n();
        let ell = 1 + i % 3;
        let x = &planted.x;
        let mut rng = Rng::new(900 + i as u64);
        let mut x0 = VertexSet::new(n);
        for _ in 0..1 + i % 3 {
            x0.insert(rng.below((n - extra) as u64) as usize);
        }

        // exact value from components computed by closure
        let removed = x.to_vec();
        let y: Vec<usize> = (0..n)
            .filter(|v| !x.contains(*v))
            .filter(|&v| x0.iter().any(|a| same_component(d, &removed, a, v)))
            .collect();
        let random_members = y.iter().filter(|&&v| !x0.contains(v)).count();
        let p = BigRational::new((ell as i64).into(), (ell as i64 + 1).into());
        let q = BigRational::new(1.into(), (ell as i64 + 1).into());
        let expected = pow(&p, random_members) * pow(&q, x.len());

        let mc = guess::monte_carlo(d, x, &x0, ell, 100_000, 4_000 + i as u64).unwrap();
        let within = mc.within_three_sigma() == Some(true);
        let fixture_ok = n <= 14 && x.len() <= 2 && mc.exact == expected && within && mc.fix_failures == 0;
        ok &= fixture_ok;
        lines.push(format!(
            "{}{}: {:.4} vs {}",
            if fixture_ok { "" } else { "BAD " },
            i,
            mc.frequency().unwrap(),
            mc.exact
        ));
    }
    ensure(
        ok,
        format!("10 fixtures x 1e5 trials, freq vs exact [{}]", lines.join(", ")),
    )
}

#[allow(clippy::needless_range_loop)]
fn same_component(d: &Digraph, removed: &[usize], a: usize, b: usize) -> bool {
    if a == b {
        return true;
    }
    let n = d.n();
    let mut reach = vec![vec![false; n]; n];
    for (u, v) in d.arcs() {
        if !removed.contains(&u) && !removed.contains(&v) {
            reach[u][v] = true;
        }
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
    reach[a][b] && reach[b][a]
}

fn pow(r: &BigRational, e: usize) -> BigRational {
    (0..e).fold(BigRational::from_integer(1.into()), |acc, _| acc * r)
}

fn guess_bound_arithmetic() -> Outcome {
    // e > 2718281828 / 10^9, so binom * 10^(9k) <= (3 ell 2718281828)^k implies the bound
    let mut bad = Vec::new();
    let mut tight = (0.0f64, 0, 0);
    for ell in 1..=12usize {
        for k in 1..=12usize {
            let check = check_guess_bound(ell, k);
            let top = ell * (k + 1) + k;
            let binom = (0..k).fold(BigUint::from(1u32), |acc, i| acc * (top - i) / (i + 1));
            let lhs = &binom * BigUint::from(10u32).pow(9 * k as u32);
            let rhs = BigUint::from(3 * ell as u64 * 2_718_281_828u64).pow(k as u32);
            if check.outer != Verdict::Holds || check.middle != Verdict::Holds || check.binom != binom || lhs > rhs {
                bad.push((ell, k));
            }
            let ratio = ratio_f64(&lhs, &rhs);
            if ratio > tight.0 {
                tight = (ratio, ell, k);
            }
        }
    }
    ensure(
        bad.is_empty(),
        format!(
            "144 (ell, k) pairs; largest binom/(3e ell)^k = {:.3e} at ell={}, k={}; failures {:?}",
            tight.0, tight.1, tight.2, bad
        ),
    )
}

fn ratio_f64(a: &BigUint, b: &BigUint) -> f64 {
    let scale = b.bits().saturating_sub(60);
    let a = (a >> scale).to_string().parse::<f64>().unwrap();
    let b = (b >> scale).to_string().parse::<f64>().unwrap();
    a / b
}

/// Independent cover-free check over bit masks.
fn covers_all_pairs(n: usize, r: usize, s: usize, family: &[VertexSet]) -> bool {
    let masks: Vec<u32> = family.iter().map(|f| f.iter().fold(0u32, |m, v| m | 1 << v)).collect();
    let subsets = |size: usize| (0u32..1 << n).filter(move |m| m.count_ones() as usize == size);
    subsets(r).all(|a| {
        subsets(s)
            .filter(|b| a & b == 0)
            .all(|b| masks.iter().any(|&f| f & a == a && f & b == 0))
    })
}

fn cover_free_families() -> Outcome {
    let mut report = Vec::new();
    let mut ok = true;
    for (n, r, s) in [(10, 2, 2), (12, 3, 1), (14, 1, 3)] {
        let mut sizes = Vec::new();
        let modes = std::iter::once(FamilyMode::Exhaustive).chain((0..3).map(|seed| FamilyMode::Randomized { seed }));
        for mode in modes {
            let family = guess::candidate_family(n, r, s, mode).unwrap();
            ok &= covers_all_pairs(n, r, s, &family) && guess::verify_cover_free(n, r, s, &family);
            sizes.push(family.len());
        }
        report.push(format!("({n},{r},{s}) sizes {sizes:?}"));
    }
    ensure(ok, format!("exhaustive + 3 randomized each: {}", report.join("; ")))
}

fn scaling() -> Outcome {
    let specs: Vec<String> = [128, 256, 512].iter().map(|n| format!("chain:n={n},block=3")).collect();
    let args = BenchArgs {
        specs,
        ell: 2,
        k: 1,
        reps: 3,
        seed: None,
        solver: SolverFlags {
            rule: RuleArg::Relaxed,
            arc_check: ArcCheckArg::Dense,
        },
        out: None,
    };
    let csv = cmd_bench(&args).unwrap();
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("scaling_bench.csv");
    std::fs::write(&path, &csv).unwrap();

    let mut reader = csv::Reader::from_reader(csv.as_bytes());
    let headers = reader.headers().unwrap().clone();
    let col = |name: &str| headers.iter().position(|h| h == name).unwrap();
    let (n_col, t_col) = (col("n"), col("total_ms"));
    let mut by_n: std::collections::BTreeMap<usize, Vec<f64>> = Default::default();
    for row in reader.records() {
        let row = row.unwrap();
        by_n.entry(row[n_col].parse().unwrap())
            .or_default()
            .push(row[t_col].parse().unwrap());
    }
    let medians: Vec<f64> = by_n
        .values_mut()
        .map(|v| {
            v.sort_by(|a, b| a.partial_cmp(b).unwrap());
            v[v.len() / 2]
        })
        .collect();
    let ratios: Vec<f64> = medians.windows(2).map(|w| w[1] / w[0]).collect();
    let detail = format!(
        "median ms {:?}, ratios per doubling {:?} (limit 6), csv at {}",
        medians.iter().map(|m| format!("{m:.1}")).collect::<Vec<_>>(),
        ratios.iter().map(|r| format!("{r:.2}")).collect::<Vec<_>>(),
        path.display()
    );
    if ratios.iter().all(|&r| r <= 6.0) {
        Outcome::Pass(detail)
    } else {
        Outcome::Warn(detail)
    }
}

fn shortcut() -> Outcome {
    let mut bad = Vec::new();
    let mut rng = Rng::new(31);
    for i in 0..100u64 {
        let n = 2 + (i % 11) as usize;
        let d = random_semicomplete(n, 0.3, 60_000 + i);
        let ell = 1 + rng.below(n as u64) as usize;
        let k = n - ell + rng.below(3) as usize;
        let inst = Instance::new(d.clone(), ell, k).unwrap();
        let report = solve_with(&inst, &SolverOptions::default()).unwrap();
        let good = report.stats.is_none()
            && report
                .solution
                .as_ref()
                .is_some_and(|s| s.via_shortcut && witness_ok(&d, ell, k, &s.x));
        if !good {
            bad.push((i, n, ell, k));
        }
    }
    ensure(
        bad.is_empty(),
        format!(
            "100 instances with k + ell >= n, no state graph built; failures {:?}",
            bad.first()
        ),
    )
}

fn adversary() -> Outcome {
    let mut flips = 0;
    let mut bad = Vec::new();
    for n in [10usize, 20] {
        let (a, b) = (n / 2, n - n / 2);
        let d = layered_tournament(&[a, b]).unwrap();
        let ell = b;
        if solve(&Instance::new(d.clone(), ell, 0).unwrap()).unwrap().is_none() {
            bad.push(format!("n={n}: base instance answered NO"));
        }
        let mut rng = Rng::new(n as u64);
        for _ in 0..20 {
            let u = rng.below(a as u64) as usize;
            let v = a + rng.below(b as u64) as usize;
            let flipped = flip_one_arc(&d, u, v).unwrap();
            flips += 1;
            let yes = solve(&Instance::new(flipped.clone(), ell, 0).unwrap())
                .unwrap()
                .is_some();
            if yes || closure_mco(&flipped, &[]) != n {
                bad.push(format!("n={n}: flip {u}->{v} answered YES"));
            }
        }
    }
    ensure(
        bad.is_empty(),
        format!(
            "2 base instances YES, {flips} single flips all NO; problems {:?}",
            bad.first()
        ),
    )
}
