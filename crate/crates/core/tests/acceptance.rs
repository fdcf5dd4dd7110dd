//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each
//! and exits non-zero if any failed.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use itp_core::eqc::{solve_eqc, EqcInstance};
use itp_core::fpt::{coloring_with, dominating_set_with, vertex_cover_with, FptConfig};
use itp_core::gadgets::{
    build_reduction_graph, coloring_from_packing, expand, packing_from_coloring, BinPackingInstance, Multiplicity,
};
use itp_core::graph::{
    generate, is_dominating_set, is_equitable_coloring, is_proper_coloring, is_vertex_cover, Family, Graph,
};
use itp_core::oracles::{bf_binpacking, bf_chromatic, bf_dominating_set, bf_equitable, bf_vertex_cover};
use itp_core::typepart::{is_base_graph, itp, nd, type_partition, type_sequence, ClassKind};
use itp_core::Error;

/// Outcome of the solver runs that criterion 8 inspects.
#[derive(Default)]
struct InvariantLog {
    runs: usize,
    checks: usize,
    violations: Vec<String>,
}

impl InvariantLog {
    fn record<T>(&mut self, what: &str, r: &Result<itp_core::fpt::Solved<T>, Error>) {
        self.runs += 1;
        match r {
            Ok(s) => self.checks += s.checks,
            Err(e @ Error::InvariantViolated(_)) => self.violations.push(format!("{what}: {e}")),
            Err(_) => {}
        }
    }
}

type Outcome = Result<String, String>;

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    if took > limit {
        Err(format!("took {took:.2?}, limit {limit:?}"))
    } else {
        Ok(())
    }
}

fn random(n: usize, seed: u64) -> Graph {
    let p = [0.2, 0.35, 0.5, 0.65, 0.8][(seed % 5) as usize];
    generate(Family::Random { n, p, seed }).unwrap()
}

/// Odd seeds: a random graph on about half the nodes, grown by adding true
/// or false twins of existing nodes, so the type graph sequence is deep.
/// Even seeds: plain G(n, p).
fn suite_graph(n: usize, seed: u64) -> Graph {
    if seed.is_multiple_of(2) || n < 3 {
        return random(n, seed);
    }
    let core_n = n.div_ceil(2);
    let core = random(core_n, seed);
    let mut edges: Vec<(usize, usize)> = core.edges().collect();
    let mut adj: Vec<Vec<usize>> = (0..core_n).map(|v| core.neighbors(v).to_vec()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for v in core_n..n {
        let src = rng.gen_range(0..v);
        let mut nb = adj[src].clone();
        if rng.gen_bool(0.5) {
            nb.push(src);
        }
        for &u in &nb {
            edges.push((u, v));
            adj[u].push(v);
        }
        adj.push(nb);
    }
    Graph::from_edges(n, edges).unwrap()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    for n in 1..=12 {
        let k = generate(Family::Complete(n)).unwrap();
        if (itp(&k), nd(&k)) != (1, 1) {
            return Err(format!("K_{n}: itp={}, nd={}", itp(&k), nd(&k)));
        }
    }
    for (a, b) in [(1, 2), (1, 3), (2, 2), (2, 5), (3, 4), (6, 6)] {
        let g = generate(Family::CompleteBipartite(a, b)).unwrap();
        if (itp(&g), nd(&g)) != (1, 2) {
            return Err(format!("K_{a},{b}: itp={}, nd={}", itp(&g), nd(&g)));
        }
    }
    let c5 = generate(Family::Cycle(5)).unwrap();
    if (itp(&c5), nd(&c5)) != (5, 5) {
        return Err(format!("C_5: itp={}, nd={}", itp(&c5), nd(&c5)));
    }
    for seed in 0..500u64 {
        let n = 1 + (seed as usize % 30);
        let g = random(n, seed);
        let (t, d) = (itp(&g), nd(&g));
        if !(t <= d && d <= n) {
            return Err(format!("seed {seed}: itp={t}, nd={d}, n={n}"));
        }
    }
    within(start, Duration::from_secs(1))?;
    Ok(format!("identities hold, 500 random graphs in {:.2?}", start.elapsed()))
}

/// Connected base graph with `size` nodes by rejection sampling.
fn random_base(size: usize, seed: u64) -> Graph {
    (0..)
        .map(|t| generate(Family::Random { n: size, p: 0.5, seed: seed * 1000 + t }).unwrap())
        .find(|g| g.is_connected() && is_base_graph(g))
        .unwrap()
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    for trial in 0..100u64 {
        // both connected 3-node graphs have twins, so sizes start at 4
        let size = 4 + (trial as usize % 5);
        let d = 1 + (trial as usize % 3);
        let base = random_base(size, trial);
        let g = expand(&base, d, Multiplicity::Uniform { lo: 2, hi: 4 }, trial).unwrap();
        let seq = type_sequence(&g);
        let h1 = seq.level(1).graph.n();
        let bound = size << (d - 1);
        if seq.itp() != size || seq.depth() != d || nd(&g) != h1 || h1 < bound {
            return Err(format!(
                "trial {trial}: base {size}, d={d}: itp={}, depth={}, nd={}, |H1|={h1}, bound {bound}",
                seq.itp(),
                seq.depth(),
                nd(&g)
            ));
        }
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!("100 expansions recovered in {:.2?}", start.elapsed()))
}

fn criterion_3(log: &mut InvariantLog) -> Outcome {
    let start = Instant::now();
    let cfg = FptConfig::default();
    for seed in 0..300u64 {
        let n = 1 + (seed as usize % 10);
        let g = suite_graph(n, seed);

        let ds = dominating_set_with(&g, &cfg);
        log.record("ds", &ds);
        let ds = ds.map_err(|e| format!("seed {seed}: ds failed: {e}"))?.value;
        let want = bf_dominating_set(&g).unwrap().len();
        if !is_dominating_set(&g, &ds) || ds.len() != want {
            return Err(format!("seed {seed}: ds size {} (valid={}), oracle {want}", ds.len(), is_dominating_set(&g, &ds)));
        }

        let vc = vertex_cover_with(&g, &cfg);
        log.record("vc", &vc);
        let vc = vc.map_err(|e| format!("seed {seed}: vc failed: {e}"))?.value;
        let want = bf_vertex_cover(&g).unwrap().len();
        if !is_vertex_cover(&g, &vc) || vc.len() != want {
            return Err(format!("seed {seed}: vc size {}, oracle {want}", vc.len()));
        }

        let col = coloring_with(&g, &cfg);
        log.record("color", &col);
        let col = col.map_err(|e| format!("seed {seed}: coloring failed: {e}"))?.value;
        let (want, _) = bf_chromatic(&g).unwrap();
        let single = (0..n).all(|v| col.single(v).is_some());
        if !single || !is_proper_coloring(&g, &col) || col.color_count() != want {
            return Err(format!("seed {seed}: {} colors, oracle {want}", col.color_count()));
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("300 graphs, ds/vc/color match oracles in {:.2?}", start.elapsed()))
}

fn criterion_4(log: &mut InvariantLog) -> Outcome {
    let start = Instant::now();
    let (mut yes, mut no, mut uneven) = (0, 0, 0);
    for seed in 0..200u64 {
        let n = 1 + (seed as usize % 10);
        let g = suite_graph(n, 7_000 + seed);
        for k in 1..=n {
            if !n.is_multiple_of(k) {
                uneven += 1;
            }
            let inst = EqcInstance { graph: g.clone(), k };
            log.runs += 1;
            let got = match solve_eqc(&inst) {
                Ok(o) => o.coloring,
                Err(e @ Error::InvariantViolated(_)) => {
                    log.violations.push(format!("eqc seed {seed} k={k}: {e}"));
                    return Err(format!("seed {seed}, k={k}: {e}"));
                }
                Err(e) => return Err(format!("seed {seed}, k={k}: {e}")),
            };
            let want = bf_equitable(&g, k).unwrap().is_some();
            if got.is_some() != want {
                return Err(format!("seed {seed}, k={k}: solver says {}, oracle {want}", got.is_some()));
            }
            if let Some(c) = got {
                if !is_equitable_coloring(&g, &c, k) {
                    return Err(format!("seed {seed}, k={k}: certificate rejected"));
                }
                yes += 1;
            } else {
                no += 1;
            }
        }
    }
    within(start, Duration::from_secs(120))?;
    Ok(format!(
        "{} decisions ({yes} yes, {no} no, {uneven} with k not dividing n) in {:.2?}",
        yes + no,
        start.elapsed()
    ))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut problems = Vec::new();
    let first = BinPackingInstance {
        items: vec![2, 1, 2, 3],
        k: 3,
        capacity: 4,
    };
    let g = build_reduction_graph(&first).unwrap().graph;
    let (n, t) = (g.n(), itp(&g));
    if n != 102 {
        problems.push(format!("A={{2,1,2,3}},k=3,B=4: |V|={n}, expected 102"));
    }
    if t != 9 {
        problems.push(format!("A={{2,1,2,3}},k=3,B=4: itp={t}, expected 9"));
    }
    let second = BinPackingInstance {
        items: vec![1, 1, 2],
        k: 2,
        capacity: 2,
    };
    let g = build_reduction_graph(&second).unwrap().graph;
    let (n, t, d) = (g.n(), itp(&g), nd(&g));
    if n != 40 {
        problems.push(format!("A={{1,1,2}},k=2,B=2: |V|={n}, expected 40"));
    }
    if t != 7 {
        problems.push(format!("A={{1,1,2}},k=2,B=2: itp={t}, expected 7"));
    }
    if d != 19 {
        problems.push(format!("A={{1,1,2}},k=2,B=2: nd={d}, expected 19"));
    }
    within(start, Duration::from_secs(5))?;
    if problems.is_empty() {
        Ok("reduction sizes and parameters as expected".into())
    } else {
        Err(problems.join("; "))
    }
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let k = 2;
    let mut checked = 0;
    for b in 1..=3usize {
        for l in 1..=4usize {
            let mut items = vec![1usize; l];
            loop {
                let inst = BinPackingInstance {
                    items: items.clone(),
                    k,
                    capacity: b,
                };
                if inst.is_exact() {
                    if let Some(bins) = bf_binpacking(&inst).unwrap() {
                        round_trip(&inst, &bins)?;
                        checked += 1;
                    }
                }
                // next item vector in 1..=b per position
                let Some(i) = items.iter().rposition(|&a| a < b) else { break };
                items[i] += 1;
                items[i + 1..].iter_mut().for_each(|a| *a = 1);
            }
        }
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!("{checked} yes instances round-tripped in {:.2?}", start.elapsed()))
}

fn round_trip(inst: &BinPackingInstance, bins: &[Vec<usize>]) -> Result<(), String> {
    let r = build_reduction_graph(inst).unwrap();
    let tag = format!("items {:?}, B={}", inst.items, inst.capacity);
    let c = coloring_from_packing(&r, bins).map_err(|e| format!("{tag}: {e}"))?;
    if !is_equitable_coloring(&r.graph, &c, inst.k + 3) {
        return Err(format!("{tag}: coloring not equitable"));
    }
    let size = inst.capacity * inst.k + inst.items.len() + 1;
    if c.classes().values().any(|m| m.len() != size) {
        return Err(format!("{tag}: class sizes differ from {size}"));
    }
    let back = packing_from_coloring(&r, &c).map_err(|e| format!("{tag}: {e}"))?;
    inst.check_packing(&back).map_err(|e| format!("{tag}: {e}"))
}

fn criterion_7(log: &mut InvariantLog) -> Outcome {
    let base = generate(Family::Path(6)).unwrap();
    let g = expand(&base, 3, Multiplicity::Fixed(3), 0).unwrap();
    let t = itp(&g);
    if t != 6 || g.n() < 150 {
        return Err(format!("test graph has itp={t}, n={}", g.n()));
    }
    let cfg = FptConfig::default();
    let limit = Duration::from_secs(5);
    let mut times = Vec::new();

    let start = Instant::now();
    let ds = dominating_set_with(&g, &cfg);
    log.record("ds", &ds);
    let ds = ds.map_err(|e| format!("ds: {e}"))?;
    within(start, limit).map_err(|e| format!("ds {e}"))?;
    times.push(start.elapsed());
    if !is_dominating_set(&g, &ds.value) {
        return Err("ds certificate rejected".into());
    }
    check_one_per_class(&g, &ds.value.to_vec())?;

    let start = Instant::now();
    let vc = vertex_cover_with(&g, &cfg);
    log.record("vc", &vc);
    let vc = vc.map_err(|e| format!("vc: {e}"))?;
    within(start, limit).map_err(|e| format!("vc {e}"))?;
    times.push(start.elapsed());
    if !is_vertex_cover(&g, &vc.value) {
        return Err("vc certificate rejected".into());
    }

    let start = Instant::now();
    let col = coloring_with(&g, &cfg);
    log.record("color", &col);
    let col = col.map_err(|e| format!("color: {e}"))?;
    within(start, limit).map_err(|e| format!("color {e}"))?;
    times.push(start.elapsed());
    if !is_proper_coloring(&g, &col.value) {
        return Err("coloring rejected".into());
    }
    check_nested_independent_classes(&g, &col.value)?;

    Ok(format!(
        "n={}, itp=6: ds {} in {:.2?}, vc {} in {:.2?}, {} colors in {:.2?}",
        g.n(),
        ds.value.len(),
        times[0],
        vc.value.len(),
        times[1],
        col.value.color_count(),
        times[2]
    ))
}

/// The dominating set recursion above the base selects at most one node
/// per type class of the input graph.
fn check_one_per_class(g: &Graph, d: &[usize]) -> Result<(), String> {
    let p = type_partition(g);
    let mut hits = vec![0; p.len()];
    for &v in d {
        hits[p.class_of(v)] += 1;
    }
    match hits.iter().position(|&h| h > 1) {
        Some(x) => Err(format!("ds picks {} nodes from type class {x}", hits[x])),
        None => Ok(()),
    }
}

/// In every independent class the color sets are nested in the largest.
fn check_nested_independent_classes(g: &Graph, c: &itp_core::ColoringAssignment) -> Result<(), String> {
    for class in type_partition(g).classes() {
        if class.kind != ClassKind::Independent {
            continue;
        }
        let widest = class.members.iter().map(|&v| c.colors_of(v)).max_by_key(|s| s.len()).unwrap();
        if class.members.iter().any(|&v| c.colors_of(v).iter().any(|x| !widest.contains(x))) {
            return Err("independent class color sets are not nested".into());
        }
    }
    Ok(())
}

fn criterion_8(log: &InvariantLog) -> Outcome {
    if !log.violations.is_empty() {
        return Err(log.violations.join("; "));
    }
    if log.checks == 0 {
        return Err("no lift level was exercised".into());
    }
    Ok(format!("{} solver runs, {} per-level checks, no violations", log.runs, log.checks))
}

fn main() {
    let mut log = InvariantLog::default();
    let results: Vec<(&str, Outcome)> = vec![
        ("1 parameter identities", criterion_1()),
        ("2 expansion recovery", criterion_2()),
        ("3 solver-oracle equivalence", criterion_3(&mut log)),
        ("4 equitable coloring equivalence", criterion_4(&mut log)),
        ("5 reduction structure", criterion_5()),
        ("6 packing/coloring round trip", criterion_6()),
        ("7 scaling smoke test", criterion_7(&mut log)),
    ];
    let last = criterion_8(&log);
    let mut failed = 0;
    for (name, r) in results.iter().chain(std::iter::once(&("8 recursion invariants", last))) {
        match r {
            Ok(msg) => println!("[PASS] criterion {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("[FAIL] criterion {name}: {msg}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
