//! Acceptance suite: one PASS/FAIL line per criterion, followed by indented
//! details. Run with `cargo test -p sumlabel --test acceptance`. Exits
//! non-zero when a gating criterion fails.

use std::collections::{BTreeSet, HashSet};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sumlabel::fixtures::{self, Fixture};
use sumlabel::runner::{self, RunOptions};
use sumlabel_core::graph::{Component, ConcreteGraph, GraphSpec};
use sumlabel_core::metrics::{self, SchemeId};
use sumlabel_core::search::{self, SearchConfig, SearchOutcome, SearchResult};
use sumlabel_core::verify::{self, Labelling, ViolationKind};
use sumlabel_core::{label, label_graph, schemes, Label};

struct Outcome {
    pass: bool,
    summary: String,
    details: Vec<String>,
}

impl Outcome {
    fn new(pass: bool, summary: impl Into<String>) -> Self {
        Outcome { pass, summary: summary.into(), details: Vec::new() }
    }

    fn note(mut self, line: impl Into<String>) -> Self {
        self.details.push(line.into());
        self
    }
}

/// Labellings with a 4-cycle collected from criteria 1 to 3 for criterion 4.
#[derive(Default)]
struct C4Pool(Vec<(String, Labelling, ConcreteGraph)>);

impl C4Pool {
    fn offer(&mut self, name: &str, l: &Labelling, g: &ConcreteGraph) {
        if !verify::c4_components(g).is_empty() && verify::verify(l, g).is_valid() {
            self.0.push((name.to_string(), l.clone(), g.clone()));
        }
    }
}

fn secs(d: Duration) -> String {
    format!("{:.3} s", d.as_secs_f64())
}

fn graph(spec: &str) -> ConcreteGraph {
    spec.parse::<GraphSpec>().unwrap().realize()
}

/// Independent validity check: every pair of labels is summed and looked up.
fn pair_oracle(components: &[(Component, Vec<Label>)], isolates: &[Label]) -> bool {
    let mut vertices = Vec::new();
    let mut edges = HashSet::new();
    for (c, labels) in components {
        let base = vertices.len();
        vertices.extend(labels.iter().cloned());
        let k = labels.len();
        let links = match c {
            Component::Cycle(_) => k,
            Component::Path(_) => k - 1,
        };
        for i in 0..links {
            let (u, v) = (base + i, base + (i + 1) % k);
            edges.insert((u.min(v), u.max(v)));
        }
    }
    let all: Vec<Label> = vertices.iter().chain(isolates).cloned().collect();
    let set: HashSet<&Label> = all.iter().collect();
    if set.len() != all.len() || all.iter().any(|x| *x == label(0)) {
        return false;
    }
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            let induced = set.contains(&(&all[i] + &all[j]));
            let wanted = j < vertices.len() && edges.contains(&(i, j));
            if induced != wanted {
                return false;
            }
        }
    }
    true
}

fn golden_fixtures(pool: &mut C4Pool) -> Outcome {
    let start = Instant::now();
    let all = fixtures::all();
    let checked: Vec<(&Fixture, verify::Certificate)> = all.iter().map(|f| (f, f.verify())).collect();
    let elapsed = start.elapsed();
    let by_name = |name: &str| checked.iter().find(|(f, _)| f.name == name).unwrap();

    let mut failing = Vec::new();
    let mut published = 0;
    for (f, cert) in &checked {
        if f.shape == fixtures::Shape::Components {
            let oracle = pair_oracle(&f.components, &f.isolates);
            assert_eq!(oracle, cert.is_valid(), "verifier disagrees with the pair oracle on {}", f.name);
        }
        pool.offer(f.name, &f.labelling(), &f.graph());
        if f.name == "triangle-invalid" || f.name == "c4-p2-printed" {
            continue;
        }
        published += 1;
        if !cert.is_valid() {
            let v = &cert.violations[0];
            let witness: Vec<String> = v.witness.iter().map(Label::to_string).collect();
            failing.push(format!("{} ({:?} {})", f.name, v.kind, witness.join("+")));
        }
    }
    let bad_triangle = &by_name("triangle-invalid").1;
    let rejects_bad_triangle = !bad_triangle.is_valid()
        && bad_triangle.first(ViolationKind::IsolateNotIsolated).is_some_and(|v| v.witness == [label(1), label(4)]);
    let rejects_printed = !by_name("c4-p2-printed").1.is_valid();
    let accepts_corrected = by_name("c4-p2-corrected").1.is_valid();
    let fast = elapsed < Duration::from_secs(1);

    let pass = failing.is_empty() && rejects_bad_triangle && rejects_printed && accepts_corrected && fast;
    let mut out = Outcome::new(
        pass,
        format!("golden fixtures: {}/{} published labellings verify in {}", published - failing.len(), published, secs(elapsed)),
    );
    for f in failing {
        out = out.note(format!("not a sum labelling: {f}"));
    }
    out.note(format!(
        "triangle (1,3,2)/5,4 rejected with IsolateNotIsolated(1,4): {rejects_bad_triangle}; C4+P2 with isolates 8,44 rejected: {rejects_printed}; with 8,52 accepted: {accepts_corrected}"
    ))
}

fn random_spec(rng: &mut ChaCha8Rng) -> GraphSpec {
    loop {
        let count = rng.gen_range(1..=12);
        let components: Vec<Component> = (0..count)
            .map(|_| if rng.gen_bool(0.5) { Component::Cycle(rng.gen_range(3..=9)) } else { Component::Path(rng.gen_range(2..=9)) })
            .collect();
        if components.iter().map(|c| c.order()).sum::<usize>() <= 60 {
            return GraphSpec::new(components).unwrap();
        }
    }
}

/// `2n - (max degree - min degree) - 2`, computed from the component list.
fn range_floor_oracle(components: &[Component]) -> usize {
    let n: usize = components.iter().map(|c| c.order()).sum();
    let degrees = |c: &Component| match c {
        Component::Cycle(_) => (2, 2),
        Component::Path(2) => (1, 1),
        Component::Path(_) => (1, 2),
    };
    let max = components.iter().map(|c| degrees(c).1).max().unwrap();
    let min = components.iter().map(|c| degrees(c).0).min().unwrap();
    (2 * n).saturating_sub(max - min + 2)
}

struct StrategyRun {
    outcome: Outcome,
    range_violations: Vec<String>,
    checked: usize,
}

fn strategy_optimality(pool: &mut C4Pool) -> StrategyRun {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut range_violations = Vec::new();
    let total = 500;
    for _ in 0..total {
        let spec = random_spec(&mut rng);
        let name = spec.to_string();
        let out = match label_graph(&spec) {
            Ok(out) => out,
            Err(e) => {
                failures.push(format!("{name}: {e}"));
                continue;
            }
        };
        let l = &out.labelling;
        if !pair_oracle(&l.components, &l.isolates) {
            failures.push(format!("{name}: not a sum labelling"));
        }
        let components: Vec<Component> = spec.components().to_vec();
        let min_degree = components.iter().map(|c| if matches!(c, Component::Cycle(_)) { 2 } else { 1 }).min().unwrap();
        let expected = match name.as_str() {
            "C4" => 3,
            "C4+P2" => 2,
            _ => min_degree,
        };
        if l.isolates.len() != expected || out.sigma != expected {
            failures.push(format!("{name}: {} isolates, expected {expected}", l.isolates.len()));
        }
        let all = l.all_labels();
        let range = all.iter().max().unwrap() - all.iter().min().unwrap();
        if range < Label::from(range_floor_oracle(&components)) {
            range_violations.push(format!("{name}: range {range}"));
        }
        pool.offer(&name, &l.labelling(), &l.graph());
    }
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && elapsed < Duration::from_secs(30);
    let mut outcome = Outcome::new(
        pass,
        format!(
            "strategy optimality: {}/{total} random specs labelled with min-degree isolates in {}",
            total - failures.len(),
            secs(elapsed)
        ),
    );
    for f in failures.iter().take(10) {
        outcome = outcome.note(f.clone());
    }
    StrategyRun { outcome, range_violations, checked: total }
}

fn run_search(spec: &str, max_label: u32, max_isolates: usize) -> SearchResult {
    let options = RunOptions { time_limit: None, parallel: true };
    runner::min_isolates(&graph(spec), &SearchConfig::new(max_label, max_isolates), options).unwrap()
}

fn bounded_lower_bounds(pool: &mut C4Pool) -> Outcome {
    let start = Instant::now();
    let mut lines = Vec::new();
    let mut pass = true;

    for (spec, isolates) in [("C4", 2), ("C4+P2", 1)] {
        let r = run_search(spec, 45, isolates);
        let ok = matches!(&r.outcome, SearchOutcome::RefutedUpTo { bound: 45, isolates: i } if i.contains(&isolates));
        pass &= ok;
        lines.push(format!("{spec}: {isolates} isolates refuted up to 45: {ok} ({} nodes)", r.nodes));
    }
    for (spec, isolates) in [("C3", 2), ("2C4", 2), ("P4", 1)] {
        let r = run_search(spec, 20, isolates);
        let ok = r.found_isolates() == Some(isolates);
        pass &= ok;
        lines.push(format!("{spec}: found {isolates} isolates within 20: {ok}"));
        if let SearchOutcome::Found { witness, .. } = &r.outcome {
            pool.offer(spec, witness, &graph(spec));
        }
    }
    // Where the first two-isolate labelling of 2C4 actually appears.
    let wider = run_search("2C4", 28, 2);
    if let SearchOutcome::Found { isolates, labels, witness } = &wider.outcome {
        lines.push(format!("2C4 within 28: {isolates} isolates, labels {labels:?}"));
        pool.offer("2C4 within 28", witness, &graph("2C4"));
    }
    let c4 = run_search("C4", 45, 3);
    if let SearchOutcome::Found { witness, .. } = &c4.outcome {
        pool.offer("C4 within 45", witness, &graph("C4"));
    }

    let mut out = Outcome::new(pass, format!("bounded lower bounds (bounded evidence, labels up to B) in {}", secs(start.elapsed())));
    for l in lines {
        out = out.note(l);
    }
    out
}

fn c4_structure(pool: &C4Pool) -> Outcome {
    let violations: Vec<String> = pool
        .0
        .iter()
        .filter_map(|(name, l, g)| {
            let cert = verify::c4_structural_checks(l, g);
            (!cert.is_valid()).then(|| format!("{name}: {:?}", cert.violations[0].kind))
        })
        .collect();
    let mut out = Outcome::new(
        violations.is_empty(),
        format!("4-cycle structure: {} violations over {} labellings with a 4-cycle", violations.len(), pool.0.len()),
    );
    for v in violations.iter().take(10) {
        out = out.note(v.clone());
    }
    out
}

fn growth_claims(strategy: &StrategyRun) -> Outcome {
    let mut lines = Vec::new();
    let mut info = Vec::new();
    let mut pass = true;
    let mut check = |ok: bool, line: String| {
        pass &= ok;
        lines.push(format!("{}: {line}", if ok { "ok" } else { "FAILED" }));
    };

    // kC4 via the strategy: largest label 2 * 2^(n/2).
    let rows = metrics::growth_table(SchemeId::Kc4, 2..=10).unwrap();
    let exact = rows.iter().all(|r| r.max_label == label(2) << (r.n / 2));
    check(exact, "kC4 largest label equals 2 * 2^(n/2) for k = 2..10".into());

    // Linear-exponential 4-cycles: per-cycle largest label doubles.
    let linexp = schemes::c4_linear_exponential(10).unwrap();
    let maxima: Vec<Label> = linexp.components.iter().map(|(_, l)| l.iter().max().unwrap().clone()).collect();
    let ratios: Vec<String> = (2..10).map(|i| format!("{:.4}", metrics::ratio(&maxima[i], &maxima[i - 1]))).collect();
    let doubles = (2..10).all(|i| maxima[i] == &maxima[i - 1] * 2u32);
    check(doubles, format!("linear-exponential cycle maxima ratio exactly 2 for cycles 3..10 (observed {})", ratios.join(", ")));
    let steps: Vec<Label> = linexp.components.iter().map(|(_, l)| &l[1] - &l[0]).collect();
    info.push(format!("info: linear-exponential common differences double exactly: {}", steps.windows(2).all(|w| w[1] == &w[0] * 2u32)));

    // Exponential matching: closed form 3 * 2^(k-1) - 1, 3 * 2^(k-1) against
    // the recurrence lower = previous lower + previous upper, upper = lower + 1.
    let mut closed = true;
    let mut recurrence = true;
    let mut doubling = true;
    for m in 1..=30 {
        let s = schemes::matching_exponential(m).unwrap();
        let (mut lo, mut hi) = (label(2), label(3));
        for (k, (_, edge)) in s.components.iter().enumerate() {
            let upper = label(3) << k;
            closed &= edge.iter().min() == Some(&(&upper - 1u32)) && edge.iter().max() == Some(&upper);
            recurrence &= edge.iter().min() == Some(&lo) && edge.iter().max() == Some(&hi);
            lo = &lo + &hi;
            hi = &lo + 1u32;
        }
        let uppers: Vec<Label> = s.components.iter().map(|(_, e)| e.iter().max().unwrap().clone()).collect();
        doubling &= uppers.windows(2).all(|w| w[1] == &w[0] * 2u32);
    }
    check(closed && recurrence, "exponential matching closed form equals the recurrence for n <= 60".into());
    check(doubling, "exponential matching two-step ratio exactly 2 (even-index labels)".into());

    // Fibonacci ratio at index 40.
    let fib = schemes::fibonacci_sequence(&label(1), &label(2), 41);
    let golden = (1.0 + 5f64.sqrt()) / 2.0;
    let r = metrics::ratio(&fib[40], &fib[39]);
    check((r - golden).abs() < 1e-6, format!("Fibonacci ratio at index 40 is {r:.12}, golden ratio {golden:.12}"));

    // Arithmetic matching range 2n - 1.
    let arith = (2..=200).step_by(2).all(|n| {
        let all = schemes::matching_arithmetic_for_order(n).unwrap().all_labels();
        all.iter().max().unwrap() - all.iter().min().unwrap() == Label::from(2 * n - 1)
    });
    check(arith, "arithmetic matching range equals 2n - 1 for even n <= 200".into());

    check(
        strategy.range_violations.is_empty(),
        format!(
            "strategy range >= 2n - (max degree - min degree) - 2 on {} specs ({} below)",
            strategy.checked,
            strategy.range_violations.len()
        ),
    );

    let mut out = Outcome::new(pass, "growth claims");
    for l in lines.into_iter().chain(info) {
        out = out.note(l);
    }
    out
}

fn all_graphs_without_isolated_vertices() -> Vec<(String, ConcreteGraph)> {
    let mut out = Vec::new();
    for n in 2..=4 {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        for mask in 1u32..(1 << pairs.len()) {
            let edges: Vec<(usize, usize)> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            let g = ConcreteGraph::from_edges(n, edges.iter().copied());
            if g.min_degree() >= 1 {
                out.push((format!("n={n} edges={edges:?}"), g));
            }
        }
    }
    out
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut disagreements = 0;
    let trials = 1000;
    for _ in 0..trials {
        let size = rng.gen_range(2..=12);
        let mut set = BTreeSet::new();
        while set.len() < size {
            set.insert(rng.gen_range(1u64..=100));
        }
        let mut values: Vec<u64> = set.into_iter().collect();
        for i in (1..values.len()).rev() {
            values.swap(i, rng.gen_range(0..=i));
        }
        let n = rng.gen_range(1..=values.len());
        let members: HashSet<u64> = values.iter().copied().collect();
        let mut edges = BTreeSet::new();
        if rng.gen_bool(0.5) {
            for i in 0..n {
                for j in i + 1..n {
                    if members.contains(&(values[i] + values[j])) {
                        edges.insert((i, j));
                    }
                }
            }
        }
        if n >= 2 {
            for _ in 0..rng.gen_range(0..3) {
                let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
                if u != v {
                    edges.insert((u.min(v), u.max(v)));
                }
            }
        }
        let expected = (0..values.len())
            .all(|i| (i + 1..values.len()).all(|j| members.contains(&(values[i] + values[j])) == (j < n && edges.contains(&(i, j)))));
        let labels = |s: &[u64]| s.iter().map(|&x| label(x)).collect::<Vec<_>>();
        let l = Labelling::new(labels(&values[..n]), labels(&values[n..]));
        let got = verify::verify(&l, &ConcreteGraph::from_edges(n, edges.iter().copied())).is_valid();
        disagreements += usize::from(got != expected);
    }

    let mut mismatches = Vec::new();
    let targets = all_graphs_without_isolated_vertices();
    let mut runs = 0;
    for (name, g) in &targets {
        for max_label in [5, 8, 12, 16, 20] {
            let cfg = SearchConfig::new(max_label, 5 - g.order());
            let pruned = search::min_isolates_bounded(g, &cfg).unwrap();
            let plain = search::min_isolates_bounded(g, &cfg.clone().unpruned()).unwrap();
            runs += 1;
            if pruned.outcome != plain.outcome || pruned.refuted != plain.refuted {
                mismatches.push(format!("{name} B={max_label}"));
            }
        }
    }

    let pass = disagreements == 0 && mismatches.is_empty();
    let mut out = Outcome::new(
        pass,
        format!(
            "oracle equivalence: verifier disagrees on {disagreements}/{trials} random sets; pruned search differs on {}/{runs} runs",
            mismatches.len()
        ),
    );
    for m in mismatches.iter().take(10) {
        out = out.note(m.clone());
    }
    out
}

fn range_probe() -> Outcome {
    let start = Instant::now();
    let g = graph("2P2");
    let r = search::min_range_bounded(&g, &SearchConfig::new(30, 2), None).unwrap();
    let summary = match &r.outcome {
        SearchOutcome::Found { isolates, labels, .. } => {
            let range = r.range().unwrap();
            let verdict = if range == 6 { "range 6 = 2n - 2 is attained" } else { "range 6 is not attained" };
            format!("2P2 smallest range {range} with {isolates} isolates, labels {labels:?}: {verdict}")
        }
        SearchOutcome::RefutedUpTo { .. } => "2P2: no labelling with labels up to 30".into(),
    };
    Outcome::new(true, format!("{summary} ({})", secs(start.elapsed())))
}

fn main() {
    // Harness flags such as --nocapture or --test-threads are accepted and ignored.
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let mut pool = C4Pool::default();
    let fixtures = golden_fixtures(&mut pool);
    let strategy = strategy_optimality(&mut pool);
    let lower_bounds = bounded_lower_bounds(&mut pool);
    let structure = c4_structure(&pool);
    let growth = growth_claims(&strategy);
    let results = [
        ("1", true, fixtures),
        ("2", true, strategy.outcome),
        ("3", true, lower_bounds),
        ("4", true, structure),
        ("5", true, growth),
        ("6", true, oracle_equivalence()),
        ("7", false, range_probe()),
    ];
    let mut failed = 0;
    for (id, gating, r) in &results {
        let status = match (gating, r.pass) {
            (false, _) => "INFO",
            (true, true) => "PASS",
            (true, false) => "FAIL",
        };
        println!("{status} [{id}] {}", r.summary);
        for d in &r.details {
            println!("       {d}");
        }
        failed += usize::from(*gating && !r.pass);
    }
    let gating = results.iter().filter(|(_, g, _)| *g).count();
    println!("acceptance: {} of {gating} gating criteria pass", gating - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
