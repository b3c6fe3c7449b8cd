use std::collections::HashSet;

use sumlabel_core::graph::{ConcreteGraph, GraphSpec};
use sumlabel_core::search::{min_isolates_bounded, min_range_bounded, SearchConfig, SearchOutcome};
use sumlabel_core::verify;

/// All small targets: every max-degree-two graph on at most four vertices
/// plus a few denser graphs.
fn small_targets() -> Vec<(String, ConcreteGraph)> {
    let mut out: Vec<(String, ConcreteGraph)> =
        ["P2", "P3", "C3", "P4", "C4", "2P2"].iter().map(|s| (s.to_string(), s.parse::<GraphSpec>().unwrap().realize())).collect();
    out.push(("star".into(), ConcreteGraph::from_edges(4, [(0, 1), (0, 2), (0, 3)])));
    out.push(("paw".into(), ConcreteGraph::from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)])));
    out.push(("K4".into(), ConcreteGraph::complete(4)));
    out
}

fn combinations(max: u32, size: usize, f: &mut dyn FnMut(&[u32]) -> bool) {
    fn go(start: u32, max: u32, size: usize, cur: &mut Vec<u32>, f: &mut dyn FnMut(&[u32]) -> bool) -> bool {
        if cur.len() == size {
            return f(cur);
        }
        for x in start..=max {
            cur.push(x);
            let stop = go(x + 1, max, size, cur, f);
            cur.pop();
            if stop {
                return true;
            }
        }
        false
    }
    go(1, max, size, &mut Vec::new(), f);
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Brute-force reference: the lexicographically first label set of the
/// given size whose sum graph is the target plus isolates, found by
/// checking every pair and trying every vertex assignment.
fn brute_first(target: &ConcreteGraph, isolates: usize, max: u32, gcd_one: bool) -> Option<Vec<u32>> {
    let n = target.order();
    let mut found = None;
    combinations(max, n + isolates, &mut |set| {
        if gcd_one && set.iter().fold(0, |g, &x| gcd(g, x)) != 1 {
            return false;
        }
        let members: HashSet<u32> = set.iter().copied().collect();
        let adjacent = |a: u32, b: u32| members.contains(&(a + b));
        // Try every injective assignment of target vertices to labels.
        let mut perm: Vec<usize> = (0..set.len()).collect();
        let ok = permutations(&mut perm, 0, &mut |p| {
            let used: HashSet<usize> = p[..n].iter().copied().collect();
            for u in 0..set.len() {
                for v in u + 1..set.len() {
                    let want = match (p[..n].iter().position(|&x| x == u), p[..n].iter().position(|&x| x == v)) {
                        (Some(a), Some(b)) => target.has_edge(a, b),
                        _ => false,
                    };
                    if adjacent(set[u], set[v]) != want {
                        return false;
                    }
                }
            }
            used.len() == n
        });
        if ok {
            found = Some(set.to_vec());
        }
        ok
    });
    found
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if k == p.len() {
        return f(p);
    }
    for i in k..p.len() {
        p.swap(k, i);
        if permutations(p, k + 1, f) {
            p.swap(k, i);
            return true;
        }
        p.swap(k, i);
    }
    false
}

#[test]
fn pruning_never_changes_outcomes() {
    for (name, g) in small_targets() {
        for max in [6, 10, 15, 20] {
            let cfg = SearchConfig::new(max, 5 - g.order());
            let pruned = min_isolates_bounded(&g, &cfg).unwrap();
            let plain = min_isolates_bounded(&g, &cfg.clone().unpruned()).unwrap();
            assert_eq!(pruned.outcome, plain.outcome, "{name} B={max}");
            assert_eq!(pruned.refuted, plain.refuted, "{name} B={max}");
            assert!(pruned.nodes <= plain.nodes);
        }
    }
}

#[test]
fn search_matches_brute_force() {
    for (name, g) in small_targets() {
        for max in [8, 14, 20] {
            let cfg = SearchConfig::new(max, 5 - g.order());
            let result = min_isolates_bounded(&g, &cfg).unwrap();
            let expected = (g.min_degree()..=cfg.max_isolates).find_map(|i| brute_first(&g, i, max, true).map(|s| (i, s)));
            match (&result.outcome, expected) {
                (SearchOutcome::Found { isolates, labels, witness }, Some((i, s))) => {
                    assert_eq!((*isolates, labels.clone()), (i, s), "{name} B={max}");
                    assert!(verify::verify(witness, &g).is_valid());
                }
                (SearchOutcome::RefutedUpTo { .. }, None) => {}
                (got, want) => panic!("{name} B={max}: {got:?} vs {want:?}"),
            }
        }
    }
}

#[test]
fn gcd_normalization_is_loss_free() {
    for (name, g) in small_targets() {
        for max in [8, 12, 20] {
            let cfg = SearchConfig::new(max, 5 - g.order());
            let normalized = min_isolates_bounded(&g, &cfg).unwrap().found_isolates();
            let all = min_isolates_bounded(&g, &SearchConfig { gcd_one: false, ..cfg }).unwrap().found_isolates();
            assert_eq!(normalized, all, "{name} B={max}");
        }
    }
}

#[test]
fn witnesses_survive_scaling() {
    for (_, g) in small_targets() {
        let r = min_isolates_bounded(&g, &SearchConfig::new(20, 5 - g.order())).unwrap();
        if let SearchOutcome::Found { witness, .. } = r.outcome {
            for c in 2u32..=5 {
                assert!(verify::verify(&witness.scaled(&c.into()), &g).is_valid());
            }
        }
    }
}

#[test]
fn range_search_matches_brute_force() {
    // Smallest range of any labelling of P3 with up to two isolates, by brute force.
    let g: ConcreteGraph = "P3".parse::<GraphSpec>().unwrap().realize();
    let mut best: Option<u32> = None;
    for i in 1..=2 {
        combinations(15, 3 + i, &mut |set| {
            if brute_first_fixed(&g, set) {
                let r = set[set.len() - 1] - set[0];
                best = Some(best.map_or(r, |b| b.min(r)));
            }
            false
        });
    }
    let r = min_range_bounded(&g, &SearchConfig::new(15, 2), None).unwrap();
    assert_eq!(r.range(), best);
}

fn brute_first_fixed(g: &ConcreteGraph, set: &[u32]) -> bool {
    let members: HashSet<u32> = set.iter().copied().collect();
    let mut edges = Vec::new();
    for u in 0..set.len() {
        for v in u + 1..set.len() {
            if members.contains(&(set[u] + set[v])) {
                edges.push((u, v));
            }
        }
    }
    let induced = ConcreteGraph::from_edges(set.len(), edges);
    let (comps, isolated) = induced.component_signature().unwrap_or_default();
    let (want, _) = g.component_signature().unwrap();
    comps == want && isolated == set.len() - g.order()
}
