//! Bounded exhaustive search for sum labellings of small graphs.
//!
//! Label sets are enumerated in ascending order. Adding a label `x` creates
//! exactly the edges `{a, b}` with `a + b = x` among labels already chosen,
//! so degrees and the edge count only grow along a branch. That makes the
//! pruning rules (degree profile and edge count never exceed the target)
//! sound. Work is split into stripes by the smallest label; stripes are
//! independent and merged by taking the first stripe, in ascending order,
//! that finds a witness.

use alloc::vec;
use alloc::vec::Vec;
use core::time::Duration;

use num_integer::Integer;

use crate::graph::{Component, ConcreteGraph};
use crate::verify::Labelling;
use crate::Label;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest label considered.
    pub max_label: u32,
    /// Largest isolate count tried (for range search: the isolate budget).
    pub max_isolates: usize,
    /// Total extension steps allowed before giving up.
    pub node_limit: Option<u64>,
    /// Disables every pruning rule; leaf checks are unchanged.
    pub prune: bool,
    /// Only accept label sets with gcd 1.
    pub gcd_one: bool,
}

impl SearchConfig {
    pub fn new(max_label: u32, max_isolates: usize) -> Self {
        SearchConfig { max_label, max_isolates, node_limit: None, prune: true, gcd_one: true }
    }

    pub fn with_node_limit(mut self, limit: u64) -> Self {
        self.node_limit = Some(limit);
        self
    }

    pub fn unpruned(mut self) -> Self {
        self.prune = false;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    /// A valid labelling with `isolates` isolates; `labels` is the sorted
    /// label set and `witness` assigns those labels to the target vertices.
    Found { isolates: usize, labels: Vec<u32>, witness: Labelling },
    /// No valid labelling with every label at most `bound` exists for any of
    /// the listed isolate counts. Bounded evidence, not a proof.
    RefutedUpTo { bound: u32, isolates: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub outcome: SearchOutcome,
    /// Isolate counts fully refuted before the outcome was reached.
    pub refuted: Vec<usize>,
    pub nodes: u64,
    /// Filled in by callers that have a clock.
    pub elapsed: Option<Duration>,
}

impl SearchResult {
    pub fn found_isolates(&self) -> Option<usize> {
        match &self.outcome {
            SearchOutcome::Found { isolates, .. } => Some(*isolates),
            SearchOutcome::RefutedUpTo { .. } => None,
        }
    }

    pub fn range(&self) -> Option<u32> {
        match &self.outcome {
            SearchOutcome::Found { labels, .. } => Some(labels[labels.len() - 1] - labels[0]),
            SearchOutcome::RefutedUpTo { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("node limit exceeded after {nodes} nodes")]
    BudgetExceeded { nodes: u64 },
    #[error("search cancelled after {nodes} nodes")]
    Cancelled { nodes: u64 },
    #[error("invalid search configuration: {0}")]
    InvalidConfig(&'static str),
}

/// The graph being searched for, with the invariants used for pruning.
#[derive(Debug, Clone)]
pub struct Target {
    graph: ConcreteGraph,
    adjacency: Vec<Vec<usize>>,
    degrees: Vec<usize>,
    max_degree: usize,
    signature: Option<(Vec<Component>, usize)>,
}

impl Target {
    pub fn new(graph: &ConcreteGraph) -> Self {
        Target {
            adjacency: graph.adjacency(),
            degrees: graph.degrees(),
            max_degree: graph.max_degree(),
            signature: graph.component_signature(),
            graph: graph.clone(),
        }
    }

    pub fn graph(&self) -> &ConcreteGraph {
        &self.graph
    }

    fn order(&self) -> usize {
        self.graph.order()
    }

    /// `counts[d]` = number of vertices of degree `d` once `isolates` are added.
    fn degree_counts(&self, isolates: usize) -> Vec<u32> {
        let mut counts = vec![0u32; self.max_degree + 1];
        for &d in &self.degrees {
            counts[d] += 1;
        }
        counts[0] += isolates as u32;
        counts
    }
}

/// Why a stripe stopped before exhausting its subtree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StripeStop {
    NodeLimit,
    Cancelled,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StripeReport {
    pub smallest: u32,
    pub found: Option<(Vec<u32>, Labelling)>,
    pub nodes: u64,
    pub stopped: Option<StripeStop>,
}

/// One isolate count of one search: label sets of a fixed size, optionally
/// with a fixed distance `span` between the smallest and largest label.
#[derive(Debug, Clone)]
pub struct StripeJob<'a> {
    pub target: &'a Target,
    pub config: &'a SearchConfig,
    pub isolates: usize,
    pub span: Option<u32>,
}

impl StripeJob<'_> {
    fn size(&self) -> usize {
        self.target.order() + self.isolates
    }

    /// Stripe starts in merge order.
    pub fn stripes(&self) -> core::ops::RangeInclusive<u32> {
        let top = match self.span {
            Some(span) => self.config.max_label.saturating_sub(span),
            None => self.config.max_label,
        };
        1..=top
    }

    /// Searches all label sets whose smallest label is `smallest`, stopping at
    /// the first valid one in lexicographic order.
    pub fn run(&self, smallest: u32, node_limit: u64, cancel: &dyn Fn() -> bool) -> StripeReport {
        let mut dfs = Dfs::new(self, smallest, node_limit, cancel);
        let found = if dfs.push(smallest) { dfs.extend() } else { Ok(None) };
        let (found, stopped) = match found {
            Ok(found) => (found, None),
            Err(stop) => (None, Some(stop)),
        };
        StripeReport { smallest, found, nodes: dfs.nodes, stopped }
    }
}

struct Dfs<'j, 'a> {
    job: &'j StripeJob<'a>,
    size: usize,
    target_counts: Vec<u32>,
    target_at_least: Vec<u32>,
    edges_target: usize,
    max_label: u32,
    largest: Option<u32>,
    set: Vec<u32>,
    position: Vec<u32>,
    degree: Vec<u32>,
    at_least: Vec<u32>,
    edges: Vec<(usize, usize)>,
    level_edges: Vec<usize>,
    nodes: u64,
    node_limit: u64,
    cancel: &'j dyn Fn() -> bool,
}

impl<'j, 'a> Dfs<'j, 'a> {
    fn new(job: &'j StripeJob<'a>, smallest: u32, node_limit: u64, cancel: &'j dyn Fn() -> bool) -> Self {
        let size = job.size();
        let target_counts = job.target.degree_counts(job.isolates);
        let mut target_at_least = vec![0u32; target_counts.len() + 1];
        for d in (0..target_counts.len()).rev() {
            target_at_least[d] = target_at_least[d + 1] + target_counts[d];
        }
        let largest = job.span.map(|s| smallest + s);
        let max_label = largest.unwrap_or(job.config.max_label);
        Dfs {
            job,
            size,
            target_counts,
            target_at_least,
            edges_target: job.target.graph.edge_count(),
            max_label,
            largest,
            set: Vec::with_capacity(size),
            position: vec![0; max_label as usize + 1],
            degree: Vec::with_capacity(size),
            at_least: vec![0; size + 2],
            edges: Vec::new(),
            level_edges: Vec::with_capacity(size),
            nodes: 0,
            node_limit,
            cancel,
        }
    }

    /// Adds `x` and its induced edges; returns false when pruned (the label
    /// stays pushed and must be popped by the caller).
    fn push(&mut self, x: u32) -> bool {
        self.nodes += 1;
        let p = self.set.len();
        self.set.push(x);
        self.position[x as usize] = p as u32 + 1;
        self.degree.push(0);
        self.at_least[0] += 1;
        self.level_edges.push(self.edges.len());
        for q in 0..p {
            let a = self.set[q];
            if 2 * a >= x {
                break;
            }
            let r = self.position[(x - a) as usize];
            if r != 0 {
                let r = (r - 1) as usize;
                self.edges.push((q, r));
                for v in [q, r] {
                    self.degree[v] += 1;
                    self.at_least[self.degree[v] as usize] += 1;
                }
            }
        }
        !self.job.config.prune || self.feasible()
    }

    fn pop(&mut self) {
        let start = self.level_edges.pop().expect("pop after push");
        while self.edges.len() > start {
            let (q, r) = self.edges.pop().expect("edge above level start");
            for v in [q, r] {
                self.at_least[self.degree[v] as usize] -= 1;
                self.degree[v] -= 1;
            }
        }
        let x = self.set.pop().expect("pop after push");
        self.degree.pop();
        self.at_least[0] -= 1;
        self.position[x as usize] = 0;
    }

    fn feasible(&self) -> bool {
        if self.edges.len() > self.edges_target {
            return false;
        }
        for d in 1..self.at_least.len() {
            let allowed = self.target_at_least.get(d).copied().unwrap_or(0);
            if self.at_least[d] > allowed {
                return false;
            }
            if self.at_least[d] == 0 {
                break;
            }
        }
        // Every later label creates at most floor(s / 2) edges, s being the
        // set size when it is added.
        let s = self.set.len();
        let reachable: usize = (s..self.size).map(|k| k / 2).sum();
        self.edges.len() + reachable >= self.edges_target
    }

    fn extend(&mut self) -> Result<Option<(Vec<u32>, Labelling)>, StripeStop> {
        if self.nodes > self.node_limit {
            return Err(StripeStop::NodeLimit);
        }
        if self.nodes & 0x3fff == 0 && (self.cancel)() {
            return Err(StripeStop::Cancelled);
        }
        let remaining = self.size - self.set.len();
        if remaining == 0 {
            return Ok(self.leaf());
        }
        let last = *self.set.last().expect("stripe label pushed");
        let (lo, hi) = match self.largest {
            Some(l) if remaining == 1 => (l, l),
            Some(l) => (last + 1, l.saturating_sub(remaining as u32 - 1)),
            None => (last + 1, self.max_label.saturating_sub(remaining as u32 - 1)),
        };
        for x in lo..=hi {
            if x <= last {
                continue;
            }
            let ok = self.push(x);
            let result = if ok { self.extend() } else { Ok(None) };
            self.pop();
            match result {
                Ok(None) => {}
                other => return other,
            }
        }
        Ok(None)
    }

    fn leaf(&self) -> Option<(Vec<u32>, Labelling)> {
        if self.edges.len() != self.edges_target {
            return None;
        }
        let mut counts = vec![0u32; self.target_counts.len()];
        for &d in &self.degree {
            *counts.get_mut(d as usize)? += 1;
        }
        if counts != self.target_counts {
            return None;
        }
        if self.job.config.gcd_one && self.set.iter().fold(0u32, |g, &x| g.gcd(&x)) != 1 {
            return None;
        }
        let induced = ConcreteGraph::from_edges(self.size, self.edges.iter().copied());
        if let Some((components, isolated)) = &self.job.target.signature {
            let (got, got_isolated) = induced.component_signature()?;
            if &got != components || got_isolated != isolated + self.job.isolates {
                return None;
            }
        }
        let assignment = embed(self.job.target, &induced)?;
        let used: Vec<bool> = {
            let mut u = vec![false; self.size];
            assignment.iter().for_each(|&p| u[p] = true);
            u
        };
        let witness = Labelling::new(
            assignment.iter().map(|&p| Label::from(self.set[p])).collect(),
            (0..self.size).filter(|&p| !used[p]).map(|p| Label::from(self.set[p])).collect(),
        );
        Some((self.set.clone(), witness))
    }
}

/// Maps target vertices injectively onto vertices of `host` so that target
/// edges and non-edges are preserved. With equal edge counts this is an
/// isomorphism onto the non-isolated part of `host`.
fn embed(target: &Target, host: &ConcreteGraph) -> Option<Vec<usize>> {
    let n = target.order();
    let host_adj = host.adjacency();
    let host_deg: Vec<usize> = host_adj.iter().map(Vec::len).collect();
    // Visit target vertices in BFS order so each one after the first of its
    // component has a mapped neighbour.
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        order.push(s);
        let mut i = order.len() - 1;
        while i < order.len() {
            for &w in &target.adjacency[order[i]] {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
            i += 1;
        }
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; host.order()];
    fn go(
        k: usize,
        order: &[usize],
        target: &Target,
        host: &ConcreteGraph,
        host_deg: &[usize],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let Some(&v) = order.get(k) else { return true };
        for p in 0..host.order() {
            if used[p] || host_deg[p] != target.degrees[v] {
                continue;
            }
            let consistent = order[..k].iter().all(|&u| target.graph.has_edge(u, v) == host.has_edge(map[u], p));
            if !consistent {
                continue;
            }
            map[v] = p;
            used[p] = true;
            if go(k + 1, order, target, host, host_deg, map, used) {
                return true;
            }
            used[p] = false;
        }
        map[v] = usize::MAX;
        false
    }
    go(0, &order, target, host, &host_deg, &mut map, &mut used).then_some(map)
}

/// Merges stripe reports produced in stripe order. Reports past the first
/// one with a witness are ignored, so the result does not depend on how many
/// stripes a parallel runner evaluated.
fn merge(reports: Vec<StripeReport>, node_limit: u64, spent: &mut u64) -> Result<Option<(Vec<u32>, Labelling)>, SearchError> {
    for r in reports {
        *spent += r.nodes;
        match r.stopped {
            Some(StripeStop::Cancelled) => return Err(SearchError::Cancelled { nodes: *spent }),
            Some(StripeStop::NodeLimit) => return Err(SearchError::BudgetExceeded { nodes: *spent }),
            None => {}
        }
        if *spent > node_limit {
            return Err(SearchError::BudgetExceeded { nodes: *spent });
        }
        if r.found.is_some() {
            return Ok(r.found);
        }
    }
    Ok(None)
}

/// Runs the stripes of a job. Implementations must return reports in stripe
/// order and may stop after the first report with a witness; `limit` is the
/// node budget still available to the job.
pub trait StripeRunner {
    fn run(&self, job: &StripeJob<'_>, limit: u64) -> Vec<StripeReport>;
}

/// Evaluates stripes one after another and stops at the first witness.
pub struct Sequential<'c> {
    pub cancel: &'c dyn Fn() -> bool,
}

impl Default for Sequential<'_> {
    fn default() -> Self {
        Sequential { cancel: &|| false }
    }
}

impl StripeRunner for Sequential<'_> {
    fn run(&self, job: &StripeJob<'_>, limit: u64) -> Vec<StripeReport> {
        let mut out = Vec::new();
        let mut left = limit;
        for a in job.stripes() {
            let report = job.run(a, left, self.cancel);
            left = left.saturating_sub(report.nodes);
            let stop = report.found.is_some() || report.stopped.is_some();
            out.push(report);
            if stop {
                break;
            }
        }
        out
    }
}

fn validate(graph: &ConcreteGraph, config: &SearchConfig) -> Result<(), SearchError> {
    if config.max_label == 0 {
        return Err(SearchError::InvalidConfig("max label must be positive"));
    }
    if graph.order() == 0 {
        return Err(SearchError::InvalidConfig("graph has no vertices"));
    }
    if config.max_label as usize > (u32::MAX / 4) as usize {
        return Err(SearchError::InvalidConfig("max label too large"));
    }
    Ok(())
}

/// The smallest isolate count in `min_degree(graph)..=max_isolates` that
/// admits a labelling within `[1, max_label]`.
pub fn min_isolates_bounded(graph: &ConcreteGraph, config: &SearchConfig) -> Result<SearchResult, SearchError> {
    min_isolates_with(graph, config, &Sequential::default())
}

pub fn min_isolates_with(graph: &ConcreteGraph, config: &SearchConfig, runner: &dyn StripeRunner) -> Result<SearchResult, SearchError> {
    validate(graph, config)?;
    let target = Target::new(graph);
    let limit = config.node_limit.unwrap_or(u64::MAX);
    let mut nodes = 0u64;
    let mut refuted = Vec::new();
    for isolates in graph.min_degree()..=config.max_isolates {
        let job = StripeJob { target: &target, config, isolates, span: None };
        let reports = runner.run(&job, limit - nodes);
        if let Some((labels, witness)) = merge(reports, limit, &mut nodes)? {
            let outcome = SearchOutcome::Found { isolates, labels, witness };
            return Ok(SearchResult { outcome, refuted, nodes, elapsed: None });
        }
        refuted.push(isolates);
    }
    let outcome = SearchOutcome::RefutedUpTo { bound: config.max_label, isolates: refuted.clone() };
    Ok(SearchResult { outcome, refuted, nodes, elapsed: None })
}

/// Smallest achievable `max - min` over valid labellings with at most
/// `config.max_isolates` isolates and labels in `[1, max_label]`. With
/// `floor`, ranges below it are not tried.
pub fn min_range_bounded(graph: &ConcreteGraph, config: &SearchConfig, floor: Option<u32>) -> Result<SearchResult, SearchError> {
    min_range_with(graph, config, floor, &Sequential::default())
}

pub fn min_range_with(
    graph: &ConcreteGraph,
    config: &SearchConfig,
    floor: Option<u32>,
    runner: &dyn StripeRunner,
) -> Result<SearchResult, SearchError> {
    let lowest = graph.min_degree().max(1);
    range_search(graph, config, floor, (lowest..=config.max_isolates).collect(), runner)
}

/// Smallest range over labellings with exactly `isolates` isolates, within
/// the same bounds as [`min_range_with`]. With `isolates` set to the sum
/// number this restricts the range to optimal labellings.
pub fn min_range_fixed_isolates_with(
    graph: &ConcreteGraph,
    config: &SearchConfig,
    isolates: usize,
    floor: Option<u32>,
    runner: &dyn StripeRunner,
) -> Result<SearchResult, SearchError> {
    if isolates > config.max_isolates {
        return Err(SearchError::InvalidConfig("isolate count exceeds the isolate budget"));
    }
    range_search(graph, config, floor, vec![isolates], runner)
}

fn range_search(
    graph: &ConcreteGraph,
    config: &SearchConfig,
    floor: Option<u32>,
    isolate_counts: Vec<usize>,
    runner: &dyn StripeRunner,
) -> Result<SearchResult, SearchError> {
    validate(graph, config)?;
    let target = Target::new(graph);
    let range_config = SearchConfig { gcd_one: false, ..config.clone() };
    let limit = config.node_limit.unwrap_or(u64::MAX);
    let mut nodes = 0u64;
    for span in floor.unwrap_or(1).max(1)..config.max_label {
        for &isolates in &isolate_counts {
            let job = StripeJob { target: &target, config: &range_config, isolates, span: Some(span) };
            let reports = runner.run(&job, limit - nodes);
            if let Some((labels, witness)) = merge(reports, limit, &mut nodes)? {
                let outcome = SearchOutcome::Found { isolates, labels, witness };
                return Ok(SearchResult { outcome, refuted: Vec::new(), nodes, elapsed: None });
            }
        }
    }
    let outcome = SearchOutcome::RefutedUpTo { bound: config.max_label, isolates: isolate_counts };
    Ok(SearchResult { outcome, refuted: Vec::new(), nodes, elapsed: None })
}
