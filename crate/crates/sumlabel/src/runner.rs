//! Parallel, time-limited execution of the bounded search.

use std::sync::atomic::{AtomicU32, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use sumlabel_core::search::{self, SearchConfig, SearchError, SearchResult, Sequential, StripeJob, StripeReport, StripeRunner, StripeStop};
use sumlabel_core::ConcreteGraph;

/// Runs stripes on the rayon pool. Stripes past the smallest stripe that
/// has already found a witness are abandoned; the merge ignores them, so
/// results match the sequential runner exactly.
pub struct Parallel {
    pub deadline: Option<Instant>,
}

impl StripeRunner for Parallel {
    fn run(&self, job: &StripeJob<'_>, limit: u64) -> Vec<StripeReport> {
        let winner = AtomicU32::new(u32::MAX);
        let deadline = self.deadline;
        job.stripes()
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|a| {
                if a > winner.load(Ordering::Relaxed) {
                    return StripeReport { smallest: a, found: None, nodes: 0, stopped: Some(StripeStop::Cancelled) };
                }
                let cancel = || a > winner.load(Ordering::Relaxed) || deadline.is_some_and(|d| Instant::now() >= d);
                let report = job.run(a, limit, &cancel);
                if report.found.is_some() {
                    winner.fetch_min(a, Ordering::Relaxed);
                }
                report
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    pub time_limit: Option<Duration>,
    pub parallel: bool,
}

fn timed(options: RunOptions, f: impl FnOnce(&dyn StripeRunner) -> Result<SearchResult, SearchError>) -> Result<SearchResult, SearchError> {
    let start = Instant::now();
    let deadline = options.time_limit.map(|t| start + t);
    let result = if options.parallel {
        f(&Parallel { deadline })
    } else {
        let cancel = move || deadline.is_some_and(|d| Instant::now() >= d);
        f(&Sequential { cancel: &cancel })
    };
    result.map(|mut r| {
        r.elapsed = Some(start.elapsed());
        r
    })
}

pub fn min_isolates(graph: &ConcreteGraph, config: &SearchConfig, options: RunOptions) -> Result<SearchResult, SearchError> {
    timed(options, |runner| search::min_isolates_with(graph, config, runner))
}

pub fn min_range(
    graph: &ConcreteGraph,
    config: &SearchConfig,
    floor: Option<u32>,
    options: RunOptions,
) -> Result<SearchResult, SearchError> {
    timed(options, |runner| search::min_range_with(graph, config, floor, runner))
}

pub fn min_range_fixed_isolates(
    graph: &ConcreteGraph,
    config: &SearchConfig,
    isolates: usize,
    floor: Option<u32>,
    options: RunOptions,
) -> Result<SearchResult, SearchError> {
    timed(options, |runner| search::min_range_fixed_isolates_with(graph, config, isolates, floor, runner))
}
