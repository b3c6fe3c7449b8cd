//! Optimal labelling of any graph of maximum degree two.
//!
//! Components are processed cycles first (non-4-cycles by descending order,
//! then 4-cycles), then paths by descending order. Each cycle is seeded by the
//! two pending isolates of the previous one; 4-cycles are grafted on by
//! scaling everything by 4 around a non-trivial arithmetic progression; paths
//! consume the pending isolates as Fibonacci seeds. The result uses
//! `min_degree` isolates except for `C4` (three) and `C4 + P2` (two).

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{Component, GraphSpec};
use crate::schemes::{self, NtapWitness, SchemeError, SchemeLabelling};
use crate::verify::{self, Certificate};
use crate::{label, Label};

/// One construction step, recorded for auditing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    FibonacciPath { order: usize, seeds: (Label, Label) },
    FibonacciCycle { order: usize, seeds: (Label, Label) },
    FirstCycle { order: usize },
    C4LinearExponential { count: usize },
    TwoC4Base,
    C5C4Special { a: Label, b: Label, c: Label },
    C4PathSpecial { order: usize },
    AppendCycle { order: usize, seeds: (Label, Label) },
    AppendC4 { factor: Label, ntap: NtapWitness, cycle: [Label; 4] },
    AppendPath { order: usize, seeds: (Label, Label) },
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::FibonacciPath { order, seeds: (a, b) } => write!(f, "fibonacci_path P{order} seeds ({a}, {b})"),
            Step::FibonacciCycle { order, seeds: (a, b) } => write!(f, "fibonacci_cycle C{order} seeds ({a}, {b})"),
            Step::FirstCycle { order } => write!(f, "first_cycle_ntap C{order}"),
            Step::C4LinearExponential { count } => write!(f, "c4_linear_exponential {count}C4"),
            Step::TwoC4Base => f.write_str("two_c4_base 2C4"),
            Step::C5C4Special { a, b, c } => write!(f, "c5_c4_special C5+C4 a={a} b={b} c={c}"),
            Step::C4PathSpecial { order } => write!(f, "c4_path_special C4+P{order}"),
            Step::AppendCycle { order, seeds: (a, b) } => write!(f, "append_cycle C{order} seeds ({a}, {b})"),
            Step::AppendC4 { factor, ntap, cycle } => write!(
                f,
                "append_c4 scale x{factor} around {}-{}-{} -> C4 ({}, {}, {}, {})",
                ntap.terms()[0],
                ntap.terms()[1],
                ntap.terms()[2],
                cycle[0],
                cycle[1],
                cycle[2],
                cycle[3]
            ),
            Step::AppendPath { order, seeds: (a, b) } => write!(f, "append_path P{order} seeds ({a}, {b})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StrategyError {
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error("a 4-cycle needs an arithmetic progression with an absent offset")]
    MissingNtap,
    #[error("4-cycles are appended with append_c4")]
    FourCycle,
    #[error("expected {expected} pending isolates, found {found}")]
    PendingIsolates { expected: &'static str, found: usize },
    #[error("pending isolates are not Fibonacci-consistent")]
    InconsistentTriple,
    #[error("isolate seed sum equals the vertex pair ({}, {})", pair.0, pair.1)]
    PathSeedCollision { pair: (Label, Label) },
    #[error("step `{step}` produced an invalid labelling ({} violations)", certificate.violations.len())]
    Integrity { step: Box<Step>, certificate: Certificate },
    #[error("arithmetic progression {}-{}-{} lost after `{step}`", ntap.terms()[0], ntap.terms()[1], ntap.terms()[2])]
    NtapLost { step: Box<Step>, ntap: NtapWitness },
}

/// A partial labelling: placed components plus the pending isolates that
/// seed the next component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabellingState {
    /// Components placed so far; `placed.isolates` are the pending isolates.
    pub placed: SchemeLabelling,
    pub ntap: Option<NtapWitness>,
    pub trace: Vec<Step>,
}

impl LabellingState {
    /// Starts from a verified base labelling.
    pub fn start(base: SchemeLabelling, ntap: Option<NtapWitness>, step: Step) -> Result<Self, StrategyError> {
        let state = LabellingState { placed: base, ntap, trace: Vec::new() };
        state.checked(step)
    }

    pub fn pending(&self) -> &[Label] {
        &self.placed.isolates
    }

    fn checked(mut self, step: Step) -> Result<Self, StrategyError> {
        let certificate = self.placed.check();
        if !certificate.is_valid() {
            return Err(StrategyError::Integrity { step: Box::new(step), certificate });
        }
        if let Some(ntap) = &self.ntap {
            if !ntap.holds_in(&self.placed.all_labels()) {
                return Err(StrategyError::NtapLost { step: Box::new(step), ntap: ntap.clone() });
            }
        }
        self.trace.push(step);
        Ok(self)
    }

    fn sorted_pending(&self) -> Vec<Label> {
        let mut p = self.placed.isolates.clone();
        p.sort_unstable();
        p
    }

    /// Labels a further cycle by the Fibonacci recurrence seeded with the
    /// pending isolates; a pending triple `(i1, i2, i1+i2)` is consumed whole.
    pub fn append_cycle(mut self, n: usize) -> Result<Self, StrategyError> {
        if n == 4 {
            return Err(StrategyError::FourCycle);
        }
        let pending = self.sorted_pending();
        match pending.len() {
            2 => {}
            3 if pending[2] == &pending[0] + &pending[1] => {}
            3 => return Err(StrategyError::InconsistentTriple),
            found => return Err(StrategyError::PendingIsolates { expected: "2 or 3", found }),
        }
        let cycle = schemes::fibonacci_cycle(&pending[0], &pending[1], n)?;
        let seeds = (pending[0].clone(), pending[1].clone());
        self.placed.components.extend(cycle.components);
        self.placed.isolates = cycle.isolates;
        self.checked(Step::AppendCycle { order: n, seeds })
    }

    /// Scales every label by 4 and inserts a 4-cycle
    /// `(2x+1, 2x-1, 2x+4d+1, 2x+4d-1)` built from the progression `(x, d)`.
    pub fn append_c4(mut self) -> Result<Self, StrategyError> {
        let ntap = self.ntap.clone().ok_or(StrategyError::MissingNtap)?;
        if self.placed.isolates.len() != 2 {
            return Err(StrategyError::PendingIsolates { expected: "2", found: self.placed.isolates.len() });
        }
        let factor = label(4);
        let two_x = &ntap.first * 2u32;
        let far = &two_x + &ntap.offset * 4u32;
        let cycle = [&two_x + 1u32, &two_x - 1u32, &far + 1u32, &far - 1u32];
        self.placed.scale(&factor);
        self.placed.components.push((Component::Cycle(4), cycle.to_vec()));
        self.ntap = Some(ntap.scaled(&factor));
        self.checked(Step::AppendC4 { factor, ntap, cycle })
    }

    /// Labels a path by the Fibonacci recurrence. With two or more pending
    /// isolates the two largest become the first two path labels; with a
    /// single pending isolate `i` the seeds are `(i, 2i)`.
    pub fn append_path(mut self, k: usize) -> Result<Self, StrategyError> {
        let mut pending = self.sorted_pending();
        let seeds = match pending.len() {
            0 => return Err(StrategyError::PendingIsolates { expected: "at least 1", found: 0 }),
            1 => {
                let i = pending.pop().expect("one pending isolate");
                (i.clone(), i * 2u32)
            }
            _ => {
                if let Some(pair) = verify::check_path_append(&self.placed.labelling()).expect("two or more isolates") {
                    return Err(StrategyError::PathSeedCollision { pair });
                }
                let hi = pending.pop().expect("two pending isolates");
                let lo = pending.pop().expect("two pending isolates");
                (lo, hi)
            }
        };
        let path = schemes::fibonacci_path(&seeds.0, &seeds.1, k)?;
        self.placed.components.extend(path.components);
        pending.extend(path.isolates);
        self.placed.isolates = pending;
        self.checked(Step::AppendPath { order: k, seeds })
    }
}

/// A complete labelling produced by [`label_graph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledGraph {
    /// Components in processing order with their labels, plus the isolates.
    pub labelling: SchemeLabelling,
    /// Number of isolates used; equals the sum number of the input graph.
    pub sigma: usize,
    /// An arithmetic progression with absent offset in the final label set.
    pub ntap: Option<NtapWitness>,
    pub trace: Vec<Step>,
}

impl LabelledGraph {
    fn from_state(state: LabellingState) -> Self {
        let all = state.placed.all_labels();
        let ntap = state.ntap.filter(|w| w.holds_in(&all)).or_else(|| verify::find_ntaps(&all).into_iter().next());
        LabelledGraph { sigma: state.placed.isolates.len(), labelling: state.placed, ntap, trace: state.trace }
    }
}

fn start_cycles(cycles: &[usize], c4s: usize) -> Result<LabellingState, StrategyError> {
    let mut state = match cycles {
        [] => unreachable!("start_cycles needs a cycle"),
        [5] if c4s >= 1 => {
            let (a, b, c) = (label(2), label(4), label(1));
            let (base, ntap) = schemes::c5_c4_special(&a, &b, &c)?;
            let state = LabellingState::start(base, Some(ntap), Step::C5C4Special { a, b, c })?;
            return (1..c4s).try_fold(state, |s, _| s.append_c4());
        }
        [5] => {
            let seeds = (label(1), label(2));
            let base = schemes::fibonacci_cycle(&seeds.0, &seeds.1, 5)?;
            let ntap = verify::find_ntaps(&base.all_labels()).into_iter().next();
            LabellingState::start(base, ntap, Step::FibonacciCycle { order: 5, seeds })?
        }
        [first, ..] => {
            let (base, ntap) = schemes::first_cycle_ntap(*first)?;
            LabellingState::start(base, Some(ntap), Step::FirstCycle { order: *first })?
        }
    };
    for &n in &cycles[1..] {
        state = state.append_cycle(n)?;
    }
    for _ in 0..c4s {
        state = state.append_c4()?;
    }
    Ok(state)
}

/// Labels `spec` with the minimum number of isolates.
pub fn label_graph(spec: &GraphSpec) -> Result<LabelledGraph, StrategyError> {
    let order = spec.processing_order();
    let cycles: Vec<usize> = order.iter().filter(|c| c.is_cycle() && !c.is_c4()).map(|c| c.order()).collect();
    let c4s = order.iter().filter(|c| c.is_c4()).count();
    let paths: Vec<usize> = order.iter().filter(|c| !c.is_cycle()).map(|c| c.order()).collect();

    let (mut state, rest) = match (cycles.is_empty(), c4s, paths.as_slice()) {
        (true, 0, [longest, rest @ ..]) => {
            let seeds = (label(1), label(2));
            let base = schemes::fibonacci_path(&seeds.0, &seeds.1, *longest)?;
            (LabellingState::start(base, None, Step::FibonacciPath { order: *longest, seeds })?, rest)
        }
        (true, 1, []) => {
            let base = schemes::c4_linear_exponential(1)?;
            let ntap = verify::find_ntaps(&base.all_labels()).into_iter().next();
            (LabellingState::start(base, ntap, Step::C4LinearExponential { count: 1 })?, &[][..])
        }
        (true, 1, [longest, rest @ ..]) => {
            let base = schemes::c4_path_special(*longest)?;
            (LabellingState::start(base, None, Step::C4PathSpecial { order: *longest })?, rest)
        }
        (true, k, _) => {
            let (base, ntap) = schemes::two_c4_base();
            let mut state = LabellingState::start(base, Some(ntap), Step::TwoC4Base)?;
            for _ in 2..k {
                state = state.append_c4()?;
            }
            (state, paths.as_slice())
        }
        (false, k, _) => (start_cycles(&cycles, k)?, paths.as_slice()),
    };
    for &k in rest {
        state = state.append_path(k)?;
    }
    Ok(LabelledGraph::from_state(state))
}
