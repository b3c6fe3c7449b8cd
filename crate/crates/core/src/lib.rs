//! Sum labellings for graphs of maximum degree two.
//!
//! A sum labelling assigns distinct positive integers to the vertices of a
//! graph so that two vertices are adjacent exactly when the sum of their
//! labels is itself a label. Graphs of maximum degree two are disjoint unions
//! of cycles and paths; this crate labels every such graph with the minimum
//! number of extra isolated vertices, checks arbitrary labellings against a
//! target graph, and provides a bounded exhaustive search used as an
//! independent source of lower-bound evidence.
//!
//! The crate is `no_std` and only needs `alloc`. Labels are arbitrary
//! precision because most constructions grow exponentially with the order
//! of the graph.

#![no_std]

extern crate alloc;

pub mod graph;
pub mod metrics;
pub mod schemes;
pub mod search;
pub mod strategy;
pub mod verify;

pub use num_bigint::BigUint;

/// A vertex or isolate label.
pub type Label = BigUint;

pub use graph::{Component, ConcreteGraph, GraphSpec, ParseError};
pub use schemes::{NtapWitness, SchemeError, SchemeLabelling};
pub use search::{SearchConfig, SearchError, SearchOutcome, SearchResult};
pub use strategy::{label_graph, LabelledGraph, LabellingState, Step, StrategyError};
pub use verify::{Certificate, Labelling, Violation, ViolationKind};

/// Shorthand for building a label from a machine integer.
pub fn label(value: u64) -> Label {
    Label::from(value)
}

/// Builds a label list from machine integers.
pub fn labels(values: &[u64]) -> alloc::vec::Vec<Label> {
    values.iter().map(|&v| Label::from(v)).collect()
}
