//! Graphs of maximum degree two as multisets of cycles and paths.
//!
//! Specs are written as sums of terms such as `5C3 + 2C4 + P9`. A
//! [`GraphSpec`] keeps its components in input order; [`GraphSpec::processing_order`]
//! gives the order in which the labelling strategy consumes them, and the
//! canonical printer uses that order with multiplicities.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::fmt;
use core::str::FromStr;

/// A connected component of a graph of maximum degree two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    /// Cycle on the given number of vertices (at least 3).
    Cycle(usize),
    /// Path on the given number of vertices (at least 2).
    Path(usize),
}

impl Component {
    pub fn order(self) -> usize {
        match self {
            Component::Cycle(n) | Component::Path(n) => n,
        }
    }

    pub fn edge_count(self) -> usize {
        match self {
            Component::Cycle(n) => n,
            Component::Path(n) => n - 1,
        }
    }

    pub fn is_cycle(self) -> bool {
        matches!(self, Component::Cycle(_))
    }

    pub fn is_c4(self) -> bool {
        self == Component::Cycle(4)
    }

    fn is_admissible(self) -> bool {
        match self {
            Component::Cycle(n) => n >= 3,
            Component::Path(n) => n >= 2,
        }
    }

    /// Rank used by the processing order: long cycles, then 4-cycles, then paths.
    fn group(self) -> u8 {
        match self {
            Component::Cycle(4) => 1,
            Component::Cycle(_) => 0,
            Component::Path(_) => 2,
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::Cycle(n) => write!(f, "C{n}"),
            Component::Path(n) => write!(f, "P{n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: &'static str },
    #[error("cycle order must be at least 3, got C{order} at position {position}")]
    CycleTooShort { position: usize, order: usize },
    #[error("path order must be at least 2, got P{order} at position {position}")]
    PathTooShort { position: usize, order: usize },
    #[error("zero multiplicity at position {position}")]
    ZeroCount { position: usize },
}

/// A non-empty multiset of cycles and paths.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GraphSpec {
    components: Vec<Component>,
}

impl GraphSpec {
    /// Builds a spec from components; `None` if empty or if any component is
    /// too short (cycles need 3 vertices, paths 2).
    pub fn new(components: Vec<Component>) -> Option<Self> {
        if components.is_empty() || !components.iter().all(|c| c.is_admissible()) {
            return None;
        }
        Some(GraphSpec { components })
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// Total number of vertices.
    pub fn order(&self) -> usize {
        self.components.iter().map(|c| c.order()).sum()
    }

    pub fn edge_count(&self) -> usize {
        self.components.iter().map(|c| c.edge_count()).sum()
    }

    /// 1 if any path is present, otherwise 2.
    pub fn min_degree(&self) -> usize {
        if self.components.iter().any(|c| !c.is_cycle()) {
            1
        } else {
            2
        }
    }

    /// 2 if any cycle or path of order at least 3 is present, otherwise 1.
    pub fn max_degree(&self) -> usize {
        if self.components.iter().any(|c| c.is_cycle() || c.order() >= 3) {
            2
        } else {
            1
        }
    }

    pub fn count(&self, component: Component) -> usize {
        self.components.iter().filter(|&&c| c == component).count()
    }

    /// Non-C4 cycles by descending order, then all C4s, then paths by
    /// descending order. Equal components keep their input order.
    pub fn processing_order(&self) -> Vec<Component> {
        let mut ordered = self.components.clone();
        ordered.sort_by_key(|c| (c.group(), Reverse(c.order())));
        ordered
    }

    /// Explicit vertex and edge sets, vertices numbered in processing order.
    pub fn realize(&self) -> ConcreteGraph {
        ConcreteGraph::from_components(&self.processing_order())
    }

    /// The same multiset in processing order.
    pub fn canonical(&self) -> GraphSpec {
        GraphSpec { components: self.processing_order() }
    }

    /// True when both specs describe the same multiset of components.
    pub fn same_multiset(&self, other: &GraphSpec) -> bool {
        let mut a = self.components.clone();
        let mut b = other.components.clone();
        a.sort();
        b.sort();
        a == b
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ordered = self.processing_order();
        let mut first = true;
        let mut i = 0;
        while i < ordered.len() {
            let run = ordered[i..].iter().take_while(|&&c| c == ordered[i]).count();
            if !first {
                f.write_str("+")?;
            }
            first = false;
            if run > 1 {
                write!(f, "{run}")?;
            }
            write!(f, "{}", ordered[i])?;
            i += run;
        }
        Ok(())
    }
}

impl FromStr for GraphSpec {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        Parser::new(text).parse()
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { bytes: text.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<Option<usize>, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut value: usize = 0;
        while let Some(&b) = self.bytes.get(self.pos) {
            if !b.is_ascii_digit() {
                break;
            }
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(usize::from(b - b'0')))
                .ok_or(ParseError::Syntax { position: start, message: "number too large" })?;
            self.pos += 1;
        }
        Ok((self.pos > start).then_some(value))
    }

    fn term(&mut self, out: &mut Vec<Component>) -> Result<(), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let count = self.number()?;
        if count == Some(0) {
            return Err(ParseError::ZeroCount { position: start });
        }
        let kind_pos = {
            self.skip_ws();
            self.pos
        };
        let kind = match self.peek() {
            Some(b'C') | Some(b'c') => b'C',
            Some(b'P') | Some(b'p') => b'P',
            _ => return Err(ParseError::Syntax { position: kind_pos, message: "expected 'C' or 'P'" }),
        };
        self.pos += 1;
        let order_pos = {
            self.skip_ws();
            self.pos
        };
        let order = self.number()?.ok_or(ParseError::Syntax { position: order_pos, message: "expected component order" })?;
        let component = if kind == b'C' {
            if order < 3 {
                return Err(ParseError::CycleTooShort { position: kind_pos, order });
            }
            Component::Cycle(order)
        } else {
            if order < 2 {
                return Err(ParseError::PathTooShort { position: kind_pos, order });
            }
            Component::Path(order)
        };
        out.extend(core::iter::repeat_n(component, count.unwrap_or(1)));
        Ok(())
    }

    fn parse(mut self) -> Result<GraphSpec, ParseError> {
        let mut components = Vec::new();
        self.term(&mut components)?;
        while let Some(b) = self.peek() {
            if b != b'+' {
                return Err(ParseError::Syntax { position: self.pos, message: "expected '+'" });
            }
            self.pos += 1;
            self.term(&mut components)?;
        }
        Ok(GraphSpec { components })
    }
}

/// An explicit simple undirected graph on vertices `0..order`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConcreteGraph {
    order: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl ConcreteGraph {
    pub fn empty(order: usize) -> Self {
        ConcreteGraph { order, edges: BTreeSet::new() }
    }

    /// Panics on loops or out-of-range endpoints.
    pub fn from_edges(order: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut graph = ConcreteGraph::empty(order);
        for (u, v) in edges {
            graph.add_edge(u, v);
        }
        graph
    }

    /// Lays the components out consecutively in the given order.
    pub fn from_components(components: &[Component]) -> Self {
        let order = components.iter().map(|c| c.order()).sum();
        let mut graph = ConcreteGraph::empty(order);
        let mut base = 0;
        for &c in components {
            let n = c.order();
            for i in 0..n - 1 {
                graph.add_edge(base + i, base + i + 1);
            }
            if c.is_cycle() {
                graph.add_edge(base, base + n - 1);
            }
            base += n;
        }
        graph
    }

    pub fn complete(order: usize) -> Self {
        let mut graph = ConcreteGraph::empty(order);
        for u in 0..order {
            for v in u + 1..order {
                graph.add_edge(u, v);
            }
        }
        graph
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "loops are not allowed");
        assert!(u < self.order && v < self.order, "edge endpoint out of range");
        self.edges.insert((u.min(v), u.max(v)));
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.order];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.degrees().into_iter().min().unwrap_or(0)
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.order];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.order];
        let mut out = Vec::new();
        for start in 0..self.order {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut comp = Vec::new();
            while let Some(u) = stack.pop() {
                comp.push(u);
                for &w in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// For graphs of maximum degree at most two: the sorted multiset of
    /// cycle/path components plus the number of isolated vertices.
    pub fn component_signature(&self) -> Option<(Vec<Component>, usize)> {
        if self.max_degree() > 2 {
            return None;
        }
        let deg = self.degrees();
        let mut comps = Vec::new();
        let mut isolated = 0;
        for comp in self.connected_components() {
            let n = comp.len();
            let edges: usize = comp.iter().map(|&v| deg[v]).sum::<usize>() / 2;
            if n == 1 {
                isolated += 1;
            } else if edges == n {
                comps.push(Component::Cycle(n));
            } else {
                comps.push(Component::Path(n));
            }
        }
        comps.sort();
        Some((comps, isolated))
    }
}

/// Renders a component list in canonical spec syntax (used in messages).
pub fn describe(components: &[Component]) -> String {
    match GraphSpec::new(components.to_vec()) {
        Some(spec) => alloc::format!("{spec}"),
        None => String::from("(empty)"),
    }
}
