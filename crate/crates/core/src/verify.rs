//! Ground truth for sum labellings.
//!
//! A set of labels induces a graph: `x` and `y` are adjacent iff `x + y` is
//! also in the set. [`verify`] compares that induced graph against a target
//! graph under a fixed vertex assignment, and additionally demands that no
//! induced edge touches an isolate label.

use alloc::vec::Vec;

use crate::graph::ConcreteGraph;
use crate::schemes::NtapWitness;
use crate::Label;

/// A labelling of a concrete graph: `vertices[v]` labels vertex `v`, the
/// isolate labels belong to the added isolated vertices.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Labelling {
    pub vertices: Vec<Label>,
    pub isolates: Vec<Label>,
}

impl Labelling {
    pub fn new(vertices: Vec<Label>, isolates: Vec<Label>) -> Self {
        Labelling { vertices, isolates }
    }

    /// Vertex labels followed by isolate labels.
    pub fn all_labels(&self) -> Vec<Label> {
        self.vertices.iter().chain(&self.isolates).cloned().collect()
    }

    /// Every label multiplied by `factor`.
    pub fn scaled(&self, factor: &Label) -> Labelling {
        Labelling {
            vertices: self.vertices.iter().map(|l| l * factor).collect(),
            isolates: self.isolates.iter().map(|l| l * factor).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ViolationKind {
    /// A graph edge whose label sum is not a label.
    MissingEdge,
    /// Two non-adjacent vertices whose label sum is a label.
    UnwantedEdge,
    /// An isolate label is an endpoint of an induced edge.
    IsolateNotIsolated,
    DuplicateLabel,
    NonPositive,
    /// A 4-cycle edge sum equals a label of the same 4-cycle.
    C4SumOnOwnVertex,
    /// A 4-cycle has fewer than three distinct edge sums.
    C4TooFewSums,
    /// A 4-cycle has exactly three edge sums that are not in arithmetic progression.
    C4SumsNotArithmetic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    /// The labels involved: a pair for edge violations, one label otherwise,
    /// or the offending 4-cycle's labels for structural violations.
    pub witness: Vec<Label>,
}

impl Violation {
    fn new(kind: ViolationKind, witness: Vec<Label>) -> Self {
        Violation { kind, witness }
    }
}

/// Verification verdict; valid iff there are no violations.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Certificate {
    pub violations: Vec<Violation>,
}

impl Certificate {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    pub fn first(&self, kind: ViolationKind) -> Option<&Violation> {
        self.violations.iter().find(|v| v.kind == kind)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LabelSetError {
    #[error("label {0} occurs more than once")]
    Duplicate(Label),
    #[error("labels must be positive")]
    NonPositive,
    #[error("at least two isolates are required, found {0}")]
    TooFewIsolates(usize),
}

fn sorted_checked(labels: &[Label]) -> Result<Vec<&Label>, LabelSetError> {
    let mut sorted: Vec<&Label> = labels.iter().collect();
    sorted.sort_unstable();
    if sorted.first().is_some_and(|l| *l == &Label::ZERO) {
        return Err(LabelSetError::NonPositive);
    }
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(LabelSetError::Duplicate(w[0].clone()));
    }
    Ok(sorted)
}

/// Calls `f(i, j)` for every index pair `i < j` of the sorted slice whose
/// label sum is also present.
fn for_each_induced(sorted: &[&Label], mut f: impl FnMut(usize, usize)) {
    let Some(max) = sorted.last() else { return };
    for i in 0..sorted.len() {
        for j in i + 1..sorted.len() {
            let sum = sorted[i] + sorted[j];
            if &sum > *max {
                break;
            }
            if sorted.binary_search(&&sum).is_ok() {
                f(i, j);
            }
        }
    }
}

/// Every pair `{x, y}` (with `x < y`) of the set whose sum is in the set.
pub fn induced_edges(labels: &[Label]) -> Result<Vec<(Label, Label)>, LabelSetError> {
    let sorted = sorted_checked(labels)?;
    let mut out = Vec::new();
    for_each_induced(&sorted, |i, j| out.push((sorted[i].clone(), sorted[j].clone())));
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Owner {
    Vertex(usize),
    Isolate,
}

/// Checks a labelling against `graph` under the given vertex assignment.
///
/// # Panics
///
/// If the labelling does not assign exactly one label per graph vertex.
pub fn verify(labelling: &Labelling, graph: &ConcreteGraph) -> Certificate {
    assert_eq!(labelling.vertices.len(), graph.order(), "labelling must assign one label to every vertex");
    let mut cert = Certificate::default();

    let mut owned: Vec<(&Label, Owner)> = labelling
        .vertices
        .iter()
        .enumerate()
        .map(|(v, l)| (l, Owner::Vertex(v)))
        .chain(labelling.isolates.iter().map(|l| (l, Owner::Isolate)))
        .collect();
    owned.sort_by(|a, b| a.0.cmp(b.0));

    if owned.iter().any(|(l, _)| **l == Label::ZERO) {
        cert.violations.push(Violation::new(ViolationKind::NonPositive, alloc::vec![Label::ZERO]));
    }
    for w in owned.windows(2) {
        if w[0].0 == w[1].0 {
            cert.violations.push(Violation::new(ViolationKind::DuplicateLabel, alloc::vec![w[0].0.clone()]));
        }
    }
    if !cert.is_valid() {
        return cert;
    }

    let sorted: Vec<&Label> = owned.iter().map(|(l, _)| *l).collect();
    let mut induced = BTreeSetPairs::default();
    for_each_induced(&sorted, |i, j| {
        let (x, ox) = owned[i];
        let (y, oy) = owned[j];
        match (ox, oy) {
            (Owner::Vertex(u), Owner::Vertex(v)) => {
                induced.insert(u, v);
                if !graph.has_edge(u, v) {
                    cert.violations.push(Violation::new(ViolationKind::UnwantedEdge, alloc::vec![x.clone(), y.clone()]));
                }
            }
            _ => cert.violations.push(Violation::new(ViolationKind::IsolateNotIsolated, alloc::vec![x.clone(), y.clone()])),
        }
    });
    for (u, v) in graph.edges() {
        if !induced.contains(u, v) {
            let (a, b) = (&labelling.vertices[u], &labelling.vertices[v]);
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            cert.violations.push(Violation::new(ViolationKind::MissingEdge, alloc::vec![lo.clone(), hi.clone()]));
        }
    }
    cert
}

#[derive(Default)]
struct BTreeSetPairs(alloc::collections::BTreeSet<(usize, usize)>);

impl BTreeSetPairs {
    fn insert(&mut self, u: usize, v: usize) {
        self.0.insert((u.min(v), u.max(v)));
    }

    fn contains(&self, u: usize, v: usize) -> bool {
        self.0.contains(&(u.min(v), u.max(v)))
    }
}

/// All non-trivial arithmetic progressions `x, x+d, x+2d` inside the label
/// set whose offset `d` is not itself a label, sorted by `(x, d)`.
pub fn find_ntaps(labels: &[Label]) -> Vec<NtapWitness> {
    let mut sorted: Vec<&Label> = labels.iter().collect();
    sorted.sort_unstable();
    sorted.dedup();
    let contains = |l: &Label| sorted.binary_search(&l).is_ok();
    let mut out = Vec::new();
    for i in 0..sorted.len() {
        for j in i + 1..sorted.len() {
            let offset = sorted[j] - sorted[i];
            let third = sorted[j] + &offset;
            if contains(&third) && !contains(&offset) {
                out.push(NtapWitness { first: sorted[i].clone(), offset });
            }
        }
    }
    out
}

/// Whether a path can be appended using the two largest isolates as seeds:
/// returns the vertex label pair whose sum equals the sum of the two largest
/// isolates, or `None` when no such pair exists.
pub fn check_path_append(labelling: &Labelling) -> Result<Option<(Label, Label)>, LabelSetError> {
    if labelling.isolates.len() < 2 {
        return Err(LabelSetError::TooFewIsolates(labelling.isolates.len()));
    }
    let mut iso: Vec<&Label> = labelling.isolates.iter().collect();
    iso.sort_unstable();
    let target = iso[iso.len() - 1] + iso[iso.len() - 2];

    let mut verts: Vec<&Label> = labelling.vertices.iter().collect();
    verts.sort_unstable();
    if verts.len() < 2 {
        return Ok(None);
    }
    let (mut lo, mut hi) = (0, verts.len() - 1);
    while lo < hi {
        let sum = verts[lo] + verts[hi];
        match sum.cmp(&target) {
            core::cmp::Ordering::Equal => return Ok(Some((verts[lo].clone(), verts[hi].clone()))),
            core::cmp::Ordering::Less => lo += 1,
            core::cmp::Ordering::Greater => hi -= 1,
        }
    }
    Ok(None)
}

/// Vertices of each 4-cycle component of `graph`, in cyclic order.
pub fn c4_components(graph: &ConcreteGraph) -> Vec<[usize; 4]> {
    let adj = graph.adjacency();
    graph
        .connected_components()
        .into_iter()
        .filter(|c| c.len() == 4 && c.iter().all(|&v| adj[v].len() == 2))
        .map(|c| {
            let a = c[0];
            let b = adj[a][0];
            let d = adj[a][1];
            let cc = if adj[b][0] == a { adj[b][1] } else { adj[b][0] };
            [a, b, cc, d]
        })
        .collect()
}

/// Structural facts every valid labelling has on each 4-cycle component:
/// edge sums avoid the cycle's own labels, there are at least three distinct
/// sums, and exactly three distinct sums form an arithmetic progression.
pub fn c4_structural_checks(labelling: &Labelling, graph: &ConcreteGraph) -> Certificate {
    let mut cert = Certificate::default();
    for cycle in c4_components(graph) {
        let own: Vec<&Label> = cycle.iter().map(|&v| &labelling.vertices[v]).collect();
        let witness = || own.iter().map(|&l| l.clone()).collect::<Vec<_>>();
        let mut sums: Vec<Label> = (0..4).map(|i| own[i] + own[(i + 1) % 4]).collect();
        if sums.iter().any(|s| own.contains(&s)) {
            cert.violations.push(Violation::new(ViolationKind::C4SumOnOwnVertex, witness()));
        }
        sums.sort_unstable();
        sums.dedup();
        if sums.len() < 3 {
            cert.violations.push(Violation::new(ViolationKind::C4TooFewSums, witness()));
        } else if sums.len() == 3 && &sums[1] - &sums[0] != &sums[2] - &sums[1] {
            cert.violations.push(Violation::new(ViolationKind::C4SumsNotArithmetic, witness()));
        }
    }
    cert
}
