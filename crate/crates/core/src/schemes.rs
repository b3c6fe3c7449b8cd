//! Closed-form labelling constructions.
//!
//! Every scheme returns its component labels in traversal order (cyclic
//! order for cycles, path order for paths) together with the isolate labels.
//! Constructions whose validity is only established by example are checked
//! against the verifier before they are returned.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::graph::{Component, ConcreteGraph, GraphSpec};
use crate::verify::{self, Certificate, Labelling};
use crate::{label, Label};

/// Labels of a graph of maximum degree two, component by component.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SchemeLabelling {
    pub components: Vec<(Component, Vec<Label>)>,
    pub isolates: Vec<Label>,
}

impl SchemeLabelling {
    pub fn new(components: Vec<(Component, Vec<Label>)>, isolates: Vec<Label>) -> Self {
        SchemeLabelling { components, isolates }
    }

    pub fn single(component: Component, labels: Vec<Label>, isolates: Vec<Label>) -> Self {
        SchemeLabelling { components: vec![(component, labels)], isolates }
    }

    pub fn component_kinds(&self) -> Vec<Component> {
        self.components.iter().map(|(c, _)| *c).collect()
    }

    /// The multiset of components; `None` when there are none.
    pub fn spec(&self) -> Option<GraphSpec> {
        GraphSpec::new(self.component_kinds())
    }

    /// Concrete graph with vertices numbered in component order.
    pub fn graph(&self) -> ConcreteGraph {
        ConcreteGraph::from_components(&self.component_kinds())
    }

    pub fn labelling(&self) -> Labelling {
        Labelling { vertices: self.components.iter().flat_map(|(_, l)| l.iter().cloned()).collect(), isolates: self.isolates.clone() }
    }

    pub fn vertex_labels(&self) -> impl Iterator<Item = &Label> {
        self.components.iter().flat_map(|(_, l)| l.iter())
    }

    pub fn all_labels(&self) -> Vec<Label> {
        self.vertex_labels().chain(&self.isolates).cloned().collect()
    }

    pub fn max_label(&self) -> Option<&Label> {
        self.vertex_labels().chain(&self.isolates).max()
    }

    pub fn min_label(&self) -> Option<&Label> {
        self.vertex_labels().chain(&self.isolates).min()
    }

    /// Verifies the labelling against its own component list.
    ///
    /// # Panics
    ///
    /// If a component's label count differs from its order.
    pub fn check(&self) -> Certificate {
        for (c, l) in &self.components {
            assert_eq!(c.order(), l.len(), "{c} needs {} labels", c.order());
        }
        verify::verify(&self.labelling(), &self.graph())
    }

    pub fn scale(&mut self, factor: &Label) {
        for (_, l) in &mut self.components {
            l.iter_mut().for_each(|x| *x *= factor);
        }
        self.isolates.iter_mut().for_each(|x| *x *= factor);
    }

    pub fn scaled(&self, factor: &Label) -> Self {
        let mut out = self.clone();
        out.scale(factor);
        out
    }
}

/// Three labels `x, x+d, x+2d` whose offset `d` is not a label.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NtapWitness {
    pub first: Label,
    pub offset: Label,
}

impl NtapWitness {
    pub fn new(first: u64, offset: u64) -> Self {
        NtapWitness { first: label(first), offset: label(offset) }
    }

    pub fn terms(&self) -> [Label; 3] {
        let second = &self.first + &self.offset;
        let third = &second + &self.offset;
        [self.first.clone(), second, third]
    }

    /// True when all three terms are in `labels` and the offset is not.
    pub fn holds_in(&self, labels: &[Label]) -> bool {
        !self.offset.is_zero() && self.terms().iter().all(|t| labels.contains(t)) && !labels.contains(&self.offset)
    }

    pub fn scaled(&self, factor: &Label) -> Self {
        NtapWitness { first: &self.first * factor, offset: &self.offset * factor }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SchemeError {
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("duplicate label {0}")]
    DuplicateLabel(Label),
    #[error("4-cycles cannot be labelled by this scheme")]
    FourCycle,
    #[error("{scheme} produced an invalid labelling ({} violations)", certificate.violations.len())]
    Integrity { scheme: &'static str, certificate: Certificate },
    #[error("{scheme} produced no arithmetic progression with an absent offset")]
    MissingNtap { scheme: &'static str },
}

fn require(cond: bool, what: &'static str) -> Result<(), SchemeError> {
    if cond {
        Ok(())
    } else {
        Err(SchemeError::Precondition(what))
    }
}

fn self_checked(scheme: &'static str, out: SchemeLabelling) -> Result<SchemeLabelling, SchemeError> {
    let certificate = out.check();
    if certificate.is_valid() {
        Ok(out)
    } else {
        Err(SchemeError::Integrity { scheme, certificate })
    }
}

/// `len` terms of the recurrence `l_i = l_{i-1} + l_{i-2}` from two seeds.
pub fn fibonacci_sequence(s1: &Label, s2: &Label, len: usize) -> Vec<Label> {
    let mut out: Vec<Label> = Vec::with_capacity(len);
    for i in 0..len {
        let next = match i {
            0 => s1.clone(),
            1 => s2.clone(),
            _ => &out[i - 1] + &out[i - 2],
        };
        out.push(next);
    }
    out
}

/// Fibonacci labelling of `P_k` from seeds `s1 < s2`; one isolate
/// `l_{k-1} + l_k`.
pub fn fibonacci_path(s1: &Label, s2: &Label, k: usize) -> Result<SchemeLabelling, SchemeError> {
    require(!s1.is_zero(), "0 < s1")?;
    require(s1 < s2, "s1 < s2")?;
    require(k >= 2, "path order >= 2")?;
    let path = fibonacci_sequence(s1, s2, k);
    let isolate = &path[k - 2] + &path[k - 1];
    Ok(SchemeLabelling::single(Component::Path(k), path, vec![isolate]))
}

/// The exponential labelling of a perfect matching with `m` edges:
/// edges `(2,3), (5,6), (11,12), ...`, each starting at the previous edge
/// sum, and a single isolate.
pub fn matching_exponential(m: usize) -> Result<SchemeLabelling, SchemeError> {
    require(m >= 1, "at least one edge")?;
    let mut components = Vec::with_capacity(m);
    let mut start = label(2);
    for _ in 0..m {
        let end = &start + 1u32;
        let next = &start + &end;
        components.push((Component::Path(2), vec![start, end]));
        start = next;
    }
    Ok(SchemeLabelling::new(components, vec![start]))
}

/// Arithmetic progression scheme: edges `(x + i*d, y - i*d)` for
/// `i = 0..=k`, all summing to the single isolate `x + y`.
pub fn matching_arithmetic(x: &Label, y: &Label, d: &Label, k: usize) -> Result<SchemeLabelling, SchemeError> {
    require(!x.is_zero(), "0 < x")?;
    require(!d.is_zero(), "0 < d")?;
    require(x < y, "x < y")?;
    if k >= 1 {
        let two_smallest = x + x + d;
        require(&two_smallest > y, "2x + d > y")?;
        require(two_smallest < x + y, "2x + d < x + y")?;
    }
    let span = d * Label::from(k);
    require(&span < y, "y - k*d > 0")?;
    let mut components = Vec::with_capacity(k + 1);
    let mut seen: Vec<Label> = Vec::with_capacity(2 * k + 2);
    for i in 0..=k {
        let step = d * Label::from(i);
        let (a, b) = (x + &step, y - &step);
        for l in [&a, &b] {
            if seen.contains(l) {
                return Err(SchemeError::DuplicateLabel(l.clone()));
            }
            seen.push(l.clone());
        }
        components.push((Component::Path(2), vec![a, b]));
    }
    Ok(SchemeLabelling::new(components, vec![x + y]))
}

/// The arithmetic scheme for an `n`-vertex perfect matching: labels
/// `n..=2n-1`, isolate `3n-1`.
pub fn matching_arithmetic_for_order(n: usize) -> Result<SchemeLabelling, SchemeError> {
    require(n >= 2 && n.is_multiple_of(2), "matching order is even and >= 2")?;
    let n_label = Label::from(n);
    matching_arithmetic(&n_label, &Label::from(2 * n - 1), &Label::one(), n / 2 - 1)
}

/// Fibonacci labelling of `C_n` from seeds `s1 < s2`, isolates
/// `l_n + l_1` and `l_{n-1} + l_n`.
pub fn fibonacci_cycle(s1: &Label, s2: &Label, n: usize) -> Result<SchemeLabelling, SchemeError> {
    require(n >= 3, "cycle order >= 3")?;
    if n == 4 {
        return Err(SchemeError::FourCycle);
    }
    require(!s1.is_zero(), "0 < s1")?;
    require(s1 < s2, "s1 < s2")?;
    // Otherwise l_1 + (l_3 + l_1) equals the other isolate l_2 + l_3.
    require(n != 3 || s2 != &(s1 * 2u32), "s2 != 2 s1 for a triangle")?;
    let cycle = fibonacci_sequence(s1, s2, n);
    let iso1 = &cycle[n - 1] + &cycle[0];
    let iso2 = &cycle[n - 2] + &cycle[n - 1];
    Ok(SchemeLabelling::single(Component::Cycle(n), cycle, vec![iso1, iso2]))
}

/// Interleaved order on `[n-2, 2n-3]` for even `n`:
/// `n-2, 2n-3, n, 2n-5, ..., 2n-4, n-1`.
pub fn interleaved_even_order(n: usize) -> Vec<u64> {
    let n = n as u64;
    let low = (n - 2..=2 * n - 4).step_by(2);
    let high = (n - 1..=2 * n - 3).rev().step_by(2);
    low.zip(high).flat_map(|(a, b)| [a, b]).collect()
}

/// Interleaved order on `[n-3, 2n-4]` for odd `n`:
/// `n-3, n-1, 2n-5, n+1, 2n-7, ..., 2n-4, n-2`.
pub fn interleaved_odd_order(n: usize) -> Vec<u64> {
    let n = n as u64;
    let low = (n - 1..=2 * n - 4).step_by(2);
    let high = (n - 2..=2 * n - 5).rev().step_by(2);
    core::iter::once(n - 3).chain(low.zip(high).flat_map(|(a, b)| [a, b])).collect()
}

/// A first cycle whose labelling carries an NTAP, so later 4-cycles can be
/// grafted on by scaling.
///
/// * `n = 3`: `(1,3,4)`, isolates `5,7`, NTAP `1-3-5`.
/// * `n = 5`: Fibonacci `(1,2,3,5,8)`, isolates `9,13`, NTAP `1-5-9`.
/// * even `n >= 6`: interleaved order on `[n-2, 2n-3]`, isolates `3n-5, 3n-3`.
/// * odd `n >= 7`: interleaved order on `[n-3, 2n-4]`, isolates `3n-6, 3n-4`.
pub fn first_cycle_ntap(n: usize) -> Result<(SchemeLabelling, NtapWitness), SchemeError> {
    require(n >= 3, "cycle order >= 3")?;
    let n64 = n as u64;
    let (out, ntap) = match n {
        4 => return Err(SchemeError::FourCycle),
        3 => (SchemeLabelling::single(Component::Cycle(3), crate::labels(&[1, 3, 4]), crate::labels(&[5, 7])), NtapWitness::new(1, 2)),
        5 => (fibonacci_cycle(&label(1), &label(2), 5)?, NtapWitness::new(1, 4)),
        _ if n.is_multiple_of(2) => (
            SchemeLabelling::single(
                Component::Cycle(n),
                crate::labels(&interleaved_even_order(n)),
                crate::labels(&[3 * n64 - 5, 3 * n64 - 3]),
            ),
            NtapWitness::new(n64 - 2, 1),
        ),
        _ => (
            SchemeLabelling::single(
                Component::Cycle(n),
                crate::labels(&interleaved_odd_order(n)),
                crate::labels(&[3 * n64 - 6, 3 * n64 - 4]),
            ),
            NtapWitness::new(n64 - 3, 1),
        ),
    };
    let out = self_checked("first_cycle_ntap", out)?;
    if !ntap.holds_in(&out.all_labels()) {
        return Err(SchemeError::MissingNtap { scheme: "first_cycle_ntap" });
    }
    Ok((out, ntap))
}

/// The published three-isolate `C_5` labelling `(1,2,7,9,3)` with isolates
/// `4,12,16`, returned unchecked. It is not a valid sum labelling
/// (`4 + 12 = 16` and `3 + 4 = 7`); kept for fixture comparison only.
pub fn c5_special_published() -> SchemeLabelling {
    SchemeLabelling::single(Component::Cycle(5), crate::labels(&[1, 2, 7, 9, 3]), crate::labels(&[4, 12, 16]))
}

/// `count` triangles chained through their isolates, starting from
/// `(x, x+y, 2x+y)`. The final isolates are `3^l x + floor(3^l/2) y` and
/// `3^l x + ceil(3^l/2) y`.
pub fn triangles_chain(x: &Label, y: &Label, count: usize) -> Result<SchemeLabelling, SchemeError> {
    require(!x.is_zero() && !y.is_zero(), "0 < x, 0 < y")?;
    require(x != y, "x != y")?;
    require(count >= 1, "at least one triangle")?;
    let (mut s1, mut s2) = (x.clone(), x + y);
    let mut components = Vec::with_capacity(count);
    for _ in 0..count {
        let tri = fibonacci_cycle(&s1, &s2, 3)?;
        let [iso1, iso2]: [Label; 2] = tri.isolates.try_into().expect("two isolates");
        components.extend(tri.components);
        s1 = iso1;
        s2 = iso2;
    }
    Ok(SchemeLabelling::new(components, vec![s1, s2]))
}

/// Linear-exponential labelling of `k` disjoint 4-cycles: each cycle is an
/// arithmetic progression, the next cycle extends the previous isolate
/// triple by one term. Always three isolates.
pub fn c4_linear_exponential(k: usize) -> Result<SchemeLabelling, SchemeError> {
    require(k >= 1, "at least one 4-cycle")?;
    let mut start = label(2);
    let mut step = label(3);
    let mut components = Vec::with_capacity(k);
    for _ in 0..k {
        let cycle: Vec<Label> = (0u32..4).map(|i| &start + &step * i).collect();
        components.push((Component::Cycle(4), cycle));
        start = &start + &start + &step;
        step = &step + &step;
    }
    let isolates = (0u32..3).map(|i| &start + &step * i).collect();
    Ok(SchemeLabelling::new(components, isolates))
}

/// The minimal two-isolate labelling of `2C_4`: `(2,5,8,11)` and
/// `(19,13,7,1)`, isolates `20, 32`, NTAP `2-5-8`.
pub fn two_c4_base() -> (SchemeLabelling, NtapWitness) {
    let out = SchemeLabelling::new(
        vec![(Component::Cycle(4), crate::labels(&[2, 5, 8, 11])), (Component::Cycle(4), crate::labels(&[19, 13, 7, 1]))],
        crate::labels(&[20, 32]),
    );
    (out, NtapWitness::new(2, 3))
}

/// `C_5 + C_4` with two isolates:
/// `C_5 = (a, b, a+b, a+2b, 2a+3b)`, `C_4 = (c, 2b+c, 3a+3b, 3a+5b)`,
/// isolates `3a+5b+c, 6a+8b`. Requires `a = 2c`, `b != 3c`, `a < b`.
pub fn c5_c4_special(a: &Label, b: &Label, c: &Label) -> Result<(SchemeLabelling, NtapWitness), SchemeError> {
    require(!c.is_zero(), "0 < c")?;
    require(a == &(c + c), "a = 2c")?;
    require(b != &(c * 3u32), "b != 3c")?;
    require(a < b, "a < b")?;
    let three = Label::from(3u32);
    let c5 = vec![a.clone(), b.clone(), a + b, a + b * 2u32, a * 2u32 + b * 3u32];
    let c4 = vec![c.clone(), b * 2u32 + c, a * &three + b * &three, a * &three + b * 5u32];
    let iso1 = a * &three + b * 5u32 + c;
    let iso2 = a * 6u32 + b * 8u32;
    let out = self_checked(
        "c5_c4_special",
        SchemeLabelling::new(vec![(Component::Cycle(5), c5), (Component::Cycle(4), c4)], vec![iso1.clone(), iso2.clone()]),
    )?;
    let all = out.all_labels();
    let preferred = NtapWitness { first: a + b * 2u32, offset: &iso2 - &iso1 };
    let ntap = if preferred.holds_in(&all) {
        preferred
    } else {
        verify::find_ntaps(&all).into_iter().next().ok_or(SchemeError::MissingNtap { scheme: "c5_c4_special" })?
    };
    Ok((out, ntap))
}

/// `C_4 + P_k` with the fewest isolates: two for `k = 2`, one otherwise.
pub fn c4_path_special(k: usize) -> Result<SchemeLabelling, SchemeError> {
    require(k >= 2, "path order >= 2")?;
    let c4 = Component::Cycle(4);
    let out = match k {
        2 => SchemeLabelling::new(
            vec![(c4, crate::labels(&[1, 7, 13, 19])), (Component::Path(2), crate::labels(&[20, 32]))],
            crate::labels(&[8, 52]),
        ),
        3 => SchemeLabelling::new(
            vec![(c4, crate::labels(&[1, 3, 9, 11])), (Component::Path(3), crate::labels(&[12, 4, 16]))],
            crate::labels(&[20]),
        ),
        4 => SchemeLabelling::new(
            vec![(c4, crate::labels(&[1, 2, 6, 11])), (Component::Path(4), crate::labels(&[17, 3, 8, 12]))],
            crate::labels(&[20]),
        ),
        _ => {
            let mut path = crate::labels(&[26, 13, 7, 19, 20]);
            while path.len() < k {
                let next = &path[path.len() - 1] + &path[path.len() - 2];
                path.push(next);
            }
            let isolate = &path[k - 1] + &path[k - 2];
            SchemeLabelling::new(vec![(c4, crate::labels(&[2, 5, 8, 11])), (Component::Path(k), path)], vec![isolate])
        }
    };
    self_checked("c4_path_special", out)
}

/// `K_n` labelled `4i - 3` (`1 <= i <= n`) with isolates `4j + 2`
/// (`1 <= j <= 2n - 3`). Vertex `i - 1` of [`ConcreteGraph::complete`]
/// carries `4i - 3`.
pub fn complete_graph(n: usize) -> Result<Labelling, SchemeError> {
    require(n >= 4, "complete graph order >= 4")?;
    let n = n as u64;
    Ok(Labelling::new((1..=n).map(|i| label(4 * i - 3)).collect(), (1..=2 * n - 3).map(|j| label(4 * j + 2)).collect()))
}
