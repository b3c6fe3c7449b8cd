//! Published labellings with their claimed and verified status.
//!
//! Each fixture records whether it was published as a valid sum labelling
//! and whether the verifier accepts it. Where a construction in the core
//! crate is meant to produce the same labels, `reproduce` rebuilds it.

use sumlabel_core::graph::{Component, ConcreteGraph, GraphSpec};
use sumlabel_core::schemes;
use sumlabel_core::verify::{self, Certificate, Labelling};
use sumlabel_core::{label, label_graph, labels, Label, SchemeLabelling};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Components,
    Complete,
}

pub struct Fixture {
    pub name: &'static str,
    pub description: &'static str,
    pub shape: Shape,
    pub components: Vec<(Component, Vec<Label>)>,
    pub isolates: Vec<Label>,
    pub published_valid: bool,
    pub expected_valid: bool,
    pub reproduce: Option<fn() -> Option<Vec<Label>>>,
}

impl Fixture {
    pub fn labelling(&self) -> Labelling {
        Labelling::new(self.components.iter().flat_map(|(_, l)| l.iter().cloned()).collect(), self.isolates.clone())
    }

    pub fn graph(&self) -> ConcreteGraph {
        match self.shape {
            Shape::Components => ConcreteGraph::from_components(&self.components.iter().map(|(c, _)| *c).collect::<Vec<_>>()),
            Shape::Complete => ConcreteGraph::complete(self.components[0].1.len()),
        }
    }

    pub fn verify(&self) -> Certificate {
        verify::verify(&self.labelling(), &self.graph())
    }

    /// `Some(true)` when the construction yields exactly this label set.
    pub fn reproduced(&self) -> Option<bool> {
        let f = self.reproduce?;
        let mut mine = self.labelling().all_labels();
        mine.sort();
        Some(f().is_some_and(|mut theirs| {
            theirs.sort();
            theirs == mine
        }))
    }

    pub fn as_scheme_labelling(&self) -> SchemeLabelling {
        SchemeLabelling::new(self.components.clone(), self.isolates.clone())
    }
}

fn c(n: usize, l: &[u64]) -> (Component, Vec<Label>) {
    (Component::Cycle(n), labels(l))
}

fn p(n: usize, l: &[u64]) -> (Component, Vec<Label>) {
    (Component::Path(n), labels(l))
}

fn strategy(spec: &str) -> Option<Vec<Label>> {
    let spec: GraphSpec = spec.parse().ok()?;
    label_graph(&spec).ok().map(|g| g.labelling.all_labels())
}

fn fixture(
    name: &'static str,
    description: &'static str,
    components: Vec<(Component, Vec<Label>)>,
    isolates: &[u64],
    published_valid: bool,
    expected_valid: bool,
    reproduce: Option<fn() -> Option<Vec<Label>>>,
) -> Fixture {
    Fixture {
        name,
        description,
        shape: Shape::Components,
        components,
        isolates: labels(isolates),
        published_valid,
        expected_valid,
        reproduce,
    }
}

pub fn all() -> Vec<Fixture> {
    let mut out = vec![
        fixture("triangle-valid", "triangle (1,4,3) with isolates 5, 7", vec![c(3, &[1, 4, 3])], &[5, 7], true, true, None),
        fixture(
            "triangle-invalid",
            "triangle (1,3,2) with isolates 5, 4; 1 + 4 = 5 is not an edge",
            vec![c(3, &[1, 3, 2])],
            &[5, 4],
            false,
            false,
            None,
        ),
        fixture(
            "matching-exponential",
            "8 edges (2,3),(5,6),...,(383,384), isolate 767",
            [[2, 3], [5, 6], [11, 12], [23, 24], [47, 48], [95, 96], [191, 192], [383, 384]].iter().map(|e| p(2, e)).collect(),
            &[767],
            true,
            true,
            Some(|| schemes::matching_exponential(8).ok().map(|s| s.all_labels())),
        ),
        fixture(
            "matching-arithmetic",
            "8 edges (16,31),(17,30),...,(23,24), isolate 47",
            (0..8u64).map(|i| p(2, &[16 + i, 31 - i])).collect(),
            &[47],
            true,
            true,
            Some(|| schemes::matching_arithmetic_for_order(16).ok().map(|s| s.all_labels())),
        ),
        fixture(
            "c4-arithmetic",
            "4-cycle (2,5,8,11) with isolates 7, 13, 19",
            vec![c(4, &[2, 5, 8, 11])],
            &[7, 13, 19],
            true,
            true,
            Some(|| strategy("C4")),
        ),
        fixture(
            "c4-linear-exponential-2",
            "(2,5,8,11), (7,13,19,25) with isolates 20, 32, 44; 5 + 20 = 25",
            vec![c(4, &[2, 5, 8, 11]), c(4, &[7, 13, 19, 25])],
            &[20, 32, 44],
            true,
            false,
            Some(|| schemes::c4_linear_exponential(2).ok().map(|s| s.all_labels())),
        ),
        fixture(
            "c4-linear-exponential-4",
            "(2,5,8,11), (7,13,19,25), (20,32,44,56), (52,76,100,124) with isolates 128, 176, 224",
            vec![c(4, &[2, 5, 8, 11]), c(4, &[7, 13, 19, 25]), c(4, &[20, 32, 44, 56]), c(4, &[52, 76, 100, 124])],
            &[128, 176, 224],
            true,
            false,
            Some(|| schemes::c4_linear_exponential(4).ok().map(|s| s.all_labels())),
        ),
        fixture(
            "two-c4",
            "(2,5,8,11), (19,13,7,1) with isolates 20, 32",
            vec![c(4, &[2, 5, 8, 11]), c(4, &[19, 13, 7, 1])],
            &[20, 32],
            true,
            true,
            Some(|| strategy("2C4")),
        ),
        fixture(
            "three-c4",
            "two-c4 scaled by 4 plus (5,3,17,15), isolates 80, 128",
            vec![c(4, &[8, 20, 32, 44]), c(4, &[76, 52, 28, 4]), c(4, &[5, 3, 17, 15])],
            &[80, 128],
            true,
            true,
            Some(|| strategy("3C4")),
        ),
        fixture(
            "four-c4",
            "three-c4 scaled by 4 plus (17,15,65,63), isolates 320, 512",
            vec![c(4, &[32, 80, 128, 176]), c(4, &[112, 208, 304, 16]), c(4, &[20, 12, 68, 60]), c(4, &[17, 15, 65, 63])],
            &[320, 512],
            true,
            true,
            Some(|| strategy("4C4")),
        ),
        fixture(
            "c5-special",
            "5-cycle (1,2,7,9,3) with isolates 4, 12, 16; 4 + 12 = 16 and 3 + 4 = 7",
            vec![c(5, &[1, 2, 7, 9, 3])],
            &[4, 12, 16],
            true,
            false,
            Some(|| Some(schemes::c5_special_published().all_labels())),
        ),
        fixture(
            "c5-c4-special",
            "(2,4,6,10,16), (1,9,18,26) with isolates 27, 44",
            vec![c(5, &[2, 4, 6, 10, 16]), c(4, &[1, 9, 18, 26])],
            &[27, 44],
            true,
            true,
            Some(|| strategy("C5+C4")),
        ),
        fixture(
            "c6-interleaved",
            "6-cycle (4,9,6,7,8,5) with isolates 13, 15",
            vec![c(6, &[4, 9, 6, 7, 8, 5])],
            &[13, 15],
            true,
            true,
            Some(|| schemes::first_cycle_ntap(6).ok().map(|s| s.0.all_labels())),
        ),
        fixture(
            "c7-interleaved",
            "7-cycle (4,6,9,8,7,10,5) with isolates 15, 17",
            vec![c(7, &[4, 6, 9, 8, 7, 10, 5])],
            &[15, 17],
            true,
            true,
            Some(|| schemes::first_cycle_ntap(7).ok().map(|s| s.0.all_labels())),
        ),
        fixture(
            "three-c5",
            "Fibonacci chain of three 5-cycles with isolates 474, 658",
            vec![c(5, &[1, 2, 3, 5, 8]), c(5, &[9, 13, 22, 35, 57]), c(5, &[66, 92, 158, 250, 408])],
            &[474, 658],
            true,
            true,
            Some(|| strategy("3C5")),
        ),
        fixture(
            "three-c5-special",
            "chain from the special 5-cycle with isolates 360, 504; 3 + 4 = 7",
            vec![c(5, &[1, 2, 7, 9, 3]), c(5, &[4, 12, 16, 28, 44]), c(5, &[48, 72, 120, 192, 312])],
            &[360, 504],
            true,
            false,
            None,
        ),
        fixture(
            "c5-c4-c3",
            "(2,4,6,10,16), (1,9,18,26), (27,44,71) with isolates 98, 115",
            vec![c(5, &[2, 4, 6, 10, 16]), c(4, &[1, 9, 18, 26]), c(3, &[27, 44, 71])],
            &[98, 115],
            true,
            true,
            Some(c5_c4_then_c3),
        ),
        fixture(
            "c5-c3-c4",
            "(4,8,28,36,12), (16,48,64), (5,3,25,23) with isolates 124, 140",
            vec![c(5, &[4, 8, 28, 36, 12]), c(3, &[16, 48, 64]), c(4, &[5, 3, 25, 23])],
            &[124, 140],
            true,
            false,
            None,
        ),
        fixture(
            "c5-c3-special",
            "(1,2,7,9,3), (4,12,16) with isolates 20, 28",
            vec![c(5, &[1, 2, 7, 9, 3]), c(3, &[4, 12, 16])],
            &[20, 28],
            true,
            false,
            None,
        ),
        fixture(
            "c4-p2-printed",
            "(1,7,13,19), path (20,32) with isolates 8, 44; 20 + 32 = 52 is missing",
            vec![c(4, &[1, 7, 13, 19]), p(2, &[20, 32])],
            &[8, 44],
            true,
            false,
            None,
        ),
        fixture(
            "c4-p2-corrected",
            "(1,7,13,19), path (20,32) with isolates 8, 52",
            vec![c(4, &[1, 7, 13, 19]), p(2, &[20, 32])],
            &[8, 52],
            true,
            true,
            Some(|| strategy("C4+P2")),
        ),
        fixture(
            "c4-p3",
            "(1,3,9,11), path (12,4,16), isolate 20",
            vec![c(4, &[1, 3, 9, 11]), p(3, &[12, 4, 16])],
            &[20],
            true,
            true,
            Some(|| strategy("C4+P3")),
        ),
        fixture(
            "c4-p4",
            "(1,2,6,11), path (17,3,8,12), isolate 20",
            vec![c(4, &[1, 2, 6, 11]), p(4, &[17, 3, 8, 12])],
            &[20],
            true,
            true,
            Some(|| strategy("C4+P4")),
        ),
        fixture(
            "c4-p5",
            "(2,5,8,11), path (26,13,7,19,20), isolate 39",
            vec![c(4, &[2, 5, 8, 11]), p(5, &[26, 13, 7, 19, 20])],
            &[39],
            true,
            true,
            Some(|| strategy("C4+P5")),
        ),
    ];
    out.push(Fixture {
        name: "k4",
        description: "K4 labelled 1, 5, 9, 13 with isolates 6, 10, 14, 18, 22",
        shape: Shape::Complete,
        components: vec![(Component::Path(4), labels(&[1, 5, 9, 13]))],
        isolates: labels(&[6, 10, 14, 18, 22]),
        published_valid: true,
        expected_valid: true,
        reproduce: Some(|| schemes::complete_graph(4).ok().map(|l| l.all_labels())),
    });
    out
}

/// The `C5 + C4` special labelling continued by a triangle.
fn c5_c4_then_c3() -> Option<Vec<Label>> {
    use sumlabel_core::strategy::{LabellingState, Step};
    let (a, b, cc) = (label(2), label(4), label(1));
    let (base, ntap) = schemes::c5_c4_special(&a, &b, &cc).ok()?;
    let state = LabellingState::start(base, Some(ntap), Step::C5C4Special { a, b, c: cc }).ok()?;
    Some(state.append_cycle(3).ok()?.placed.all_labels())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_matches_its_expectation() {
        for f in all() {
            assert_eq!(f.verify().is_valid(), f.expected_valid, "{}", f.name);
            if let Some(r) = f.reproduced() {
                assert!(r, "{} not reproduced", f.name);
            }
        }
    }
}
