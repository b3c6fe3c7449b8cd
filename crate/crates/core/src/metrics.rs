//! Ranges, storage estimates and growth tables.

use alloc::vec::Vec;
use core::fmt;
use core::ops::RangeInclusive;
use core::str::FromStr;

use num_traits::ToPrimitive;

use crate::graph::{Component, GraphSpec};
use crate::schemes::{self, SchemeLabelling};
use crate::{label, Label};

/// `max - min` over all labels, or `None` for an empty set.
pub fn range_of<'a>(labels: impl IntoIterator<Item = &'a Label>) -> Option<Label> {
    let mut it = labels.into_iter();
    let first = it.next()?;
    let (lo, hi) = it.fold((first, first), |(lo, hi), l| (lo.min(l), hi.max(l)));
    Some(hi - lo)
}

/// Lower bound `2n - (max_degree - min_degree) - 2` on the range of any sum
/// labelling of a graph with `n` vertices.
pub fn range_floor(n: usize, max_degree: usize, min_degree: usize) -> usize {
    (2 * n).saturating_sub(max_degree - min_degree + 2)
}

pub fn range_lower_bound(spec: &GraphSpec) -> usize {
    range_floor(spec.order(), spec.max_degree(), spec.min_degree())
}

/// `ceil(log2 x)`, with `0` for `x <= 1`.
pub fn ceil_log2(x: &Label) -> u64 {
    if x <= &Label::from(1u32) {
        0
    } else {
        (x - 1u32).bits()
    }
}

/// Bits needed to store a labelling as: vertex count and smallest label
/// (each with a length prefix), then every label as an offset from the
/// smallest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StorageEstimate {
    pub bits: u64,
    pub header_bits: u64,
    pub per_label_bits: u64,
    pub label_count: u64,
    pub range: Label,
}

/// `2(ceil_log2 n + ceil_log2 min) + count * ceil_log2 range`. `None` for an
/// empty label set.
pub fn storage_bits(labels: &[Label], n: usize) -> Option<StorageEstimate> {
    let min = labels.iter().min()?;
    let range = range_of(labels)?;
    let header_bits = 2 * (ceil_log2(&Label::from(n)) + ceil_log2(min));
    let per_label_bits = ceil_log2(&range);
    let label_count = labels.len() as u64;
    Some(StorageEstimate { bits: header_bits + label_count * per_label_bits, header_bits, per_label_bits, label_count, range })
}

/// `a / b` as a float, accurate even when both exceed the float range.
pub fn ratio(a: &Label, b: &Label) -> f64 {
    let shift = b.bits().max(a.bits()).saturating_sub(60);
    let (a, b) = (a >> shift, b >> shift);
    a.to_f64().unwrap_or(f64::INFINITY) / b.to_f64().unwrap_or(f64::INFINITY)
}

/// Whether `|a/b - phi| < 1/eps_den`, decided exactly: phi is the positive
/// root of `x^2 - x - 1`, which is increasing past 1/2, so the test is
/// `f(a/b - eps) < 0 < f(a/b + eps)`.
pub fn near_golden_ratio(a: &Label, b: &Label, eps_den: &Label) -> bool {
    // f(p/q) has the sign of p^2 - pq - q^2.
    let negative = |p: &Label, q: &Label| p * p < p * q + q * q;
    let scaled = a * eps_den;
    let q = b * eps_den;
    if &scaled <= b {
        return false;
    }
    let below = &scaled - b;
    let above = &scaled + b;
    negative(&below, &q) && !negative(&above, &q) && &above * &above != &above * &q + &q * &q
}

/// Schemes with a growth table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemeId {
    /// The full strategy on `kC4`, parameter `k >= 2`.
    Kc4,
    /// `c4_linear_exponential(k)`.
    C4LinearExponential,
    /// `matching_exponential(m)`.
    MatchingExponential,
    /// Arithmetic matching scheme on `m` edges.
    MatchingArithmetic,
    /// `fibonacci_path(1, 2, k)`.
    FibonacciPath,
    /// `fibonacci_cycle(1, 2, n)`.
    FibonacciCycle,
    /// `triangles_chain(1, 2, l)`.
    Triangles,
}

impl SchemeId {
    pub const ALL: [SchemeId; 7] = [
        SchemeId::Kc4,
        SchemeId::C4LinearExponential,
        SchemeId::MatchingExponential,
        SchemeId::MatchingArithmetic,
        SchemeId::FibonacciPath,
        SchemeId::FibonacciCycle,
        SchemeId::Triangles,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SchemeId::Kc4 => "kc4",
            SchemeId::C4LinearExponential => "c4-linexp",
            SchemeId::MatchingExponential => "matching-exp",
            SchemeId::MatchingArithmetic => "matching-arith",
            SchemeId::FibonacciPath => "fib-path",
            SchemeId::FibonacciCycle => "fib-cycle",
            SchemeId::Triangles => "triangles",
        }
    }

    /// Smallest admissible parameter.
    pub fn min_param(self) -> usize {
        match self {
            SchemeId::Kc4 => 2,
            SchemeId::FibonacciPath => 2,
            SchemeId::FibonacciCycle => 3,
            _ => 1,
        }
    }

    pub fn build(self, param: usize) -> Result<SchemeLabelling, MetricsError> {
        if param < self.min_param() {
            return Err(MetricsError::Parameter { scheme: self, param });
        }
        let one = label(1);
        let two = label(2);
        let out = match self {
            SchemeId::Kc4 => {
                let spec = GraphSpec::new(alloc::vec![Component::Cycle(4); param]).expect("non-empty");
                crate::strategy::label_graph(&spec).map(|g| g.labelling).map_err(|_| MetricsError::Parameter { scheme: self, param })?
            }
            SchemeId::C4LinearExponential => schemes::c4_linear_exponential(param)?,
            SchemeId::MatchingExponential => schemes::matching_exponential(param)?,
            SchemeId::MatchingArithmetic => schemes::matching_arithmetic_for_order(2 * param)?,
            SchemeId::FibonacciPath => schemes::fibonacci_path(&one, &two, param)?,
            SchemeId::FibonacciCycle if param == 4 => return Err(MetricsError::Parameter { scheme: self, param }),
            SchemeId::FibonacciCycle => schemes::fibonacci_cycle(&one, &two, param)?,
            SchemeId::Triangles => schemes::triangles_chain(&one, &two, param)?,
        };
        Ok(out)
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SchemeId {
    type Err = MetricsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SchemeId::ALL.into_iter().find(|id| id.name() == s).ok_or(MetricsError::UnknownScheme)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MetricsError {
    #[error("unknown scheme")]
    UnknownScheme,
    #[error("parameter {param} is not valid for {scheme}")]
    Parameter { scheme: SchemeId, param: usize },
    #[error(transparent)]
    Scheme(#[from] schemes::SchemeError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthRow {
    pub param: usize,
    /// Vertices of the labelled graph, isolates excluded.
    pub n: usize,
    pub min_label: Label,
    pub max_label: Label,
    pub range: Label,
    /// `max_label` over the previous row's `max_label`.
    pub ratio: Option<f64>,
}

pub fn growth_table(scheme: SchemeId, params: RangeInclusive<usize>) -> Result<Vec<GrowthRow>, MetricsError> {
    let mut rows: Vec<GrowthRow> = Vec::new();
    for param in params {
        if scheme == SchemeId::FibonacciCycle && param == 4 {
            continue;
        }
        let labelling = scheme.build(param)?;
        let all = labelling.all_labels();
        let max_label = all.iter().max().expect("non-empty").clone();
        let min_label = all.iter().min().expect("non-empty").clone();
        let ratio = rows.last().map(|prev| ratio(&max_label, &prev.max_label));
        rows.push(GrowthRow { param, n: labelling.vertex_labels().count(), range: &max_label - &min_label, min_label, max_label, ratio });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labels;

    #[test]
    fn ranges() {
        let m = schemes::matching_arithmetic_for_order(16).unwrap();
        assert_eq!(range_of(&m.all_labels()), Some(label(31)));
        assert_eq!(range_of(&labels(&[5])), Some(label(0)));
        assert_eq!(range_of(&labels(&[])), None);
    }

    #[test]
    fn lower_bounds() {
        let s = |t: &str| t.parse::<GraphSpec>().unwrap();
        assert_eq!(range_lower_bound(&s("2C4")), 14);
        assert_eq!(range_lower_bound(&s("P2")), 2);
        assert_eq!(range_lower_bound(&s("C3+P2")), 7);
    }

    #[test]
    fn storage() {
        let e = storage_bits(&labels(&[1, 2, 3]), 2).unwrap();
        assert_eq!((e.bits, e.header_bits, e.per_label_bits, e.label_count), (5, 2, 1, 3));
        let d = storage_bits(&labels(&[2, 4, 6]), 2).unwrap();
        assert_eq!(d.label_count, 3);
        assert!(d.per_label_bits >= e.per_label_bits);
    }

    #[test]
    fn ceil_log2_values() {
        let v: Vec<u64> = [0u64, 1, 2, 3, 4, 5, 8, 9].iter().map(|&x| ceil_log2(&label(x))).collect();
        assert_eq!(v, [0, 0, 1, 2, 2, 3, 3, 4]);
    }

    #[test]
    fn golden_ratio_check() {
        let f = schemes::fibonacci_sequence(&label(1), &label(2), 40);
        let eps = label(1_000_000);
        assert!(near_golden_ratio(&f[39], &f[38], &eps));
        assert!(!near_golden_ratio(&f[5], &f[4], &eps));
        assert!(!near_golden_ratio(&label(2), &label(1), &eps));
    }

    #[test]
    fn kc4_table() {
        let rows = growth_table(SchemeId::Kc4, 2..=5).unwrap();
        assert_eq!(rows[0].max_label, label(32));
        assert_eq!(rows[1].ratio, Some(4.0));
        assert_eq!("kc4".parse::<SchemeId>(), Ok(SchemeId::Kc4));
        assert!("nope".parse::<SchemeId>().is_err());
    }
}
