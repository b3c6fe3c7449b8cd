//! Reports printed by the CLI, in text and JSON.
//!
//! Labels are serialized as decimal strings so JSON consumers never lose
//! precision. Field order is fixed by the struct definitions.

use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;
use sumlabel_core::metrics::{self, GrowthRow};
use sumlabel_core::search::{SearchOutcome, SearchResult};
use sumlabel_core::verify::{Certificate, ViolationKind};
use sumlabel_core::{Label, LabelledGraph, NtapWitness};

use crate::fixtures::Fixture;

fn strings(labels: &[Label]) -> Vec<String> {
    labels.iter().map(Label::to_string).collect()
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

#[derive(Debug, Serialize)]
pub struct ComponentReport {
    pub kind: String,
    pub labels: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct NtapReport {
    pub first: String,
    pub offset: String,
    pub terms: [String; 3],
}

impl From<&NtapWitness> for NtapReport {
    fn from(w: &NtapWitness) -> Self {
        let [a, b, c] = w.terms();
        NtapReport { first: w.first.to_string(), offset: w.offset.to_string(), terms: [a.to_string(), b.to_string(), c.to_string()] }
    }
}

#[derive(Debug, Serialize)]
pub struct LabelReport {
    pub spec: String,
    pub components: Vec<ComponentReport>,
    pub isolates: Vec<String>,
    pub sigma: usize,
    pub ntap: Option<NtapReport>,
    pub min_label: String,
    pub max_label: String,
    pub range: String,
    pub range_floor: usize,
    pub storage_bits: u64,
    pub trace: Vec<String>,
}

impl LabelReport {
    pub fn new(spec: &str, out: &LabelledGraph) -> Self {
        let l = &out.labelling;
        let all = l.all_labels();
        let n = l.components.iter().map(|(c, _)| c.order()).sum();
        let storage = metrics::storage_bits(&all, n).expect("strategy output is non-empty");
        let range_floor = l.spec().map(|s| metrics::range_lower_bound(&s)).unwrap_or(0);
        LabelReport {
            spec: spec.to_string(),
            components: l.components.iter().map(|(c, labels)| ComponentReport { kind: c.to_string(), labels: strings(labels) }).collect(),
            isolates: strings(&l.isolates),
            sigma: out.sigma,
            ntap: out.ntap.as_ref().map(NtapReport::from),
            min_label: l.min_label().map(|x| x.to_string()).unwrap_or_default(),
            max_label: l.max_label().map(|x| x.to_string()).unwrap_or_default(),
            range: storage.range.to_string(),
            range_floor,
            storage_bits: storage.bits,
            trace: out.trace.iter().map(ToString::to_string).collect(),
        }
    }

    /// The labelling as a document that `verify` accepts, followed by
    /// commented metadata.
    pub fn text(&self, trace: bool) -> String {
        let mut s = String::new();
        for c in &self.components {
            writeln!(s, "{}: {}", c.kind, c.labels.join(", ")).unwrap();
        }
        writeln!(s, "I: {}", self.isolates.join(", ")).unwrap();
        writeln!(s, "# spec: {}", self.spec).unwrap();
        writeln!(s, "# sigma: {}", self.sigma).unwrap();
        if let Some(w) = &self.ntap {
            writeln!(s, "# ntap: {} (offset {} absent)", w.terms.join(", "), w.offset).unwrap();
        }
        writeln!(s, "# labels: {}..{}, range {} (floor {})", self.min_label, self.max_label, self.range, self.range_floor).unwrap();
        writeln!(s, "# storage: {} bits", self.storage_bits).unwrap();
        if trace {
            for (i, step) in self.trace.iter().enumerate() {
                writeln!(s, "# step {}: {step}", i + 1).unwrap();
            }
        }
        s
    }
}

#[derive(Debug, Serialize)]
pub struct ViolationReport {
    pub kind: String,
    pub witness: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub valid: bool,
    pub vertices: usize,
    pub isolates: usize,
    pub violations: Vec<ViolationReport>,
    /// 4-cycle structural checks; only meaningful when `valid`.
    pub c4_checks: Vec<ViolationReport>,
}

pub fn kind_name(kind: ViolationKind) -> String {
    format!("{kind:?}")
}

fn violations(cert: &Certificate) -> Vec<ViolationReport> {
    cert.violations.iter().map(|v| ViolationReport { kind: kind_name(v.kind), witness: strings(&v.witness) }).collect()
}

impl VerifyReport {
    pub fn new(vertices: usize, isolates: usize, cert: &Certificate, c4: &Certificate) -> Self {
        VerifyReport { valid: cert.is_valid(), vertices, isolates, violations: violations(cert), c4_checks: violations(c4) }
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        let verdict = if self.valid { "valid" } else { "invalid" };
        writeln!(s, "{verdict}: {} vertices, {} isolates", self.vertices, self.isolates).unwrap();
        for v in &self.violations {
            writeln!(s, "  {} ({})", v.kind, v.witness.join(", ")).unwrap();
        }
        for v in &self.c4_checks {
            writeln!(s, "  4-cycle check {} ({})", v.kind, v.witness.join(", ")).unwrap();
        }
        s
    }
}

#[derive(Debug, Serialize)]
pub struct SearchReport {
    pub command: &'static str,
    pub spec: String,
    pub max_label: u32,
    pub max_isolates: usize,
    pub outcome: &'static str,
    pub isolates: Option<usize>,
    pub labels: Vec<u32>,
    pub vertex_labels: Vec<String>,
    pub isolate_labels: Vec<String>,
    pub range: Option<u32>,
    /// Isolate counts with no labelling inside the bound.
    pub refuted: Vec<usize>,
    pub nodes: u64,
    pub evidence: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl SearchReport {
    pub fn new(command: &'static str, spec: &str, max_label: u32, max_isolates: usize, r: &SearchResult, timing: bool) -> Self {
        let elapsed_ms = if timing { r.elapsed.map(|d: Duration| d.as_secs_f64() * 1e3) } else { None };
        let mut out = SearchReport {
            command,
            spec: spec.to_string(),
            max_label,
            max_isolates,
            outcome: "refuted",
            isolates: None,
            labels: Vec::new(),
            vertex_labels: Vec::new(),
            isolate_labels: Vec::new(),
            range: r.range(),
            refuted: r.refuted.clone(),
            nodes: r.nodes,
            evidence: "bounded search; a refutation holds only for labels up to max_label",
            elapsed_ms,
        };
        match &r.outcome {
            SearchOutcome::Found { isolates, labels, witness } => {
                out.outcome = "found";
                out.isolates = Some(*isolates);
                out.labels = labels.clone();
                out.vertex_labels = strings(&witness.vertices);
                out.isolate_labels = strings(&witness.isolates);
            }
            SearchOutcome::RefutedUpTo { isolates, .. } => out.refuted = isolates.clone(),
        }
        out
    }

    pub fn found(&self) -> bool {
        self.outcome == "found"
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{} {}: labels at most {}, at most {} isolates", self.command, self.spec, self.max_label, self.max_isolates).unwrap();
        if !self.refuted.is_empty() {
            writeln!(s, "refuted up to {}: isolate counts {}", self.max_label, join(&self.refuted)).unwrap();
        }
        match self.isolates {
            Some(i) => {
                writeln!(s, "found: {i} isolates").unwrap();
                writeln!(s, "labels: {}", join(&self.labels)).unwrap();
                writeln!(s, "vertices: {}", self.vertex_labels.join(", ")).unwrap();
                writeln!(s, "isolates: {}", self.isolate_labels.join(", ")).unwrap();
                if let Some(r) = self.range {
                    writeln!(s, "range: {r}").unwrap();
                }
            }
            None => writeln!(s, "not found (bounded evidence only)").unwrap(),
        }
        writeln!(s, "nodes: {}", self.nodes).unwrap();
        if let Some(ms) = self.elapsed_ms {
            writeln!(s, "elapsed: {ms:.1} ms").unwrap();
        }
        s
    }
}

#[derive(Debug, Serialize)]
pub struct GrowthReportRow {
    pub param: usize,
    pub n: usize,
    pub min_label: String,
    pub max_label: String,
    pub range: String,
    pub ratio: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct BenchReport {
    pub scheme: &'static str,
    pub rows: Vec<GrowthReportRow>,
}

impl BenchReport {
    pub fn new(scheme: &'static str, rows: &[GrowthRow]) -> Self {
        let rows = rows
            .iter()
            .map(|r| GrowthReportRow {
                param: r.param,
                n: r.n,
                min_label: r.min_label.to_string(),
                max_label: r.max_label.to_string(),
                range: r.range.to_string(),
                ratio: r.ratio,
            })
            .collect();
        BenchReport { scheme, rows }
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{}", self.scheme).unwrap();
        writeln!(s, "{:>6} {:>6} {:>12} {:>24} {:>24} {:>10}", "param", "n", "min", "max", "range", "ratio").unwrap();
        for r in &self.rows {
            let ratio = r.ratio.map(|x| format!("{x:.6}")).unwrap_or_else(|| "-".into());
            writeln!(s, "{:>6} {:>6} {:>12} {:>24} {:>24} {:>10}", r.param, r.n, r.min_label, r.max_label, r.range, ratio).unwrap();
        }
        s
    }
}

#[derive(Debug, Serialize)]
pub struct FixtureReport {
    pub name: &'static str,
    pub description: &'static str,
    pub published_valid: bool,
    pub verified_valid: bool,
    pub expected_valid: bool,
    /// Whether the matching construction reproduces this label set.
    pub reproduced: Option<bool>,
    pub violations: Vec<ViolationReport>,
    pub ok: bool,
}

impl FixtureReport {
    pub fn new(f: &Fixture) -> Self {
        let cert = f.verify();
        let reproduced = f.reproduced();
        let verified_valid = cert.is_valid();
        FixtureReport {
            name: f.name,
            description: f.description,
            published_valid: f.published_valid,
            verified_valid,
            expected_valid: f.expected_valid,
            reproduced,
            violations: violations(&cert),
            ok: verified_valid == f.expected_valid && reproduced != Some(false),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct DemoReport {
    pub fixtures: Vec<FixtureReport>,
    pub ok: bool,
}

impl DemoReport {
    pub fn new(fixtures: &[Fixture]) -> Self {
        let fixtures: Vec<_> = fixtures.iter().map(FixtureReport::new).collect();
        let ok = fixtures.iter().all(|f| f.ok);
        DemoReport { fixtures, ok }
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        for f in &self.fixtures {
            let status = if f.ok { "ok  " } else { "DIFF" };
            let verdict = match (f.published_valid, f.verified_valid) {
                (true, true) => "valid",
                (false, false) => "invalid, as published",
                (true, false) => "invalid, published as valid",
                (false, true) => "valid, published as invalid",
            };
            let rebuilt = match f.reproduced {
                Some(true) => ", rebuilt",
                Some(false) => ", rebuild differs",
                None => "",
            };
            writeln!(s, "{status} {:<24} {verdict}{rebuilt}", f.name).unwrap();
            if !f.verified_valid {
                if let Some(v) = f.violations.first() {
                    writeln!(s, "     {} ({}) in {}", v.kind, v.witness.join(", "), f.description).unwrap();
                }
            }
        }
        s
    }
}
