//! The structure report: socle, semisimplicity and the decomposition of a
//! semisimple algebra into one `M_∞(K)` per class of line points.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::algebra::{equals, matrix_unit, mul, Element};
use crate::analysis::{
    is_semisimple, line_point_classes, saturated_hereditary_closure, socle_essential, socle_is_zero, socle_vertices,
    AnalysisOptions, Verdict3, VertexSet,
};
use crate::error::Result;
use crate::graph::{KGraph, KGraphPresentation, LevelPresentation, ValidationReport, VertexId};

pub const SCHEMA_VERSION: u32 = 1;
pub const M_INFINITY: &str = "M_∞(K)";

#[derive(Clone, Debug, Serialize)]
pub struct ClassSummary {
    pub representative: VertexId,
    /// Human-readable description of the saturated hereditary closure.
    pub closure_label: String,
    pub closure: VertexSet,
}

#[derive(Clone, Debug, Serialize)]
pub struct SocleSummary {
    /// `None` when the line points could not all be decided.
    pub vertices: Option<VertexSet>,
    pub is_zero: Verdict3<String, VertexId>,
    pub essential: Verdict3<String, VertexId>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summand {
    pub algebra: &'static str,
    pub representative: VertexId,
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub schema_version: u32,
    pub depth_bound: usize,
    pub validation: ValidationReport,
    pub line_point_classes: Vec<ClassSummary>,
    /// False when further classes may exist beyond those listed.
    pub classes_complete: bool,
    pub socle: SocleSummary,
    pub semisimple: Verdict3<String, VertexId>,
    pub decomposition: Vec<Summand>,
    /// Set when the graph is certified to have no periodic paths, so each class ideal
    /// is a minimal ideal.
    pub minimal_class_ideals: bool,
    pub notes: Vec<String>,
}

impl StructureReport {
    /// True when any verdict in the report is unknown.
    pub fn has_unknown(&self) -> bool {
        self.socle.vertices.is_none()
            || self.socle.is_zero.is_unknown()
            || self.socle.essential.is_unknown()
            || self.semisimple.is_unknown()
            || !self.classes_complete
    }
}

/// Periodic paths are ruled out when every infinite path is rank certified: always on
/// `Omega_k`, and on a level 1-graph whose same-level edges form no cycle.
fn certifies_no_periodic_paths(g: &KGraphPresentation) -> bool {
    match g {
        KGraphPresentation::Omega(_) => true,
        KGraphPresentation::Level(l) if l.rank() == 1 => same_level_acyclic(l),
        _ => false,
    }
}

fn same_level_acyclic(l: &LevelPresentation) -> bool {
    // a 1-graph path is periodic iff it runs around a cycle; edges never climb a level,
    // so a cycle lives on core edges between core vertices or on drop-0 block edges
    let mut succ: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for e in l.core_edges() {
        if l.split_block(&e.source).is_none() {
            succ.entry(e.range.to_string()).or_default().push(e.source.to_string());
        }
    }
    for t in l.block_edges().iter().filter(|t| t.drop == 0) {
        succ.entry(format!("@{}", t.range))
            .or_default()
            .push(format!("@{}", t.source));
    }
    let mut done: BTreeSet<String> = BTreeSet::new();
    fn cyclic(
        v: &str,
        succ: &BTreeMap<String, Vec<String>>,
        stack: &mut BTreeSet<String>,
        done: &mut BTreeSet<String>,
    ) -> bool {
        if done.contains(v) {
            return false;
        }
        if !stack.insert(v.to_string()) {
            return true;
        }
        let found = succ.get(v).into_iter().flatten().any(|u| cyclic(u, succ, stack, done));
        stack.remove(v);
        done.insert(v.to_string());
        found
    }
    let starts: Vec<String> = succ.keys().cloned().collect();
    starts
        .iter()
        .all(|v| !cyclic(v, &succ, &mut BTreeSet::new(), &mut done))
}

pub fn analyze(g: &KGraphPresentation, opts: AnalysisOptions) -> Result<StructureReport> {
    let validation = g.validate();
    let unknown = Verdict3::Unknown {
        bound: opts.depth_bound,
    };
    if !validation.ok {
        return Ok(StructureReport {
            schema_version: SCHEMA_VERSION,
            depth_bound: opts.depth_bound,
            validation,
            line_point_classes: Vec::new(),
            classes_complete: false,
            socle: SocleSummary {
                vertices: None,
                is_zero: unknown.clone(),
                essential: unknown.clone(),
            },
            semisimple: unknown,
            decomposition: Vec::new(),
            minimal_class_ideals: false,
            notes: vec!["validation failed; no analysis was run".into()],
        });
    }
    let mut notes = Vec::new();
    let classes = line_point_classes(g, opts)?;
    let line_point_classes: Vec<ClassSummary> = classes
        .classes
        .iter()
        .map(|c| ClassSummary {
            representative: c.representative.clone(),
            closure_label: c.closure.to_string(),
            closure: c.closure.clone(),
        })
        .collect();
    if !classes.complete {
        notes.push(format!(
            "line-point classes are sampled from a finite window or undecided at depth {}; the list may be truncated",
            opts.depth_bound
        ));
    }
    let vertices = socle_vertices(g, opts).ok();
    let semisimple = is_semisimple(g, opts)?;
    let mut decomposition = Vec::new();
    if semisimple.is_yes() {
        decomposition = classes
            .classes
            .iter()
            .map(|c| Summand {
                algebra: M_INFINITY,
                representative: c.representative.clone(),
            })
            .collect();
        for (i, a) in classes.classes.iter().enumerate() {
            for b in &classes.classes[i + 1..] {
                if !a.closure.intersection(&b.closure, g).is_empty() {
                    notes.push(format!(
                        "internal check failed: closures of {} and {} overlap",
                        a.representative, b.representative
                    ));
                }
            }
        }
        // a vertex may sit in no single class closure yet in the closure of their union
        let union = classes
            .classes
            .iter()
            .fold(VertexSet::empty(g), |acc, c| acc.union(&c.closure, g));
        if classes.complete && !saturated_hereditary_closure(g, &union)?.is_all(g) {
            notes.push("internal check failed: the class closures do not generate every vertex".into());
        }
    }
    let minimal_class_ideals = !classes.classes.is_empty() && certifies_no_periodic_paths(g);
    if minimal_class_ideals {
        notes.push("no periodic paths: the ideal of each class is a minimal ideal".into());
    }
    notes.push("simplicity is not assessed".into());
    Ok(StructureReport {
        schema_version: SCHEMA_VERSION,
        depth_bound: opts.depth_bound,
        validation,
        line_point_classes,
        classes_complete: classes.complete,
        socle: SocleSummary {
            vertices,
            is_zero: socle_is_zero(g, opts)?,
            essential: socle_essential(g, opts)?,
        },
        semisimple,
        decomposition,
        minimal_class_ideals,
        notes,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct MatrixUnitCheck {
    pub representative: VertexId,
    pub bound: u32,
    pub identities_checked: usize,
    pub passed: bool,
    /// The first failing identity and the offending element.
    pub counterexample: Option<String>,
}

/// Checks `e_{i,j} e_{h,l} = δ_{j,h} e_{i,l}` and `e_{i,j}* = e_{j,i}` for all indices up
/// to `bound` at every class representative.
pub fn verify_matrix_units(g: &KGraphPresentation, report: &StructureReport, bound: u32) -> Vec<MatrixUnitCheck> {
    let opts = AnalysisOptions {
        depth_bound: report.depth_bound,
    };
    report
        .line_point_classes
        .iter()
        .map(|c| {
            let v = &c.representative;
            let mut check = MatrixUnitCheck {
                representative: v.clone(),
                bound,
                identities_checked: 0,
                passed: true,
                counterexample: None,
            };
            if let Err(e) = check_units(g, v, bound, opts, &mut check) {
                check.passed = false;
                check.counterexample = Some(format!("error: {e}"));
            }
            check
        })
        .collect()
}

fn check_units(
    g: &KGraphPresentation,
    v: &VertexId,
    bound: u32,
    opts: AnalysisOptions,
    check: &mut MatrixUnitCheck,
) -> Result<()> {
    let n = bound + 1;
    let mut units: BTreeMap<(u32, u32), Element> = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            units.insert((i, j), matrix_unit(g, v, i, j, opts)?);
        }
    }
    let zero = Element::zero(g);
    for ((i, j), e) in &units {
        check.identities_checked += 1;
        if e.involution() != units[&(*j, *i)] {
            check.passed = false;
            check.counterexample = Some(format!(
                "e({i},{j})* = {} but e({j},{i}) = {}",
                e.involution(),
                units[&(*j, *i)]
            ));
            return Ok(());
        }
        for ((h, l), f) in &units {
            let prod = mul(g, e, f)?;
            let expected = if j == h { &units[&(*i, *l)] } else { &zero };
            check.identities_checked += 1;
            if !equals(g, &prod, expected)? {
                check.passed = false;
                check.counterexample = Some(format!("e({i},{j}) e({h},{l}) = {prod}, expected {expected}"));
                return Ok(());
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

impl std::str::FromStr for Format {
    type Err = crate::error::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            _ => Err(crate::error::Error::Parse(format!(
                "unknown format {s:?}; expected json or text"
            ))),
        }
    }
}

fn verdict_text<Y, N: std::fmt::Display>(v: &Verdict3<Y, N>, no: &str) -> String {
    match v {
        Verdict3::Yes(_) => "yes".into(),
        Verdict3::No(w) => format!("no ({no} {w})"),
        Verdict3::Unknown { bound } => format!("unknown at depth {bound}"),
    }
}

pub fn render(report: &StructureReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => render_text(report),
    }
}

fn render_text(r: &StructureReport) -> String {
    let mut out = String::new();
    if r.validation.ok {
        out.push_str("validation: ok\n");
    } else {
        out.push_str("validation: failed\n");
        for v in &r.validation.violations {
            let _ = writeln!(out, "  {:?}: {}", v.kind, v.detail);
        }
    }
    let _ = writeln!(
        out,
        "line-point classes: {}{}",
        r.line_point_classes.len(),
        if r.classes_complete {
            ""
        } else {
            " (possibly truncated)"
        }
    );
    for c in &r.line_point_classes {
        let _ = writeln!(out, "  class of {}: closure {}", c.representative, c.closure_label);
    }
    match (&r.socle.is_zero, &r.socle.vertices) {
        (Verdict3::Yes(_), _) => out.push_str("socle: zero\n"),
        (Verdict3::No(_), Some(vs)) => {
            let _ = writeln!(out, "socle: nonzero; vertices {vs}");
        }
        (Verdict3::No(v), None) => {
            let _ = writeln!(out, "socle: nonzero (contains p_{v}); vertices undecided");
        }
        (Verdict3::Unknown { bound }, _) => {
            let _ = writeln!(out, "socle: unknown at depth {bound}");
        }
    }
    let _ = writeln!(
        out,
        "socle essential: {}",
        verdict_text(&r.socle.essential, "does not connect to a line point:")
    );
    match &r.semisimple {
        Verdict3::Yes(_) => {
            let _ = writeln!(
                out,
                "semisimple: yes; summands: {} × {M_INFINITY}",
                r.decomposition.len()
            );
            for (i, s) in r.decomposition.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "  summand {}: {} for the class of {}",
                    i + 1,
                    s.algebra,
                    s.representative
                );
            }
        }
        v => {
            let _ = writeln!(
                out,
                "semisimple: {}",
                verdict_text(v, "outside the closure of the line points:")
            );
        }
    }
    if !r.notes.is_empty() {
        out.push_str("notes:\n");
        for n in &r.notes {
            let _ = writeln!(out, "  - {n}");
        }
    }
    out
}
