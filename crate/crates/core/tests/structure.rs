mod common;

use kpgraph::analysis::{
    hereditary_closure, is_saturated_hereditary, line_point_classes, line_points, quotient_graph,
    saturated_hereditary_closure, socle_vertices, AnalysisOptions, VertexSet,
};
use kpgraph::graph::{comb, omega, one_vertex, FiniteSkeleton, KGraphPresentation, VertexId};
use kpgraph::io::{load, to_dot};
use kpgraph::report::{analyze, render, verify_matrix_units, Format};
use proptest::prelude::*;
use rand::Rng;

use common::*;

fn opts() -> AnalysisOptions {
    AnalysisOptions::default()
}

fn set(g: &KGraphPresentation, vs: &[&str]) -> VertexSet {
    let vs: Vec<VertexId> = vs.iter().map(|v| VertexId::new(*v)).collect();
    VertexSet::from_vertices(g, &vs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn closure_is_idempotent_and_monotone(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = corpus(1, seed).pop().unwrap();
        let vs = vertices(&g);
        let a: Vec<VertexId> = vs.iter().filter(|_| r.gen_bool(0.3)).cloned().collect();
        let mut b = a.clone();
        b.extend(vs.iter().filter(|_| r.gen_bool(0.3)).cloned());
        let ca = saturated_hereditary_closure(&g, &VertexSet::from_vertices(&g, &a).unwrap()).unwrap();
        let cb = saturated_hereditary_closure(&g, &VertexSet::from_vertices(&g, &b).unwrap()).unwrap();
        prop_assert!(is_saturated_hereditary(&g, &ca).unwrap());
        prop_assert!(ca.is_subset(&cb, &g));
        prop_assert!(saturated_hereditary_closure(&g, &ca).unwrap().set_eq(&ca, &g));
        let h = hereditary_closure(&g, &VertexSet::from_vertices(&g, &a).unwrap()).unwrap();
        prop_assert!(h.is_subset(&ca, &g));
    }

    #[test]
    fn quotients_validate(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = corpus(1, seed.wrapping_add(1)).pop().unwrap();
        let vs = vertices(&g);
        let w: Vec<VertexId> = vs.iter().filter(|_| r.gen_bool(0.3)).cloned().collect();
        let h = saturated_hereditary_closure(&g, &VertexSet::from_vertices(&g, &w).unwrap()).unwrap();
        let q = quotient_graph(&g, &h).unwrap();
        prop_assert!(q.validate().ok);
        let remaining = q.finite_vertices().unwrap();
        prop_assert!(remaining.iter().all(|v| !h.contains(&g, v)));
        prop_assert_eq!(remaining.len(), vs.iter().filter(|v| !h.contains(&g, v)).count());
    }
}

#[test]
fn hereditary_closure_follows_sources() {
    // a <- b <- c, d isolated with a loop
    let g = KGraphPresentation::Skeleton(FiniteSkeleton::one_graph(
        &["a", "b", "c", "d"],
        &[("x", "a", "b"), ("y", "b", "c"), ("z", "c", "c"), ("l", "d", "d")],
    ));
    assert!(g.validate().ok);
    let h = hereditary_closure(&g, &set(&g, &["a"])).unwrap();
    assert!(h.set_eq(&set(&g, &["a", "b", "c"]), &g));
    let s = saturated_hereditary_closure(&g, &set(&g, &["c"])).unwrap();
    assert!(s.set_eq(&set(&g, &["a", "b", "c"]), &g), "saturation pulls in b then a");
    assert!(!is_saturated_hereditary(&g, &set(&g, &["b", "c"])).unwrap());
}

#[test]
fn comb_classes_and_socle() {
    let g = KGraphPresentation::Level(comb(2).unwrap());
    let classes = line_point_classes(&g, opts()).unwrap();
    assert_eq!(classes.classes.len(), 2);
    assert!(classes.complete);
    let socle = socle_vertices(&g, opts()).unwrap();
    for c in &classes.classes {
        assert!(socle.contains(&g, &c.representative));
        assert!(c.closure.contains(&g, &c.representative));
    }
    let a = &classes.classes[0].closure;
    let b = &classes.classes[1].closure;
    assert!(a.intersection(b, &g).is_empty());
}

/// Quotienting by the closure of all but one class leaves exactly one class.
#[test]
fn quotient_isolates_a_class() {
    let g = KGraphPresentation::Level(comb(3).unwrap());
    let classes = line_point_classes(&g, opts()).unwrap().classes;
    for keep in 0..classes.len() {
        let others = classes
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != keep)
            .fold(VertexSet::empty(&g), |acc, (_, c)| acc.union(&c.closure, &g));
        let h = saturated_hereditary_closure(&g, &others).unwrap();
        let q = quotient_graph(&g, &h).unwrap();
        assert!(q.validate().ok);
        let left = line_point_classes(&q, opts()).unwrap();
        assert_eq!(left.classes.len(), 1, "keeping class {keep}");
    }
}

#[test]
fn omega_has_one_class_of_line_points() {
    for k in 1..=2 {
        let g = KGraphPresentation::Omega(omega(k).unwrap());
        let lp = line_points(&g, opts()).unwrap();
        assert!(lp.set.is_all(&g));
        assert_eq!(line_point_classes(&g, opts()).unwrap().classes.len(), 1);
    }
}

#[test]
fn one_vertex_graph_has_no_line_points() {
    let g = KGraphPresentation::Skeleton(one_vertex(2, &[2, 1], None).unwrap());
    let lp = line_points(&g, opts()).unwrap();
    assert!(lp.set.is_empty() && lp.is_exact());
    assert!(socle_vertices(&g, opts()).unwrap().is_empty());
}

#[test]
fn reports_are_deterministic() {
    for uri in ["builtin:comb:2", "builtin:omega:2", "builtin:onevertex:2:2,1"] {
        let g = load(uri).unwrap();
        let a = analyze(&g, opts()).unwrap();
        let b = analyze(&load(uri).unwrap(), opts()).unwrap();
        assert_eq!(render(&a, Format::Json), render(&b, Format::Json), "{uri}");
        assert_eq!(render(&a, Format::Text), render(&b, Format::Text), "{uri}");
    }
}

#[test]
fn report_json_round_trips() {
    let g = load("builtin:comb:2").unwrap();
    let text = render(&analyze(&g, opts()).unwrap(), Format::Json);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["schema_version"], 1);
    assert_eq!(value["decomposition"].as_array().unwrap().len(), 2);
    let again = serde_json::to_string_pretty(&value).unwrap();
    assert_eq!(serde_json::from_str::<serde_json::Value>(&again).unwrap(), value);
}

#[test]
fn report_never_claims_simplicity() {
    let g = load("builtin:omega:1").unwrap();
    let report = analyze(&g, opts()).unwrap();
    assert!(report.notes.iter().any(|n| n.contains("simplicity is not assessed")));
    assert!(!report.notes.iter().any(|n| n.contains("internal check failed")));
}

#[test]
fn matrix_units_verify_on_comb() {
    let g = load("builtin:comb:2").unwrap();
    let report = analyze(&g, opts()).unwrap();
    let checks = verify_matrix_units(&g, &report, 3);
    assert_eq!(checks.len(), 2);
    assert!(checks.iter().all(|c| c.passed && c.identities_checked > 0));
}

#[test]
fn invalid_graph_is_reported_not_analyzed() {
    // two edges of different colors into one vertex with no square between them
    let g = KGraphPresentation::Skeleton(FiniteSkeleton::new(
        2,
        vec![VertexId::new("v")],
        vec![
            kpgraph::graph::Edge::new("r", 1, "v", "v"),
            kpgraph::graph::Edge::new("b", 2, "v", "v"),
        ],
        vec![],
    ));
    let report = analyze(&g, opts()).unwrap();
    assert!(!report.validation.ok);
    assert!(report.decomposition.is_empty());
}

#[test]
fn dot_marks_truncation() {
    let finite = to_dot(&load("builtin:onevertex:2:1,1").unwrap(), 3);
    assert!(finite.starts_with("digraph kgraph {") && !finite.contains("truncated"));
    let infinite = to_dot(&load("builtin:omega:1").unwrap(), 2);
    assert!(infinite.contains("// truncated at depth 2"));
}
