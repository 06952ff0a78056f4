use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{Edge, EdgeId, KGraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    NonBijectiveSquare,
    CubeFailure,
    SourceExists,
    NotRowFinite,
    DanglingEndpoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
    pub witness: Vec<String>,
}

impl Violation {
    pub fn new(kind: ViolationKind, detail: impl Into<String>, witness: Vec<String>) -> Self {
        Violation {
            kind,
            detail: detail.into(),
            witness,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn from_violations(mut violations: Vec<Violation>) -> Self {
        violations.sort_by(|a, b| (a.kind, &a.witness, &a.detail).cmp(&(b.kind, &b.witness, &b.detail)));
        violations.dedup();
        ValidationReport {
            ok: violations.is_empty(),
            violations,
        }
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}

/// Checks at one vertex `v`: no sources, squares bijective on 2-paths with range `v`,
/// and (for `k >= 3`) the cube condition on 3-paths with range `v`.
pub(crate) fn check_vertex<G: KGraph + ?Sized>(g: &G, v: &VertexId, out: &mut Vec<Violation>) {
    let k = g.rank();
    for color in 1..=k {
        if g.edges_into(v, color).is_empty() {
            out.push(Violation::new(
                ViolationKind::SourceExists,
                format!("vertex {v} receives no edge of color {color}"),
                vec![v.to_string()],
            ));
        }
    }
    if k < 2 {
        return;
    }
    // images[(i, j)] collects the (j, i)-paths hit by squares from (i, j)-paths at v.
    let mut images: HashMap<(EdgeId, EdgeId), (EdgeId, EdgeId)> = HashMap::new();
    for first in (1..=k).flat_map(|c| g.edges_into(v, c)) {
        for second in (1..=k)
            .filter(|&c| c != first.color)
            .flat_map(|c| g.edges_into(&first.source, c))
        {
            let pair = (first.id.clone(), second.id.clone());
            let Some((f2, e2)) = g.square(&first, &second) else {
                out.push(Violation::new(
                    ViolationKind::NonBijectiveSquare,
                    format!("no square for 2-path {}.{}", first.id, second.id),
                    vec![first.id.to_string(), second.id.to_string()],
                ));
                continue;
            };
            let shape_ok = f2.color == second.color
                && e2.color == first.color
                && f2.range == first.range
                && f2.source == e2.range
                && e2.source == second.source;
            if !shape_ok {
                out.push(Violation::new(
                    ViolationKind::NonBijectiveSquare,
                    format!(
                        "square {}.{} -> {}.{} does not preserve colors and endpoints",
                        first.id, second.id, f2.id, e2.id
                    ),
                    vec![first.id.to_string(), second.id.to_string()],
                ));
                continue;
            }
            match g.square(&f2, &e2) {
                Some((a, b)) if a.id == first.id && b.id == second.id => {}
                _ => out.push(Violation::new(
                    ViolationKind::NonBijectiveSquare,
                    format!(
                        "square {}.{} -> {}.{} is not inverted by the opposite square",
                        first.id, second.id, f2.id, e2.id
                    ),
                    vec![first.id.to_string(), second.id.to_string()],
                )),
            }
            let image = (f2.id.clone(), e2.id.clone());
            if let Some(prev) = images.insert(image.clone(), pair.clone()) {
                out.push(Violation::new(
                    ViolationKind::NonBijectiveSquare,
                    format!(
                        "2-paths {}.{} and {}.{} are both sent to {}.{}",
                        prev.0, prev.1, pair.0, pair.1, image.0, image.1
                    ),
                    vec![image.0.to_string(), image.1.to_string()],
                ));
            }
        }
    }
    if k >= 3 {
        check_cubes(g, v, out);
    }
}

fn swap(g: &(impl KGraph + ?Sized), word: &mut [Edge], at: usize) -> Option<()> {
    let (a, b) = g.square(&word[at], &word[at + 1])?;
    word[at] = a;
    word[at + 1] = b;
    Some(())
}

fn check_cubes<G: KGraph + ?Sized>(g: &G, v: &VertexId, out: &mut Vec<Violation>) {
    let k = g.rank();
    for e in (1..=k).flat_map(|c| g.edges_into(v, c)) {
        for f in (1..=k)
            .filter(|&c| c != e.color)
            .flat_map(|c| g.edges_into(&e.source, c))
        {
            for h in (1..=k)
                .filter(|&c| c != e.color && c != f.color)
                .flat_map(|c| g.edges_into(&f.source, c))
            {
                let start = [e.clone(), f.clone(), h.clone()];
                let mut left = start.clone();
                let mut right = start.clone();
                let a = swap(g, &mut left, 0)
                    .and_then(|_| swap(g, &mut left, 1))
                    .and_then(|_| swap(g, &mut left, 0));
                let b = swap(g, &mut right, 1)
                    .and_then(|_| swap(g, &mut right, 0))
                    .and_then(|_| swap(g, &mut right, 1));
                if a.is_none() || b.is_none() {
                    // missing squares are reported by the pairwise check
                    continue;
                }
                if left != right {
                    out.push(Violation::new(
                        ViolationKind::CubeFailure,
                        format!(
                            "3-path {}.{}.{} reorders to {}.{}.{} and {}.{}.{}",
                            e.id, f.id, h.id, left[0].id, left[1].id, left[2].id, right[0].id, right[1].id, right[2].id
                        ),
                        vec![e.id.to_string(), f.id.to_string(), h.id.to_string()],
                    ));
                }
            }
        }
    }
}
