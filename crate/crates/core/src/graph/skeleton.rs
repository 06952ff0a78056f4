use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::validate::{Violation, ViolationKind};
use super::{fingerprint_of, Edge, EdgeId, KGraph, VertexId};

/// One factorization square: the 2-path `left[0] . left[1]` equals `right[0] . right[1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Square {
    pub left: [EdgeId; 2],
    pub right: [EdgeId; 2],
}

impl Square {
    pub fn new(left: [&str; 2], right: [&str; 2]) -> Self {
        Square {
            left: [left[0].into(), left[1].into()],
            right: [right[0].into(), right[1].into()],
        }
    }
}

/// A finite colored skeleton with its factorization squares.
#[derive(Clone, Debug)]
pub struct FiniteSkeleton {
    k: usize,
    vertices: Vec<VertexId>,
    edges: Vec<Edge>,
    squares: Vec<Square>,
    vertex_set: BTreeSet<VertexId>,
    by_id: HashMap<EdgeId, Edge>,
    into: HashMap<(VertexId, usize), Vec<Edge>>,
    square_map: HashMap<(EdgeId, EdgeId), (EdgeId, EdgeId)>,
    conflicts: Vec<Violation>,
    fingerprint: u64,
}

impl FiniteSkeleton {
    pub fn new(k: usize, vertices: Vec<VertexId>, edges: Vec<Edge>, squares: Vec<Square>) -> Self {
        let vertex_set: BTreeSet<VertexId> = vertices.iter().cloned().collect();
        let mut by_id = HashMap::new();
        let mut into: HashMap<(VertexId, usize), Vec<Edge>> = HashMap::new();
        let mut conflicts = Vec::new();
        for e in &edges {
            if by_id.insert(e.id.clone(), e.clone()).is_some() {
                conflicts.push(Violation::new(
                    ViolationKind::DanglingEndpoint,
                    format!("duplicate edge id {}", e.id),
                    vec![e.id.to_string()],
                ));
            }
            into.entry((e.range.clone(), e.color)).or_default().push(e.clone());
        }
        for list in into.values_mut() {
            list.sort();
        }
        let mut square_map: HashMap<(EdgeId, EdgeId), (EdgeId, EdgeId)> = HashMap::new();
        let mut insert = |from: (EdgeId, EdgeId), to: (EdgeId, EdgeId), conflicts: &mut Vec<Violation>| match square_map
            .get(&from)
        {
            Some(existing) if *existing != to => conflicts.push(Violation::new(
                ViolationKind::NonBijectiveSquare,
                format!(
                    "2-path {}.{} is identified with both {}.{} and {}.{}",
                    from.0, from.1, existing.0, existing.1, to.0, to.1
                ),
                vec![from.0.to_string(), from.1.to_string()],
            )),
            Some(_) => {}
            None => {
                square_map.insert(from, to);
            }
        };
        for sq in &squares {
            let l = (sq.left[0].clone(), sq.left[1].clone());
            let r = (sq.right[0].clone(), sq.right[1].clone());
            insert(l.clone(), r.clone(), &mut conflicts);
            insert(r, l, &mut conflicts);
        }
        let mut text = format!("skeleton;k={k};");
        for v in &vertices {
            text.push_str(&format!("v:{v};"));
        }
        for e in &edges {
            text.push_str(&format!("e:{}:{}:{}:{};", e.id, e.color, e.range, e.source));
        }
        for s in &squares {
            text.push_str(&format!("s:{}.{}={}.{};", s.left[0], s.left[1], s.right[0], s.right[1]));
        }
        FiniteSkeleton {
            k,
            vertices,
            edges,
            squares,
            vertex_set,
            by_id,
            into,
            square_map,
            conflicts,
            fingerprint: fingerprint_of(&text),
        }
    }

    /// A 1-graph needs no squares.
    pub fn one_graph(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Self {
        FiniteSkeleton::new(
            1,
            vertices.iter().map(VertexId::new).collect(),
            edges.iter().map(|(id, r, s)| Edge::new(*id, 1, *r, *s)).collect(),
            Vec::new(),
        )
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn squares(&self) -> &[Square] {
        &self.squares
    }

    pub(crate) fn structural_violations(&self) -> Vec<Violation> {
        let mut out = self.conflicts.clone();
        let mut seen = BTreeSet::new();
        for v in &self.vertices {
            if !seen.insert(v.clone()) {
                out.push(Violation::new(
                    ViolationKind::DanglingEndpoint,
                    format!("duplicate vertex id {v}"),
                    vec![v.to_string()],
                ));
            }
        }
        for e in &self.edges {
            if e.color == 0 || e.color > self.k {
                out.push(Violation::new(
                    ViolationKind::DanglingEndpoint,
                    format!("edge {} has color {} outside 1..={}", e.id, e.color, self.k),
                    vec![e.id.to_string()],
                ));
            }
            for end in [&e.range, &e.source] {
                if !self.vertex_set.contains(end) {
                    out.push(Violation::new(
                        ViolationKind::DanglingEndpoint,
                        format!("edge {} refers to undeclared vertex {end}", e.id),
                        vec![e.id.to_string(), end.to_string()],
                    ));
                }
            }
        }
        for sq in &self.squares {
            for id in sq.left.iter().chain(&sq.right) {
                if !self.by_id.contains_key(id) {
                    out.push(Violation::new(
                        ViolationKind::DanglingEndpoint,
                        format!("square refers to undeclared edge {id}"),
                        vec![id.to_string()],
                    ));
                }
            }
        }
        out
    }
}

impl KGraph for FiniteSkeleton {
    fn rank(&self) -> usize {
        self.k
    }

    fn has_vertex(&self, v: &VertexId) -> bool {
        self.vertex_set.contains(v)
    }

    fn edges_into(&self, v: &VertexId, color: usize) -> Vec<Edge> {
        self.into
            .get(&(v.clone(), color))
            .map(|list| {
                list.iter()
                    .filter(|e| self.vertex_set.contains(&e.source))
                    .cloned()
                    .collect()
            })
            .unwrap_or_default()
    }

    fn edge(&self, id: &EdgeId) -> Option<Edge> {
        self.by_id.get(id).cloned()
    }

    fn square(&self, first: &Edge, second: &Edge) -> Option<(Edge, Edge)> {
        let (a, b) = self.square_map.get(&(first.id.clone(), second.id.clone()))?;
        Some((self.by_id.get(a)?.clone(), self.by_id.get(b)?.clone()))
    }

    fn fingerprint(&self) -> u64 {
        self.fingerprint
    }
}
