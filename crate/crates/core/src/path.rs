//! Paths in canonical color-sorted form and the factorization engine.
//!
//! A path is stored as its unique factorization along the color word
//! `1^{n_1} 2^{n_2} ... k^{n_k}`. Any other factorization is reached by adjacent
//! transpositions through the factorization squares.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeId, KGraph, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    range: VertexId,
    source: VertexId,
    degree: Degree,
    edges: Vec<Edge>,
}

impl Path {
    /// The degree-zero path at `v`.
    pub fn vertex(v: VertexId, k: usize) -> Self {
        Path {
            range: v.clone(),
            source: v,
            degree: Degree::zero(k),
            edges: Vec::new(),
        }
    }

    pub fn from_edge(e: Edge, k: usize) -> Self {
        Path {
            range: e.range.clone(),
            source: e.source.clone(),
            degree: Degree::unit(k, e.color),
            edges: vec![e],
        }
    }

    /// Builds a path from a composable edge sequence that is already in canonical order.
    fn from_canonical(k: usize, range: VertexId, edges: Vec<Edge>) -> Self {
        let source = edges.last().map(|e| e.source.clone()).unwrap_or_else(|| range.clone());
        let colors: Vec<usize> = edges.iter().map(|e| e.color).collect();
        Path {
            range,
            source,
            degree: Degree::of_colors(k, &colors),
            edges,
        }
    }

    pub fn range(&self) -> &VertexId {
        &self.range
    }

    pub fn source(&self) -> &VertexId {
        &self.source
    }

    pub fn degree(&self) -> &Degree {
        &self.degree
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edge_ids(&self) -> Vec<&str> {
        self.edges.iter().map(|e| e.id.as_str()).collect()
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.edges.iter().map(|e| &e.id).cmp(other.edges.iter().map(|e| &e.id)))
            .then_with(|| self.range.cmp(&other.range))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.edges.is_empty() {
            write!(f, "{}", self.range)
        } else {
            write!(f, "{}", self.edge_ids().join("."))
        }
    }
}

impl Serialize for Path {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.edge_ids())
    }
}

/// The factorization of `path` along `colors`.
pub fn refactor<G: KGraph + ?Sized>(g: &G, path: &Path, colors: &[usize]) -> Result<Vec<Edge>> {
    if colors.len() != path.edges.len() || Degree::of_colors(g.rank(), colors) != path.degree {
        return Err(Error::ColorWordMismatch);
    }
    reorder(g, path.edges.clone(), colors)
}

fn reorder<G: KGraph + ?Sized>(g: &G, mut word: Vec<Edge>, colors: &[usize]) -> Result<Vec<Edge>> {
    for (p, &target) in colors.iter().enumerate() {
        let q = (p..word.len())
            .find(|&q| word[q].color == target)
            .ok_or(Error::ColorWordMismatch)?;
        for t in (p..q).rev() {
            let (a, b) = g
                .square(&word[t], &word[t + 1])
                .ok_or_else(|| Error::MissingSquare(word[t].id.to_string(), word[t + 1].id.to_string()))?;
            word[t] = a;
            word[t + 1] = b;
        }
    }
    Ok(word)
}

/// Canonicalizes a composable edge sequence starting at `range`.
pub fn path_from_edges<G: KGraph + ?Sized>(g: &G, range: VertexId, edges: Vec<Edge>) -> Result<Path> {
    let mut at = range.clone();
    for e in &edges {
        if e.range != at {
            return Err(Error::EndpointMismatch {
                source_vertex: at.to_string(),
                range: e.range.to_string(),
            });
        }
        at = e.source.clone();
    }
    let mut colors: Vec<usize> = edges.iter().map(|e| e.color).collect();
    colors.sort_unstable();
    let word = reorder(g, edges, &colors)?;
    Ok(Path::from_canonical(g.rank(), range, word))
}

/// Looks up edges by id and composes them in the given order.
pub fn path_from_ids<G: KGraph + ?Sized>(g: &G, ids: &[&str]) -> Result<Path> {
    let edges: Vec<Edge> = ids
        .iter()
        .map(|id| {
            g.edge(&EdgeId::new(id))
                .ok_or_else(|| Error::UnknownEdge(id.to_string()))
        })
        .collect::<Result<_>>()?;
    let range = edges
        .first()
        .map(|e| e.range.clone())
        .ok_or_else(|| Error::Parse("empty edge sequence".into()))?;
    path_from_edges(g, range, edges)
}

pub fn vertex_path<G: KGraph + ?Sized>(g: &G, v: &VertexId) -> Result<Path> {
    if !g.has_vertex(v) {
        return Err(Error::UnknownVertex(v.to_string()));
    }
    Ok(Path::vertex(v.clone(), g.rank()))
}

/// `first . second`, canonicalized.
pub fn compose<G: KGraph + ?Sized>(g: &G, first: &Path, second: &Path) -> Result<Path> {
    if first.source != second.range {
        return Err(Error::EndpointMismatch {
            source_vertex: first.source.to_string(),
            range: second.range.to_string(),
        });
    }
    if second.is_vertex() {
        return Ok(first.clone());
    }
    if first.is_vertex() {
        return Ok(second.clone());
    }
    let mut edges = first.edges.clone();
    edges.extend(second.edges.iter().cloned());
    let word = reorder(g, edges, &first.degree.add(&second.degree).color_word())?;
    Ok(Path::from_canonical(g.rank(), first.range.clone(), word))
}

/// The unique `(head, tail)` with `head . tail = path` and `d(head) = m`.
pub fn factor<G: KGraph + ?Sized>(g: &G, path: &Path, m: &Degree) -> Result<(Path, Path)> {
    let rest = path.degree.checked_sub(m).ok_or_else(|| Error::DegreeNotBelow {
        requested: m.to_string(),
        available: path.degree.to_string(),
    })?;
    let mut colors = m.color_word();
    let split = colors.len();
    colors.extend(rest.color_word());
    let mut word = refactor(g, path, &colors)?;
    let tail_edges = word.split_off(split);
    let head = Path::from_canonical(g.rank(), path.range.clone(), word);
    let tail = Path::from_canonical(g.rank(), head.source.clone(), tail_edges);
    Ok((head, tail))
}

/// The segment `path(m, n)` for `m <= n <= d(path)`.
pub fn segment<G: KGraph + ?Sized>(g: &G, path: &Path, m: &Degree, n: &Degree) -> Result<Path> {
    let (head, _) = factor(g, path, n)?;
    let (_, tail) = factor(g, &head, m)?;
    Ok(tail)
}

/// `v Lambda^n`, sorted.
pub fn enumerate_paths<G: KGraph + ?Sized>(g: &G, v: &VertexId, n: &Degree) -> Result<Vec<Path>> {
    if !g.has_vertex(v) {
        return Err(Error::UnknownVertex(v.to_string()));
    }
    if n.rank() != g.rank() {
        return Err(Error::RankMismatch {
            expected: g.rank(),
            got: n.rank(),
        });
    }
    let mut partial: Vec<(VertexId, Vec<Edge>)> = vec![(v.clone(), Vec::new())];
    for color in n.color_word() {
        let mut next = Vec::new();
        for (at, edges) in partial {
            for e in g.edges_into(&at, color) {
                let mut extended = edges.clone();
                let src = e.source.clone();
                extended.push(e);
                next.push((src, extended));
            }
        }
        partial = next;
    }
    let mut out: Vec<Path> = partial
        .into_iter()
        .map(|(_, edges)| Path::from_canonical(g.rank(), v.clone(), edges))
        .collect();
    out.sort();
    Ok(out)
}
