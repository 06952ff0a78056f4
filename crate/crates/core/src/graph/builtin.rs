//! Built-in families: `Omega_k`, the comb graphs and one-vertex k-graphs.

use super::level::{BlockEdge, LevelPresentation};
use super::skeleton::{FiniteSkeleton, Square};
use super::{fingerprint_of, Edge, EdgeId, KGraph, VertexId};
use crate::degree::Degree;
use crate::error::{Error, Result};

/// `Omega_k`: vertices `N^k`, one morphism `(m, n)` for every `m <= n`.
///
/// Vertex ids are comma-separated coordinates (`"0,2"`); the edge of color `i` with
/// range `m` is `e{i}@m` and has source `m + e_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaGraph {
    k: usize,
}

pub fn omega(k: usize) -> Result<OmegaGraph> {
    if k == 0 {
        return Err(Error::Invalid("Omega_k needs k >= 1".into()));
    }
    Ok(OmegaGraph { k })
}

impl OmegaGraph {
    pub fn vertex(&self, point: &Degree) -> VertexId {
        let parts: Vec<String> = point.coords().iter().map(|c| c.to_string()).collect();
        VertexId::new(parts.join(","))
    }

    pub fn point(&self, v: &VertexId) -> Option<Degree> {
        let coords: Option<Vec<u32>> = v.as_str().split(',').map(|p| p.parse().ok()).collect();
        coords.filter(|c| c.len() == self.k).map(Degree::new)
    }

    fn edge_at(&self, point: &Degree, color: usize) -> Edge {
        let target = point.add(&Degree::unit(self.k, color));
        Edge {
            id: EdgeId::new(format!("e{color}@{}", self.vertex(point))),
            color,
            range: self.vertex(point),
            source: self.vertex(&target),
        }
    }
}

impl KGraph for OmegaGraph {
    fn rank(&self) -> usize {
        self.k
    }

    fn has_vertex(&self, v: &VertexId) -> bool {
        self.point(v).is_some()
    }

    fn edges_into(&self, v: &VertexId, color: usize) -> Vec<Edge> {
        match self.point(v) {
            Some(p) if (1..=self.k).contains(&color) => vec![self.edge_at(&p, color)],
            _ => Vec::new(),
        }
    }

    fn edge(&self, id: &EdgeId) -> Option<Edge> {
        let rest = id.as_str().strip_prefix('e')?;
        let (color, point) = rest.split_once('@')?;
        let color: usize = color.parse().ok()?;
        let p = self.point(&VertexId::new(point))?;
        (1..=self.k).contains(&color).then(|| self.edge_at(&p, color))
    }

    fn square(&self, first: &Edge, second: &Edge) -> Option<(Edge, Edge)> {
        if first.color == second.color || first.source != second.range {
            return None;
        }
        let p = self.point(&first.range)?;
        let f = self.edge_at(&p, second.color);
        let e = self.edge_at(&p.add(&Degree::unit(self.k, second.color)), first.color);
        Some((f, e))
    }

    fn fingerprint(&self) -> u64 {
        fingerprint_of(&format!("omega;k={}", self.k))
    }
}

/// The comb 1-graph with `n` vertical components.
///
/// Top row vertices `t1..tn` sit on level 0; column `c` continues downward through
/// `c{c}@1, c{c}@2, ...`. Edge `d{c}` has range `t{c}` and source `c{c}@1`; block edge
/// `v{c}@l` has range `c{c}@l` and source `c{c}@(l+1)`. Adjacent tops are joined by
/// `h{c}` whose source is the odd-numbered top and whose range is the even-numbered one,
/// so every even top receives edges from its neighbours as in a zigzag spine.
pub fn comb(n: usize) -> Result<LevelPresentation> {
    if n == 0 {
        return Err(Error::Invalid("comb graph needs n >= 1".into()));
    }
    let tops: Vec<VertexId> = (1..=n).map(|c| VertexId::new(format!("t{c}"))).collect();
    let columns: Vec<String> = (1..=n).map(|c| format!("c{c}")).collect();
    let mut core_edges = Vec::new();
    for c in 1..=n {
        core_edges.push(Edge::new(format!("d{c}"), 1, format!("t{c}"), format!("c{c}@1")));
    }
    for c in 1..n {
        let (source, range) = if c % 2 == 1 { (c, c + 1) } else { (c + 1, c) };
        core_edges.push(Edge::new(format!("h{c}"), 1, format!("t{range}"), format!("t{source}")));
    }
    let block_edges = (1..=n)
        .map(|c| BlockEdge {
            id: format!("v{c}"),
            color: 1,
            range: format!("c{c}"),
            source: format!("c{c}"),
            drop: 1,
        })
        .collect();
    Ok(LevelPresentation::new(
        1,
        vec![tops],
        columns,
        core_edges,
        block_edges,
        vec![],
        vec![],
    ))
}

fn color_letter(color: usize) -> String {
    match color {
        1 => "b".into(),
        2 => "r".into(),
        3 => "g".into(),
        c => format!("c{c}_"),
    }
}

fn one_vertex_edge(color: usize, index: usize, count: usize) -> String {
    let letter = color_letter(color);
    if count == 1 {
        letter.trim_end_matches('_').to_string()
    } else {
        format!("{letter}{}", index + 1)
    }
}

/// The one-vertex k-graph with `sizes[i]` loops of color `i + 1`.
///
/// Color 1 edges are `b`/`b1, b2, ...`, color 2 `r`/`r1, ...`, color 3 `g`/..., further
/// colors `c4`/`c4_1, ...`. `perms`, when given, holds one permutation per color pair
/// `(i, j)`, `i < j`, in lexicographic order: entry `x * N_j + y` is the index
/// `x' * N_j + y'` such that the `(i, j)` 2-path (`x`-th color-`i` loop then `y`-th
/// color-`j` loop) equals the `(j, i)` 2-path (`y'`-th color-`j` loop then `x'`-th color-`i`
/// loop). The default is the identity on every pair.
pub fn one_vertex(k: usize, sizes: &[usize], perms: Option<&[Vec<usize>]>) -> Result<FiniteSkeleton> {
    if k == 0 || sizes.len() != k {
        return Err(Error::Invalid(format!(
            "one-vertex graph needs {k} edge counts, got {}",
            sizes.len()
        )));
    }
    let pairs: Vec<(usize, usize)> = (1..=k).flat_map(|i| (i + 1..=k).map(move |j| (i, j))).collect();
    if let Some(p) = perms {
        if p.len() != pairs.len() {
            return Err(Error::Invalid(format!(
                "expected {} square permutations, got {}",
                pairs.len(),
                p.len()
            )));
        }
    }
    let v = VertexId::new("v");
    let mut edges = Vec::new();
    for (i, &count) in sizes.iter().enumerate() {
        for x in 0..count {
            edges.push(Edge::new(one_vertex_edge(i + 1, x, count), i + 1, v.clone(), v.clone()));
        }
    }
    let mut squares = Vec::new();
    for (pair_index, &(i, j)) in pairs.iter().enumerate() {
        let (ni, nj) = (sizes[i - 1], sizes[j - 1]);
        let identity: Vec<usize> = (0..ni * nj).collect();
        let perm = perms.map(|p| &p[pair_index]).unwrap_or(&identity);
        if perm.len() != ni * nj {
            return Err(Error::Invalid(format!(
                "square permutation for colors ({i},{j}) needs {} entries",
                ni * nj
            )));
        }
        for x in 0..ni {
            for y in 0..nj {
                let target = perm[x * nj + y];
                if target >= ni * nj {
                    return Err(Error::Invalid(format!(
                        "square permutation entry {target} out of range"
                    )));
                }
                let (x2, y2) = (target / nj, target % nj);
                let ei = one_vertex_edge(i, x, ni);
                let ej = one_vertex_edge(j, y, nj);
                let fj = one_vertex_edge(j, y2, nj);
                let fi = one_vertex_edge(i, x2, ni);
                squares.push(Square::new([&ei, &ej], [&fj, &fi]));
            }
        }
    }
    Ok(FiniteSkeleton::new(k, vec![v], edges, squares))
}
